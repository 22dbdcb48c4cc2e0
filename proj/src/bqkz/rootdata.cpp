#include "rootdata.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace bqkz {

namespace {

// Orders of the finite Weyl groups, to know up front whether tabulation fits.
double weylOrder(char type, int n) {
  auto fact = [](int m) {
    double f = 1;
    for (int i = 2; i <= m; ++i) f *= i;
    return f;
  };
  switch (type) {
    case 'A': return fact(n + 1);
    case 'B':
    case 'C': return fact(n) * std::pow(2.0, n);
    case 'D': return fact(n) * std::pow(2.0, n - 1);
    case 'E': return n == 6 ? 51840.0 : (n == 7 ? 2903040.0 : 696729600.0);
    case 'F': return 1152.0;
    case 'G': return 12.0;
  }
  return 0;
}

constexpr double kWeylTableCap = 50000.0;

}  // namespace

int WeylGroup::mul(int a, int b) const {
  int r = a;
  for (int j : words[b]) r = rmul[j - 1][r];
  return r;
}

IVec WeylGroup::actWeight(int w, const IVec& lam) const {
  const IVec& m = wtAct[w];
  IVec out(rank, 0);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) out[i] += m[i * rank + j] * lam[j];
  return out;
}

IVec WeylGroup::actRoot(int w, const IVec& root) const {
  const IVec& m = rtAct[w];
  IVec out(rank, 0);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) out[i] += m[i * rank + j] * root[j];
  return out;
}

bool WeylGroup::bruhatLeq(int u, int w) const {
  if (length[u] > length[w]) return false;
  if (u == 0) return true;
  if (u == w) return true;
  int j = words[w][0] - 1;  // left descent of w
  int sw = lmul[j][w];
  int su = lmul[j][u];
  if (length[su] < length[u]) return bruhatLeq(su, sw);
  return bruhatLeq(u, sw);
}

Rat RootSystem::pairRootCoweight(const IVec& lam, const IVec& root) const {
  long s = 0;
  for (int i = 0; i < rank; ++i) s += root[i] * lam[i];
  return Rat(s);
}

Rat RootSystem::innerCoweight(const IVec& lam, const IVec& mu) const {
  Rat s(0);
  for (int i = 0; i < rank; ++i) {
    if (!lam[i]) continue;
    for (int j = 0; j < rank; ++j)
      if (mu[j]) s += coweightGram(i, j) * lam[i] * mu[j];
  }
  return s;
}

Rat RootSystem::rootNormSq(const IVec& root) const {
  // <alpha,alpha> via Gram of simple roots: <alpha_i,alpha_j> = a_ij * |alpha_j|^2 / 2.
  Rat s(0);
  for (int i = 0; i < rank; ++i) {
    if (!root[i]) continue;
    for (int j = 0; j < rank; ++j)
      if (root[j]) s += Rat(cartan[i][j]) * lengthSq[j] / 2 * root[i] * root[j];
  }
  return s;
}

IVec RootSystem::corootOf(const IVec& root) const {
  // coords of alpha^vee: <alpha^vee, alpha_i> = 2<alpha,alpha_i>/|alpha|^2.
  Rat nsq = rootNormSq(root);
  IVec out(rank, 0);
  for (int i = 0; i < rank; ++i) {
    Rat s(0);
    for (int j = 0; j < rank; ++j)
      if (root[j]) s += Rat(cartan[j][i]) * lengthSq[i] / 2 * root[j];
    Rat v = 2 * s / nsq;
    assert(v.get_den() == 1);
    out[i] = (long)v.get_num().get_si();
  }
  return out;
}

std::vector<Rat> RootSystem::corootCoords(const IVec& lam) const {
  std::vector<Rat> c(rank);
  for (int i = 0; i < rank; ++i) c[i] = Rat(lam[i]);
  return cartanInv.apply(c);
}

Rat RootSystem::height(const IVec& lam) const {
  auto c = corootCoords(lam);
  Rat s(0);
  for (auto& x : c) s += x;
  return s;
}

bool RootSystem::inCorootLattice(const IVec& lam) const {
  for (auto& x : corootCoords(lam))
    if (x.get_den() != 1) return false;
  return true;
}

bool RootSystem::inPositiveCorootCone(const IVec& lam) const {
  for (auto& x : corootCoords(lam))
    if (x.get_den() != 1 || x < 0) return false;
  return true;
}

bool RootSystem::isDominant(const IVec& lam) const {
  for (long x : lam)
    if (x < 0) return false;
  return true;
}

IVec RootSystem::fundamentalCoweight(int i) const {
  IVec v(rank, 0);
  v[i - 1] = 1;
  return v;
}

IVec RootSystem::simpleReflect(int i, const IVec& lam) const {
  IVec out(lam);
  long li = lam[i - 1];
  if (li)
    for (int j = 0; j < rank; ++j) out[j] -= li * cartan[j][i - 1];  // coords of alpha_i^vee are a_{ji}
  return out;
}

std::pair<IVec, int> RootSystem::dominantRep(const IVec& lam) const {
  IVec cur(lam);
  std::vector<int> word;  // vbar = s_{word[0]} s_{word[1]} ... applied to lamPlus
  while (true) {
    int i = 0;
    for (int j = 1; j <= rank; ++j)
      if (cur[j - 1] < 0) {
        i = j;
        break;
      }
    if (!i) break;
    cur = simpleReflect(i, cur);
    word.push_back(i);
  }
  int v = 0;
  for (auto it = word.rbegin(); it != word.rend(); ++it) v = W.lmul[*it - 1][v];
  return {cur, v};
}

int RootSystem::reflectionOf(const IVec& root) const {
  IVec cv = corootOf(root);
  IVec mat(rank * rank, 0);
  for (int c = 0; c < rank; ++c) {
    // image of the c-th basis coweight: e_c - root[c] * alpha^vee-coords... pairing <e_c, root> = root_c
    for (int r = 0; r < rank; ++r) mat[r * rank + c] = (r == c ? 1 : 0) - root[c] * cv[r];
  }
  for (int w = 0; w < W.size(); ++w)
    if (W.wtAct[w] == mat) return w;
  throw std::logic_error("reflectionOf: reflection not found in Weyl table");
}

std::set<IVec> RootSystem::weylOrbit(const IVec& lam) const {
  std::set<IVec> seen{lam};
  std::deque<IVec> q{lam};
  while (!q.empty()) {
    IVec cur = q.front();
    q.pop_front();
    for (int i = 1; i <= rank; ++i) {
      IVec nxt = simpleReflect(i, cur);
      if (seen.insert(nxt).second) q.push_back(nxt);
    }
  }
  return seen;
}

std::set<IVec> RootSystem::saturatedSet(const IVec& lam) const {
  std::set<IVec> seen{lam};
  std::deque<IVec> q{lam};
  while (!q.empty()) {
    IVec mu = q.front();
    q.pop_front();
    for (const auto& root : posRoots) {
      for (int sign = 0; sign < 2; ++sign) {
        IVec a = sign ? ivNeg(root) : root;
        Rat p = pairRootCoweight(mu, a);
        long n = (long)p.get_num().get_si();
        if (n <= 0) continue;
        IVec av = corootOf(a);
        IVec cur = mu;
        for (long r = 1; r <= n; ++r) {
          cur = ivSub(cur, av);
          if (seen.insert(cur).second) q.push_back(cur);
        }
      }
    }
  }
  return seen;
}

bool RootSystem::dominanceLeq(const IVec& lam, const IVec& mu) const {
  if (!isDominant(lam) || !isDominant(mu)) throw std::invalid_argument("dominanceLeq: inputs must be dominant");
  return inPositiveCorootCone(ivSub(mu, lam));
}

bool RootSystem::extendedOrder(const IVec& lam, const IVec& mu) const {
  auto [lp, vl] = dominantRep(lam);
  auto [mp, vm] = dominantRep(mu);
  if (lp != mp) return dominanceLeq(lp, mp);
  return W.bruhatLeq(vl, vm);
}

RootSystem RootSystem::build(char type, int rank) {
  RootSystem rs;
  rs.type = type;
  rs.rank = rank;
  rs.label = std::string(1, type) + std::to_string(rank);
  const int n = rank;

  auto validRank = [&]() {
    switch (type) {
      case 'A': return n >= 1 && n <= 8;
      case 'B': return n >= 2 && n <= 8;
      case 'C': return n >= 2 && n <= 8;
      case 'D': return n >= 4 && n <= 8;
      case 'E': return n >= 6 && n <= 8;
      case 'F': return n == 4;
      case 'G': return n == 2;
    }
    return false;
  };
  if (!validRank()) throw std::invalid_argument("unsupported root system type/rank: " + rs.label);

  // Simple-root lengths and the Cartan matrix a[i][j] = <alpha_i, alpha_j^vee>.
  rs.lengthSq.assign(n, Rat(2));
  std::vector<std::pair<int, int>> edges;  // simply-laced bonds (0-indexed)
  auto chain = [&](int upTo) {
    for (int i = 0; i + 1 < upTo; ++i) edges.push_back({i, i + 1});
  };
  rs.cartan.assign(n, IVec(n, 0));
  for (int i = 0; i < n; ++i) rs.cartan[i][i] = 2;
  auto bond = [&](int i, int j, long aij, long aji) {
    rs.cartan[i][j] = aij;
    rs.cartan[j][i] = aji;
  };
  switch (type) {
    case 'A':
      chain(n);
      break;
    case 'B':
      chain(n - 1);
      rs.lengthSq[n - 1] = 1;
      bond(n - 2, n - 1, -2, -1);
      break;
    case 'C':
      chain(n - 1);
      for (int i = 0; i + 1 < n; ++i) rs.lengthSq[i] = 1;
      bond(n - 2, n - 1, -1, -2);
      break;
    case 'D':
      chain(n - 1);
      edges.push_back({n - 3, n - 1});
      break;
    case 'E':
      edges = {{0, 2}, {2, 3}, {3, 4}, {1, 3}};
      for (int i = 4; i + 1 < n; ++i) edges.push_back({i, i + 1});
      break;
    case 'F':
      edges = {{0, 1}, {2, 3}};
      rs.lengthSq[2] = rs.lengthSq[3] = 1;
      bond(1, 2, -2, -1);
      break;
    case 'G':
      rs.lengthSq[0] = Rat(2, 3);
      bond(0, 1, -1, -3);
      break;
  }
  for (auto [i, j] : edges) bond(i, j, -1, -1);

  // Symmetry of the induced bilinear form.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (Rat(rs.cartan[i][j]) * rs.lengthSq[j] != Rat(rs.cartan[j][i]) * rs.lengthSq[i])
        throw std::logic_error("Cartan data inconsistent with lengths");

  // Roots by closure of the simple roots under simple reflections.
  std::set<IVec> rootSet;
  std::deque<IVec> rq;
  for (int i = 0; i < n; ++i) {
    IVec e(n, 0);
    e[i] = 1;
    rootSet.insert(e);
    rq.push_back(e);
  }
  while (!rq.empty()) {
    IVec a = rq.front();
    rq.pop_front();
    for (int j = 0; j < n; ++j) {
      long p = 0;  // <a, alpha_j^vee>
      for (int i = 0; i < n; ++i) p += a[i] * rs.cartan[i][j];
      IVec b(a);
      b[j] -= p;
      if (rootSet.insert(b).second) rq.push_back(b);
    }
  }
  for (const auto& r : rootSet) {
    bool pos = true, neg = true;
    for (long c : r) {
      if (c > 0) neg = false;
      if (c < 0) pos = false;
    }
    if (!pos && !neg) throw std::logic_error("mixed-sign root");
    if (pos) rs.posRoots.push_back(r);
  }
  std::sort(rs.posRoots.begin(), rs.posRoots.end(), [](const IVec& a, const IVec& b) {
    long ha = 0, hb = 0;
    for (long x : a) ha += x;
    for (long x : b) hb += x;
    return ha != hb ? ha < hb : a < b;
  });

  // Highest root: maximal height; check dominance-coordinatewise property and length.
  rs.highestRoot = rs.posRoots.back();
  for (const auto& a : rs.posRoots)
    for (int i = 0; i < n; ++i)
      if (rs.highestRoot[i] < a[i]) throw std::logic_error("highest-root property failed");
  if (rs.rootNormSq(rs.highestRoot) != 2) throw std::logic_error("highest root not long");

  // Lattice matrices.
  RatMat A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = rs.cartan[i][j];
  rs.cartanInv = A.inverse();
  RatMat At(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) At(i, j) = rs.cartan[j][i];
  RatMat M = At.inverse();
  rs.coweightGram = RatMat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) rs.coweightGram(i, j) = M(i, j) * 2 / rs.lengthSq[j];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (rs.coweightGram(i, j) != rs.coweightGram(j, i)) throw std::logic_error("coweight Gram not symmetric");
  mpz_class L = 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), rs.coweightGram(i, j).get_den_mpz_t());
  rs.latticeDenom = (long)L.get_si();

  // Finite Weyl group table (skipped for groups too large to tabulate).
  if (weylOrder(type, n) <= kWeylTableCap) {
    WeylGroup& W = rs.W;
    W.rank = n;
    auto matMulW = [n](const IVec& a, const IVec& b) {
      IVec c(n * n, 0);
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
          long x = a[i * n + k];
          if (!x) continue;
          for (int j = 0; j < n; ++j) c[i * n + j] += x * b[k * n + j];
        }
      return c;
    };
    std::vector<IVec> genWt(n), genRt(n);
    for (int jj = 0; jj < n; ++jj) {
      IVec mw(n * n, 0), mr(n * n, 0);
      for (int c = 0; c < n; ++c) {
        for (int r = 0; r < n; ++r) {
          mw[r * n + c] = (r == c ? 1 : 0) - (c == jj ? rs.cartan[r][jj] : 0);
          mr[r * n + c] = (r == c ? 1 : 0) - (r == jj ? rs.cartan[c][jj] : 0);
        }
      }
      genWt[jj] = mw;
      genRt[jj] = mr;
    }
    IVec id(n * n, 0);
    for (int i = 0; i < n; ++i) id[i * n + i] = 1;
    std::map<IVec, int> index;
    index[id] = 0;
    W.words.push_back({});
    W.wtAct.push_back(id);
    W.rtAct.push_back(id);
    W.length.push_back(0);
    for (size_t head = 0; head < W.words.size(); ++head) {
      for (int j = 0; j < n; ++j) {
        // BFS by right multiplication: u * s_j acts on coweights as wtAct[u] * genWt[j].
        IVec nw = matMulW(W.wtAct[head], genWt[j]);
        if (index.find(nw) == index.end()) {
          index[nw] = (int)W.words.size();
          auto word = W.words[head];
          word.push_back(j + 1);
          W.words.push_back(word);
          W.wtAct.push_back(nw);
          W.rtAct.push_back(matMulW(W.rtAct[head], genRt[j]));
          W.length.push_back((int)word.size());
        }
      }
    }
    int sz = (int)W.words.size();
    W.lmul.assign(n, std::vector<int>(sz));
    W.rmul.assign(n, std::vector<int>(sz));
    W.inverse.assign(sz, 0);
    for (int u = 0; u < sz; ++u) {
      for (int j = 0; j < n; ++j) {
        W.lmul[j][u] = index.at(matMulW(genWt[j], W.wtAct[u]));
        W.rmul[j][u] = index.at(matMulW(W.wtAct[u], genWt[j]));
      }
      // inverse: transpose in the orthogonal representation is not integral-friendly; find by product.
    }
    for (int u = 0; u < sz; ++u) {
      int r = 0;
      const auto& word = W.words[u];
      for (auto it = word.rbegin(); it != word.rend(); ++it) r = W.rmul[*it - 1][r];
      W.inverse[u] = r;
      if (W.length[u] == (int)rs.posRoots.size()) W.w0 = u;
    }
  }

  return rs;
}

}  // namespace bqkz
