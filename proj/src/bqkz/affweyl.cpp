#include "affweyl.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace bqkz {

namespace {
long ratToLong(const Rat& r) {
  if (r.get_den() != 1) throw std::logic_error("expected integer rational");
  return (long)r.get_num().get_si();
}
}  // namespace

AffWeyl::AffWeyl(const RootSystem& rs) : rs_(&rs) {
  const int n = rs.rank;
  if (rs.W.rank == 0) throw std::invalid_argument("AffWeyl requires a tabulated Weyl group (rank too large)");

  // Omega = {e} union {u_j = t(pi_j^vee) v_j^{-1}} for J = {j : <pi_j^vee, phi> = 1}.
  omega_.push_back(identity());
  for (int j = 1; j <= n; ++j) {
    if (rs.highestRoot[j - 1] != 1) continue;  // <pi_j^vee, phi> = coefficient of alpha_j in phi
    IVec pj = rs.fundamentalCoweight(j);
    IVec w0pj = rs.W.actWeight(rs.W.w0, pj);
    int vj = rs.dominantRep(w0pj).second;
    ExtAff uj{pj, rs.W.inverse[vj]};
    if (length(uj) != 0) throw std::logic_error("Omega element has nonzero length");
    omega_.push_back(uj);
  }
  // Permutation action on the simple affine roots.
  for (const auto& om : omega_) {
    std::vector<int> perm(n + 1, -1);
    for (int i = 0; i <= n; ++i) {
      AffRoot img = act(om, simpleAffineRoot(i));
      int match = -1;
      for (int j = 0; j <= n; ++j)
        if (img == simpleAffineRoot(j)) {
          match = j;
          break;
        }
      if (match < 0) throw std::logic_error("Omega does not permute the simple affine roots");
      perm[i] = match;
    }
    omegaPerm_.push_back(perm);
  }

  // Conjugacy classes of s_0..s_N: join i~j when the braid order m_ij is odd (i.e. 3),
  // and when some omega in Omega maps a_i to a_j.
  std::vector<int> parent(n + 1);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  auto join = [&](int a, int b) { parent[find(a)] = find(b); };
  auto gradient = [&](int i) { return i == 0 ? ivNeg(rs.highestRoot) : rs.fundamentalCoweight(i); };
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      IVec bi = gradient(i), bj = gradient(j);
      // n_ij = <beta_i, beta_j^vee> = 2 <beta_i, beta_j> / |beta_j|^2 using the root Gram form
      auto pairIJ = [&](const IVec& a, const IVec& b) {
        Rat ip(0);
        for (int r = 0; r < n; ++r)
          for (int c = 0; c < n; ++c)
            if (a[r] && b[c]) ip += Rat(rs.cartan[r][c]) * rs.lengthSq[c] / 2 * a[r] * b[c];
        return ratToLong(2 * ip / rs.rootNormSq(b));
      };
      long prod = pairIJ(bi, bj) * pairIJ(bj, bi);
      if (prod == 1) join(i, j);  // m = 3
    }
  for (const auto& perm : omegaPerm_)
    for (int i = 0; i <= n; ++i) join(i, perm[i]);
  std::map<int, int> relabel;
  genClass_.assign(n + 1, -1);
  for (int i = 0; i <= n; ++i) {
    int r = find(i);
    if (!relabel.count(r)) relabel[r] = (int)relabel.size();
    genClass_[i] = relabel[r];
  }
  classCount_ = (int)relabel.size();
  // Multiplicity labels must be constant on classes AND determined by root length.
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      if ((genClass_[i] == genClass_[j]) != (generatorLengthSq(i) == generatorLengthSq(j)))
        throw std::logic_error("generator classes do not match root lengths");
}

ExtAff AffWeyl::simpleAffine(int i) const {
  const int n = rs_->rank;
  if (i >= 1 && i <= n) {
    IVec e(n, 0);
    return ExtAff{e, rs_->W.lmul[i - 1][0]};
  }
  if (i != 0) throw std::invalid_argument("simpleAffine: index out of range");
  // s_0 = t(phi^vee) s_phi
  IVec phiv = rs_->corootOf(rs_->highestRoot);
  int sphi = rs_->reflectionOf(rs_->highestRoot);
  return ExtAff{phiv, sphi};
}

AffRoot AffWeyl::simpleAffineRoot(int i) const {
  const int n = rs_->rank;
  if (i >= 1 && i <= n) {
    IVec a(n, 0);
    a[i - 1] = 1;
    return AffRoot{a, 0};
  }
  if (i != 0) throw std::invalid_argument("simpleAffineRoot: index out of range");
  return AffRoot{ivNeg(rs_->highestRoot), 1};
}

ExtAff AffWeyl::mul(const ExtAff& a, const ExtAff& b) const {
  return ExtAff{ivAdd(a.lambda, rs_->W.actWeight(a.v, b.lambda)), rs_->W.mul(a.v, b.v)};
}

ExtAff AffWeyl::inv(const ExtAff& a) const {
  int vi = rs_->W.inverse[a.v];
  return ExtAff{ivNeg(rs_->W.actWeight(vi, a.lambda)), vi};
}

AffRoot AffWeyl::act(const ExtAff& w, const AffRoot& a) const {
  IVec beta = rs_->W.actRoot(w.v, a.alpha);
  Rat p = rs_->pairRootCoweight(w.lambda, beta);
  return AffRoot{beta, a.level - ratToLong(p)};
}

bool AffWeyl::gradientNegative(const AffRoot& a) {
  for (long c : a.alpha)
    if (c) return c < 0;
  throw std::logic_error("zero gradient in affine root");
}

bool AffWeyl::isPositive(const AffRoot& a) { return a.level >= (gradientNegative(a) ? 1 : 0); }

long AffWeyl::length(const ExtAff& w) const {
  // For each finite root alpha: count r with alpha + rc in S_+ and w(alpha + rc) in S_-.
  long len = 0;
  for (const auto& pos : rs_->posRoots) {
    for (int sign = 0; sign < 2; ++sign) {
      IVec alpha = sign ? ivNeg(pos) : pos;
      IVec beta = rs_->W.actRoot(w.v, alpha);
      long m = ratToLong(rs_->pairRootCoweight(w.lambda, beta));
      long lo = sign ? 1 : 0;  // chi(alpha in R_-)
      bool betaNeg = false;
      for (long c : beta)
        if (c) {
          betaNeg = c < 0;
          break;
        }
      long hi = m + (betaNeg ? 1 : 0);  // count r in [lo, hi)
      if (hi > lo) len += hi - lo;
    }
  }
  return len;
}

std::vector<AffRoot> AffWeyl::inversionSet(const ExtAff& w) const {
  std::vector<AffRoot> out;
  for (const auto& pos : rs_->posRoots) {
    for (int sign = 0; sign < 2; ++sign) {
      IVec alpha = sign ? ivNeg(pos) : pos;
      IVec beta = rs_->W.actRoot(w.v, alpha);
      long m = ratToLong(rs_->pairRootCoweight(w.lambda, beta));
      bool betaNeg = false;
      for (long c : beta)
        if (c) {
          betaNeg = c < 0;
          break;
        }
      long lo = sign ? 1 : 0;
      long hi = m + (betaNeg ? 1 : 0);
      for (long r = lo; r < hi; ++r) out.push_back(AffRoot{alpha, r});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int AffWeyl::omegaIndexOf(const ExtAff& w) const {
  for (int i = 0; i < (int)omega_.size(); ++i)
    if (omega_[i] == w) return i;
  return -1;
}

ReducedWord AffWeyl::reducedWord(const ExtAff& w) const {
  auto it = wordCache_.find(w);
  if (it != wordCache_.end()) return it->second;
  // Strip left descents: while l(w) > 0 find smallest i with w^{-1}(a_i) in S_-.
  std::vector<int> left;  // w = s_{left[0]} s_{left[1]} ... * residue
  ExtAff cur = w;
  long len = length(cur);
  while (len > 0) {
    ExtAff curInv = inv(cur);
    int found = -1;
    for (int i = 0; i <= rs_->rank; ++i) {
      if (!isPositive(act(curInv, simpleAffineRoot(i)))) {
        found = i;
        break;
      }
    }
    if (found < 0) throw std::logic_error("no descent found for positive-length element");
    left.push_back(found);
    cur = mul(simpleAffine(found), cur);
    --len;
  }
  int om = omegaIndexOf(cur);
  if (om < 0) throw std::logic_error("length-zero residue not in Omega table");
  // Convert s_{l1}...s_{lL} * omega into omega * s_{m1}...s_{mL} via s_j omega = omega s_{sigma^{-1}(j)}.
  const auto& perm = omegaPerm_[om];
  std::vector<int> permInv(perm.size());
  for (int i = 0; i < (int)perm.size(); ++i) permInv[perm[i]] = i;
  ReducedWord rw;
  rw.omega = om;
  for (int l : left) rw.letters.push_back(permInv[l]);
  wordCache_[w] = rw;
  return rw;
}

ExtAff AffWeyl::evalWord(const ReducedWord& rw) const {
  ExtAff cur = omega_[rw.omega];
  for (int l : rw.letters) cur = mul(cur, simpleAffine(l));
  return cur;
}

bool AffWeyl::bruhatLeq(const ExtAff& a, const ExtAff& b) const {
  ReducedWord ra = reducedWord(a), rb = reducedWord(b);
  if (ra.omega != rb.omega) return false;
  ExtAff u = mul(inv(omega_[ra.omega]), a);
  ExtAff v = mul(inv(omega_[rb.omega]), b);
  // Coxeter-group Bruhat recursion inside W_{Q^vee}.
  std::function<bool(ExtAff, long, ExtAff, long)> leq = [&](ExtAff x, long lx, ExtAff y, long ly) -> bool {
    if (lx > ly) return false;
    if (ly == 0) return true;
    ExtAff yInv = inv(y);
    int i = -1;
    for (int j = 0; j <= rs_->rank; ++j)
      if (!isPositive(act(yInv, simpleAffineRoot(j)))) {
        i = j;
        break;
      }
    ExtAff sy = mul(simpleAffine(i), y);
    ExtAff sx = mul(simpleAffine(i), x);
    long lsx = length(sx);
    if (lsx < lx) return leq(sx, lsx, sy, ly - 1);
    return leq(x, lx, sy, ly - 1);
  };
  return leq(u, length(u), v, length(v));
}

Rat AffWeyl::generatorLengthSq(int i) const {
  return i == 0 ? rs_->rootNormSq(rs_->highestRoot) : rs_->lengthSq[i - 1];
}

}  // namespace bqkz
