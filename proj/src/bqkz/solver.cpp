#include "solver.hpp"

#include <algorithm>
#include <functional>

namespace bqkz {

PsiSolver::PsiSolver(const SeriesRing& S) : S_(&S) {
  const Connection& C = S.conn();
  const RootSystem& R = C.rs();
  const HeckeAlgebra& H = C.algebra();
  const int n = R.rank, W = R.W.size();

  for (int i = 1; i <= n; ++i) {
    A_.push_back(S.expandGaugedA(i));
    B_.push_back(S.expandGaugedB(i));
    TorusPoint ones(n, Rat(1));
    qpoint_.push_back(C.shift(ones, R.fundamentalCoweight(i)));
  }

  mcb_ = RatMat(W, W);
  const AffWeyl& aw = C.algebra().aw();
  for (int w = 0; w < W; ++w) {
    HeckeElem h = H.multiply(H.basis(aw.finite(R.W.w0)), H.basis(aw.finite(w)));
    for (const auto& [e, c] : h) mcb_(e.v, w) = c;
  }
  mcbInv_ = mcb_.inverse();

  fixA_.assign(n, std::vector<bool>(W, false));
  fixB_.assign(n, std::vector<bool>(W, false));
  for (int i = 1; i <= n; ++i) {
    IVec pi = R.fundamentalCoweight(i);
    IVec w0pi = R.W.actWeight(R.W.w0, pi);
    for (int w = 0; w < W; ++w) {
      fixA_[i - 1][w] = R.W.actWeight(R.W.inverse[w], w0pi) == w0pi;
      fixB_[i - 1][w] = R.W.actWeight(w, pi) == pi;
    }
  }
}

Rat PsiSolver::shiftFactor(int dir, const IVec& mu) const {
  return S_->conn().evalChar(qpoint_[dir - 1], mu);
}

std::vector<std::pair<IVec, long>> PsiSolver::coneUpTo(long D) const {
  const RootSystem& R = S_->conn().rs();
  const int n = R.rank;
  std::vector<IVec> simple;
  for (int j = 0; j < n; ++j) {
    IVec e(n, 0);
    e[j] = 1;
    simple.push_back(R.corootOf(e));
  }
  std::vector<std::pair<IVec, long>> out;
  std::vector<long> c(n, 0);
  IVec cur(n, 0);
  // lexicographic walk over coefficient vectors with sum <= D
  std::function<void(int, long)> rec = [&](int j, long h) {
    if (j == n) {
      out.emplace_back(cur, h);
      return;
    }
    IVec save = cur;
    for (long m = 0; h + m <= D; ++m) {
      rec(j + 1, h + m);
      cur = ivAdd(cur, simple[j]);
    }
    cur = save;
  };
  rec(0, 0);
  return out;
}

std::vector<Rat> PsiSolver::solveEntry(const RatMat& a0, const std::vector<bool>& fix,
                                       const Rat& mult, const std::vector<Rat>& rhs) const {
  (void)a0;
  std::vector<Rat> y = mcbInv_.apply(rhs);
  for (size_t w = 0; w < y.size(); ++w) {
    if (fix[w]) {
      Rat div = 1 - mult;
      if (div == 0) throw ResonantParameters();
      y[w] /= div;
    }
  }
  return mcb_.apply(y);
}

PsiSolution PsiSolver::solvePsi(bool largestIndex) const {
  const RootSystem& R = S_->conn().rs();
  const int n = R.rank, W = R.W.size();
  const long D = S_->degreeBound();

  auto cone = coneUpTo(D);
  // all (alpha, beta) pairs of total grade <= D, in increasing grade
  std::vector<std::tuple<long, IVec, IVec>> order;
  for (const auto& [a, ha] : cone)
    for (const auto& [b, hb] : cone)
      if (ha + hb <= D) order.emplace_back(ha + hb, a, b);
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& x, const auto& y) { return std::get<0>(x) < std::get<0>(y); });

  PsiSolution sol;
  sol.D = D;
  const IVec zero(n, 0);
  for (const auto& [g, alpha, beta] : order) {
    ExpKey key{alpha, beta};
    if (g == 0) {
      std::vector<Rat> v(W, Rat(0));
      v[R.W.w0] = 1;
      sol.K.emplace(key, std::move(v));
      sol.source.emplace(key, 0);
      continue;
    }
    bool useA = !(alpha == zero);
    const IVec& shifted = useA ? alpha : beta;
    // directions pairing trivially with the exponent contribute no q-shift
    // and cannot determine this entry; pick the smallest (or largest)
    // nontrivial one
    int dir = largestIndex ? n : 1;
    while (shiftFactor(dir, shifted) == 1) dir += largestIndex ? -1 : 1;
    const MatrixSeries& ser = useA ? A_[dir - 1] : B_[dir - 1];
    Rat mult = shiftFactor(dir, shifted);

    std::vector<Rat> rhs(W, Rat(0));
    for (const auto& [kp, vp] : sol.K) {
      IVec da = ivSub(alpha, kp.first), db = ivSub(beta, kp.second);
      if (!R.inPositiveCorootCone(da) || !R.inPositiveCorootCone(db)) continue;
      if (kp.first == alpha && kp.second == beta) continue;
      auto it = ser.terms.find(ExpKey{da, db});
      if (it == ser.terms.end()) continue;
      Rat f = shiftFactor(dir, useA ? kp.first : kp.second);
      std::vector<Rat> contrib = it->second.apply(vp);
      for (int w = 0; w < W; ++w) rhs[w] += f * contrib[w];
    }
    ExpKey k0{zero, zero};
    const RatMat& a0 = ser.terms.at(k0);
    std::vector<Rat> v =
        solveEntry(a0, useA ? fixA_[dir - 1] : fixB_[dir - 1], mult, rhs);
    sol.K.emplace(key, std::move(v));
    sol.source.emplace(key, useA ? dir : -dir);
  }
  return sol;
}

ResidualReport PsiSolver::verifyHolonomy(const PsiSolution& sol) const {
  const RootSystem& R = S_->conn().rs();
  const int n = R.rank, W = R.W.size();
  ResidualReport rep;
  for (int dir = 1; dir <= n; ++dir) {
    for (int side = 0; side < 2; ++side) {
      const MatrixSeries& ser = side == 0 ? A_[dir - 1] : B_[dir - 1];
      for (const auto& [key, v] : sol.K) {
        std::vector<Rat> res(W, Rat(0));
        for (int w = 0; w < W; ++w) res[w] = -v[w];
        for (const auto& [kp, vp] : sol.K) {
          IVec da = ivSub(key.first, kp.first), db = ivSub(key.second, kp.second);
          if (!R.inPositiveCorootCone(da) || !R.inPositiveCorootCone(db)) continue;
          auto it = ser.terms.find(ExpKey{da, db});
          if (it == ser.terms.end()) continue;
          Rat f = shiftFactor(dir, side == 0 ? kp.first : kp.second);
          std::vector<Rat> contrib = it->second.apply(vp);
          for (int w = 0; w < W; ++w) res[w] += f * contrib[w];
        }
        ++rep.checked;
        for (const Rat& r : res)
          if (r != 0) {
            rep.ok = false;
            long g = (long)S_->gradeKey(key).get_d();
            rep.worstGrade = std::max(rep.worstGrade, g);
          }
      }
    }
  }
  return rep;
}

bool PsiSolver::verifyDuality(const PsiSolution& sol) const {
  RatMat p = S_->conn().iotaMatrix();
  for (const auto& [key, v] : sol.K) {
    auto it = sol.K.find(ExpKey{key.second, key.first});
    if (it == sol.K.end()) return false;
    if (p.apply(v) != it->second) return false;
  }
  return true;
}

std::map<IVec, std::map<IVec, std::vector<Rat>>> PsiSolver::gammaStructure(
    const PsiSolution& sol) const {
  std::map<IVec, std::map<IVec, std::vector<Rat>>> out;
  for (const auto& [key, v] : sol.K) out[key.first][key.second] = v;
  return out;
}

std::map<IVec, Rat> PsiSolver::gammaZeroScalars(const PsiSolution& sol) const {
  const RootSystem& R = S_->conn().rs();
  const IVec zero(R.rank, 0);
  std::map<IVec, Rat> out;
  for (const auto& [key, v] : sol.K) {
    if (!(key.first == zero)) continue;
    for (int w = 0; w < (int)v.size(); ++w)
      if (w != R.W.w0 && v[w] != 0)
        throw std::logic_error("gamma-direction head is not proportional to T_{w0}");
    out[key.second] = v[R.W.w0];
  }
  return out;
}

}  // namespace bqkz
