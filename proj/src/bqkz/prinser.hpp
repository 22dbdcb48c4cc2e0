// The formal principal series: eta(h) as an End(H_0)-valued matrix of Laurent
// polynomials in gamma, pointwise specialization, and the xi eigenbasis built
// from dual intertwiners.
#pragma once

#include "hecke.hpp"

namespace bqkz {

using TorusPoint = std::vector<Rat>;  // coordinates t^{pi_i^vee}

// #W0 x #W0 matrix over Laurent polynomials in gamma, basis {T_v} ordered by
// (length, lex reduced word); column v holds eta(h) T_v in the T_u basis.
struct GammaMatrix {
  int n = 0;
  std::vector<Laurent> e;  // row-major

  explicit GammaMatrix(int n_ = 0) : n(n_), e(n_ * n_) {}
  Laurent& at(int r, int c) { return e[r * n + c]; }
  const Laurent& at(int r, int c) const { return e[r * n + c]; }

  static GammaMatrix identityOf(int n, int rank) {
    GammaMatrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Laurent::constant(rank, 1);
    return m;
  }
  GammaMatrix operator*(const GammaMatrix& o) const {
    GammaMatrix r(n);
    for (int i = 0; i < n; ++i)
      for (int kk = 0; kk < n; ++kk) {
        if (at(i, kk).isZero()) continue;
        for (int j = 0; j < n; ++j) r.at(i, j) += at(i, kk) * o.at(kk, j);
      }
    return r;
  }
  std::vector<Laurent> apply(const std::vector<Laurent>& v) const {
    std::vector<Laurent> r(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r[i] += at(i, j) * v[j];
    return r;
  }
  RatMat evalAt(const TorusPoint& g) const {
    RatMat m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = at(i, j).evalAt(g);
    return m;
  }
  bool operator==(const GammaMatrix& o) const { return n == o.n && e == o.e; }
};

class PrincipalSeries {
 public:
  explicit PrincipalSeries(const HeckeAlgebra& H) : H_(&H) {}

  const HeckeAlgebra& algebra() const { return *H_; }

  GammaMatrix eta(const HeckeElem& h) const;
  RatMat etaAt(const HeckeElem& h, const TorusPoint& g) const { return eta(h).evalAt(g); }

  // xi_w = eta(dual intertwiner of w) T_e, for every w in W0
  std::vector<std::vector<Laurent>> xiBasis() const;

 private:
  const HeckeAlgebra* H_;
};

}  // namespace bqkz
