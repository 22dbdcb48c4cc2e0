// Extended affine Hecke algebra in the T_w basis, Bernstein normal form
// sum_u T_u f_u(Y), Y-elements, dual intertwiners, the * anti-involution and
// the circle isomorphism from the algebra with inverted multiplicity labels.
#pragma once

#include "laurent.hpp"
#include "params.hpp"

namespace bqkz {

struct OutsideSupportedSpan : std::runtime_error {
  OutsideSupportedSpan() : std::runtime_error("element is not normal-orderable into X.H0.Y form") {}
};

using HeckeElem = std::map<ExtAff, Rat>;         // sum c_w T_w
using BernsteinElem = std::map<int, Laurent>;    // sum_u T_u f_u(Y), u a W0 index

// normal-ordered term X^a T_u Y^b of the double algebra
struct XHYTerm {
  IVec xexp;
  int u = 0;
  IVec yexp;
  bool operator<(const XHYTerm& o) const {
    return std::tie(xexp, u, yexp) < std::tie(o.xexp, o.u, o.yexp);
  }
  bool operator==(const XHYTerm& o) const {
    return xexp == o.xexp && u == o.u && yexp == o.yexp;
  }
};
using XHYElem = std::map<XHYTerm, Rat>;

class HeckeAlgebra {
 public:
  explicit HeckeAlgebra(const ParameterField& pf);

  const ParameterField& pf() const { return *pf_; }
  const AffWeyl& aw() const { return pf_->aw(); }
  const RootSystem& rs() const { return aw().rs(); }

  HeckeElem unit() const { return basis(aw().identity()); }
  HeckeElem basis(const ExtAff& w) const { return HeckeElem{{w, Rat(1)}}; }

  HeckeElem multiply(const HeckeElem& a, const HeckeElem& b) const;
  HeckeElem rightMulGen(const HeckeElem& h, int i) const;     // * T_i, i in 0..N
  HeckeElem rightMulInvGen(const HeckeElem& h, int i) const;  // * T_i^{-1}
  HeckeElem rightMulOmega(const HeckeElem& h, int idx) const;

  HeckeElem inverseTw(const ExtAff& w) const;
  HeckeElem yElement(const IVec& lam) const;  // Y^lam, lam in P^vee

  BernsteinElem toBernstein(const HeckeElem& h) const;
  HeckeElem fromBernstein(const BernsteinElem& b) const;
  BernsteinElem bernsteinMul(const BernsteinElem& a, const BernsteinElem& b) const;
  BernsteinElem bernsteinRightMulGen(const BernsteinElem& b, int j) const;     // * T_j, finite j
  BernsteinElem bernsteinRightMulInvGen(const BernsteinElem& b, int j) const;  // * T_j^{-1}

  // (k_j - k_j^{-1}) (f - s_j f) / (1 - x^{-alpha_j^vee}), telescoped per monomial
  Laurent dividedDiff(int j, const Laurent& f) const;

  // S~*_{w^{-1}} = S~*_{i_r} ... S~*_{i_1} for a reduced word w^{-1} = s_{i_1}...s_{i_r},
  // with S~*_i = T_i (1 - Y^{alpha_i^vee}) + (k_i - k_i^{-1}) Y^{alpha_i^vee}
  BernsteinElem intertwinerDual(int w) const;

  // image under the isomorphism from the algebra with labels k^{-1}:
  // T_i -> T_i^{-1}, omega -> omega
  HeckeElem circMap(const HeckeElem& a) const;

  // the * anti-involution: (X^a T_u Y^b)* = X^{-b} T_{u^{-1}} Y^{-a}
  XHYElem dualityStar(const BernsteinElem& b) const;
  XHYElem starXHY(const XHYElem& x) const;

 private:
  const ParameterField* pf_;
  ExtAff sphi_;          // reflection in the highest root
  IVec phiCo_;           // phi^vee in coweight coordinates
  BernsteinElem bernsteinOmega(int idx) const;  // T_omega = Y^{pi_j^vee} T_{v_j^{-1}}^{-1}
  BernsteinElem bernsteinRightMulT0(const BernsteinElem& b) const;
};

inline void heckeAdd(HeckeElem& h, const ExtAff& w, const Rat& c) {
  if (c == 0) return;
  auto it = h.find(w);
  if (it == h.end()) {
    h.emplace(w, c);
  } else {
    it->second += c;
    if (it->second == 0) h.erase(it);
  }
}
inline void bernsteinAdd(BernsteinElem& b, int u, const Laurent& f) {
  if (f.isZero()) return;
  auto it = b.find(u);
  if (it == b.end()) {
    b.emplace(u, f);
  } else {
    it->second += f;
    if (it->second.isZero()) b.erase(it);
  }
}

}  // namespace bqkz
