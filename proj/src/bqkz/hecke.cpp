#include "hecke.hpp"

#include <cassert>

namespace bqkz {

HeckeAlgebra::HeckeAlgebra(const ParameterField& pf) : pf_(&pf) {
  const RootSystem& R = rs();
  phiCo_ = R.corootOf(R.highestRoot);
  sphi_ = aw().finite(R.reflectionOf(R.highestRoot));
  // t(phi^vee) = s_0 s_phi, required by the T_0 rewrite below
  assert(aw().length(aw().translation(phiCo_)) ==
         1 + R.W.length[sphi_.v]);
}

HeckeElem HeckeAlgebra::rightMulGen(const HeckeElem& h, int i) const {
  const AffWeyl& A = aw();
  AffRoot ai = A.simpleAffineRoot(i);
  Rat gap = pf_->kGen(i) - 1 / pf_->kGen(i);
  HeckeElem r;
  for (const auto& [w, c] : h) {
    ExtAff ws = A.mul(w, A.simpleAffine(i));
    if (A.isPositive(A.act(w, ai))) {  // length goes up
      heckeAdd(r, ws, c);
    } else {
      heckeAdd(r, ws, c);
      heckeAdd(r, w, c * gap);
    }
  }
  return r;
}

HeckeElem HeckeAlgebra::rightMulInvGen(const HeckeElem& h, int i) const {
  // T_i^{-1} = T_i + k_i^{-1} - k_i
  HeckeElem r = rightMulGen(h, i);
  Rat c0 = 1 / pf_->kGen(i) - pf_->kGen(i);
  for (const auto& [w, c] : h) heckeAdd(r, w, c * c0);
  return r;
}

HeckeElem HeckeAlgebra::rightMulOmega(const HeckeElem& h, int idx) const {
  const ExtAff& om = aw().omegaElem(idx);
  HeckeElem r;
  for (const auto& [w, c] : h) heckeAdd(r, aw().mul(w, om), c);
  return r;
}

HeckeElem HeckeAlgebra::multiply(const HeckeElem& a, const HeckeElem& b) const {
  HeckeElem res;
  for (const auto& [w, c] : b) {
    ReducedWord rw = aw().reducedWord(w);
    HeckeElem acc = rightMulOmega(a, rw.omega);
    for (int l : rw.letters) acc = rightMulGen(acc, l);
    for (const auto& [u, d] : acc) heckeAdd(res, u, d * c);
  }
  return res;
}

HeckeElem HeckeAlgebra::inverseTw(const ExtAff& w) const {
  ReducedWord rw = aw().reducedWord(w);
  HeckeElem acc = unit();
  for (auto it = rw.letters.rbegin(); it != rw.letters.rend(); ++it)
    acc = rightMulInvGen(acc, *it);
  int invIdx = aw().omegaIndexOf(aw().inv(aw().omegaElem(rw.omega)));
  assert(invIdx >= 0);
  return rightMulOmega(acc, invIdx);
}

HeckeElem HeckeAlgebra::yElement(const IVec& lam) const {
  long n = 0;
  for (long c : lam) n = std::max(n, -c);
  IVec nu(lam.size(), n);
  if (n == 0) return basis(aw().translation(lam));
  return multiply(basis(aw().translation(ivAdd(lam, nu))),
                  inverseTw(aw().translation(nu)));
}

Laurent HeckeAlgebra::dividedDiff(int j, const Laurent& f) const {
  const RootSystem& R = rs();
  IVec aj(R.rank, 0);
  aj[j - 1] = 1;
  IVec ajco = R.corootOf(aj);
  Laurent out;
  for (const auto& [mu, c] : f.terms) {
    long n = mu[j - 1];
    if (n > 0) {
      IVec e = mu;
      for (long m = 0; m < n; ++m) {
        out.add(e, c);
        e = ivSub(e, ajco);
      }
    } else if (n < 0) {
      IVec e = R.simpleReflect(j, mu);
      for (long m = 0; m < -n; ++m) {
        out.add(e, -c);
        e = ivSub(e, ajco);
      }
    }
  }
  return out.scaled(pf_->kGen(j) - 1 / pf_->kGen(j));
}

BernsteinElem HeckeAlgebra::bernsteinRightMulGen(const BernsteinElem& b, int j) const {
  const WeylGroup& W = rs().W;
  Rat gap = pf_->kGen(j) - 1 / pf_->kGen(j);
  BernsteinElem r;
  for (const auto& [u, f] : b) {
    // T_u f(Y) T_j = (T_u T_j)(s_j f)(Y) + T_u (D_j f)(Y)
    Laurent sf;
    for (const auto& [mu, c] : f.terms) sf.add(rs().simpleReflect(j, mu), c);
    int us = W.rmul[j - 1][u];
    bernsteinAdd(r, us, sf);
    if (W.rightDescent(j - 1, u)) bernsteinAdd(r, u, sf.scaled(gap));
    bernsteinAdd(r, u, dividedDiff(j, f));
  }
  return r;
}

BernsteinElem HeckeAlgebra::bernsteinRightMulInvGen(const BernsteinElem& b, int j) const {
  BernsteinElem r = bernsteinRightMulGen(b, j);
  Rat c0 = 1 / pf_->kGen(j) - pf_->kGen(j);
  for (const auto& [u, f] : b) bernsteinAdd(r, u, f.scaled(c0));
  return r;
}

BernsteinElem HeckeAlgebra::bernsteinRightMulT0(const BernsteinElem& b) const {
  // T_0 = Y^{phi^vee} T_{s_phi}^{-1}
  Laurent yphi = Laurent::mono(phiCo_);
  BernsteinElem r;
  for (const auto& [u, f] : b) bernsteinAdd(r, u, f * yphi);
  const auto& word = rs().W.words[sphi_.v];
  for (auto it = word.rbegin(); it != word.rend(); ++it)
    r = bernsteinRightMulInvGen(r, *it);
  return r;
}

BernsteinElem HeckeAlgebra::bernsteinOmega(int idx) const {
  const ExtAff& om = aw().omegaElem(idx);  // t(lam) v with lam dominant minuscule
  BernsteinElem r;
  bernsteinAdd(r, 0, Laurent::mono(om.lambda));
  int vinv = rs().W.inverse[om.v];
  const auto& word = rs().W.words[vinv];
  for (auto it = word.rbegin(); it != word.rend(); ++it)
    r = bernsteinRightMulInvGen(r, *it);
  return r;
}

BernsteinElem HeckeAlgebra::toBernstein(const HeckeElem& h) const {
  BernsteinElem res;
  for (const auto& [w, c] : h) {
    ReducedWord rw = aw().reducedWord(w);
    BernsteinElem acc = bernsteinOmega(rw.omega);
    for (int l : rw.letters)
      acc = (l == 0) ? bernsteinRightMulT0(acc) : bernsteinRightMulGen(acc, l);
    for (const auto& [u, f] : acc) bernsteinAdd(res, u, f.scaled(c));
  }
  return res;
}

HeckeElem HeckeAlgebra::fromBernstein(const BernsteinElem& b) const {
  HeckeElem res;
  for (const auto& [u, f] : b) {
    HeckeElem tu = basis(aw().finite(u));
    for (const auto& [mu, c] : f.terms) {
      HeckeElem term = multiply(tu, yElement(mu));
      for (const auto& [w, d] : term) heckeAdd(res, w, d * c);
    }
  }
  return res;
}

BernsteinElem HeckeAlgebra::bernsteinMul(const BernsteinElem& a, const BernsteinElem& b) const {
  BernsteinElem res;
  for (const auto& [u, g] : b) {
    BernsteinElem c = a;
    for (int j : rs().W.words[u]) c = bernsteinRightMulGen(c, j);
    for (const auto& [v, f] : c) bernsteinAdd(res, v, f * g);
  }
  return res;
}

BernsteinElem HeckeAlgebra::intertwinerDual(int w) const {
  const WeylGroup& W = rs().W;
  auto sdual = [&](int i) {
    IVec aico = rs().corootOf([&] { IVec a(rs().rank, 0); a[i - 1] = 1; return a; }());
    Laurent yai = Laurent::mono(aico);
    BernsteinElem s;
    bernsteinAdd(s, W.rmul[i - 1][0], Laurent::constant(rs().rank, 1) - yai);
    bernsteinAdd(s, 0, yai.scaled(pf_->kGen(i) - 1 / pf_->kGen(i)));
    return s;
  };
  const auto& word = W.words[W.inverse[w]];  // w^{-1} = s_{i_1}...s_{i_r}
  BernsteinElem acc;
  bernsteinAdd(acc, 0, Laurent::constant(rs().rank, 1));
  for (auto it = word.rbegin(); it != word.rend(); ++it)
    acc = bernsteinMul(acc, sdual(*it));
  return acc;
}

HeckeElem HeckeAlgebra::circMap(const HeckeElem& a) const {
  HeckeElem res;
  for (const auto& [w, c] : a) {
    ReducedWord rw = aw().reducedWord(w);
    HeckeElem acc = rightMulOmega(unit(), rw.omega);
    for (int l : rw.letters) acc = rightMulInvGen(acc, l);
    for (const auto& [u, d] : acc) heckeAdd(res, u, d * c);
  }
  return res;
}

XHYElem HeckeAlgebra::dualityStar(const BernsteinElem& b) const {
  XHYElem res;
  const WeylGroup& W = rs().W;
  for (const auto& [u, f] : b) {
    for (const auto& [mu, c] : f.terms) {
      XHYTerm t{ivNeg(mu), W.inverse[u], IVec(rs().rank, 0)};
      auto it = res.find(t);
      if (it == res.end()) res.emplace(t, c);
      else if ((it->second += c) == 0) res.erase(it);
    }
  }
  return res;
}

XHYElem HeckeAlgebra::starXHY(const XHYElem& x) const {
  XHYElem res;
  for (const auto& [t, c] : x) {
    XHYTerm s{ivNeg(t.yexp), rs().W.inverse[t.u], ivNeg(t.xexp)};
    auto it = res.find(s);
    if (it == res.end()) res.emplace(s, c);
    else if ((it->second += c) == 0) res.erase(it);
  }
  return res;
}

}  // namespace bqkz
