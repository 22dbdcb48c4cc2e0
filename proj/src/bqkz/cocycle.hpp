// Pointwise-exact evaluation layer: torus-point arithmetic, b/c-functions,
// R-matrices, the connection cocycle and its gauged form, asymptotic constants,
// and the singular-set predicate.
#pragma once

#include <random>

#include "prinser.hpp"

namespace bqkz {

struct PoleAtOne : std::runtime_error {
  PoleAtOne() : std::runtime_error("b/c-function pole: t^{a^vee} = 1") {}
};
struct RMatrixPole : std::runtime_error {
  RMatrixPole() : std::runtime_error("R-matrix pole: z in {1, k^{-2}}") {}
};
struct CocyclePole : std::runtime_error {
  AffRoot root;
  explicit CocyclePole(AffRoot a)
      : std::runtime_error("cocycle factor hits an R-matrix pole"), root(std::move(a)) {}
};

class Connection {
 public:
  explicit Connection(const HeckeAlgebra& H);

  const HeckeAlgebra& algebra() const { return *H_; }
  const RootSystem& rs() const { return H_->rs(); }

  // --- torus-point arithmetic ---
  Rat evalChar(const TorusPoint& t, const IVec& lam) const;      // t^lam
  Rat evalAffChar(const TorusPoint& t, const AffRoot& a) const;  // t^{a^vee} = q_alpha^r t^{alpha^vee}
  TorusPoint shift(const TorusPoint& t, const IVec& lam) const;  // q^lam t
  TorusPoint weylAct(int w, const TorusPoint& t) const;
  TorusPoint torusAct(const ExtAff& w, const TorusPoint& t) const;
  static TorusPoint invert(const TorusPoint& t);
  TorusPoint deltaK() const { return delta_; }
  Rat deltaPow(const IVec& lam) const { return evalChar(delta_, lam); }

  // --- b/c-functions ---
  static Rat cClosed(const Rat& z, const Rat& kappa);  // (kappa^{-1} - kappa z)/(1 - z)
  static Rat bClosed(const Rat& z, const Rat& kappa);  // (kappa - kappa^{-1})/(1 - z)
  Rat cFun(const AffRoot& a, const TorusPoint& t) const;
  Rat bFun(const AffRoot& a, const TorusPoint& t) const;

  // R_i(z; gamma) = c(z; k_i)^{-1} (eta(T_i)(gamma) - b(z; k_i))
  RatMat rMatrix(int i, const Rat& z, const TorusPoint& gamma) const;

  // first-factor cocycle value C_{(w,e)}(t, gamma), any extended affine w
  RatMat cocycleFirst(const ExtAff& w, const TorusPoint& t, const TorusPoint& gamma) const;
  // second-factor value C_{(e,w)}(t, gamma) = C_iota C_{(w,e)}(gamma^{-1}, t^{-1}) C_iota
  RatMat cocycleSecond(const ExtAff& w, const TorusPoint& t, const TorusPoint& gamma) const;
  RatMat iotaMatrix() const;  // T_v -> T_{v^{-1}}

  // translation value via a dominant decomposition and exact inversion
  RatMat cocycleTranslation(const IVec& lam, const TorusPoint& t, const TorusPoint& gamma) const;

  RatMat connectionC(const IVec& lam, const IVec& mu, const TorusPoint& t,
                     const TorusPoint& gamma) const;
  RatMat gaugedD(const IVec& lam, const IVec& mu, const TorusPoint& t,
                 const TorusPoint& gamma) const;

  // projections fixing T_{w0}T_w when w^{-1}w0(pi_i^vee) = w0(pi_i^vee) (first list)
  // or w(pi_j^vee) = pi_j^vee (second list), in the {T_v} basis
  std::pair<std::vector<RatMat>, std::vector<RatMat>> asymptoticConstants() const;

  // membership of t in the singular set (or its inverse), with witness
  bool inSingularSet(const TorusPoint& t, bool positiveSide, IVec* rootOut = nullptr,
                     long* nOut = nullptr) const;

  const GammaMatrix& etaGen(int i) const { return etaGen_[i]; }       // eta(T_i), i in 0..N
  const GammaMatrix& etaOmega(int idx) const { return etaOmega_[idx]; }

 private:
  const HeckeAlgebra* H_;
  PrincipalSeries P_;
  std::vector<GammaMatrix> etaGen_;
  std::vector<GammaMatrix> etaOmega_;
  TorusPoint delta_;
};

// sample coordinates +-p/q, 2 <= p,q <= 20, reproducible from the caller's rng
TorusPoint randomTorusPoint(std::mt19937_64& rng, int rank);

}  // namespace bqkz
