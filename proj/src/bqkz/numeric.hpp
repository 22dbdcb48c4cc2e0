// Floating-point evaluation layer: lattice and Jacobi theta functions, the
// gauge quotient G, deep-region evaluation of Psi with exact pull-back along
// the holonomic shifts, the scalar functions Phi^+ and their Weyl translates,
// pointwise eigen-equation residuals, and the fundamental matrix built from
// the tau-orbit of Phi.
#pragma once

#include "macdonald.hpp"

namespace bqkz {

struct GaugeSingular : std::runtime_error {
  GaugeSingular() : std::runtime_error("theta denominator vanishes at the requested point") {}
};

using NumVec = std::vector<double>;

struct NumericContext {
  double thetaCutoff = 80;      // initial bound on <lam,lam> in the lattice sum
  double tailTolerance = 1e-13;  // relative target for theta truncation
  double depth = 1.0 / 128;      // pull-in threshold on |t^{-a_i^vee}|, |g^{a_i^vee}|
};

struct ThetaValue {
  double value = 0;
  double tail = 0;   // magnitude of the last escalation step
  double scale = 0;  // roundoff reference: sum of absolute terms (cancellation size)
};

struct PsiValue {
  std::vector<Rat> v;  // exact vector in the {T_v} basis
  double tail = 0;     // numeric a-priori bound on the dropped series tail
  long pullIn = 0;     // n such that lambda = mu = n * (sum of fundamental coweights)
};

struct ScalarValue {
  double value = 0;
  double bound = 0;
};

struct VecValue {
  NumVec v;
  double bound = 0;
};

struct OrbitReport {
  bool ok = true;
  double worst = 0;   // largest relative residual seen
  double bound = 0;   // largest accompanying a-priori bound
  long samples = 0;
};

class NumericEvaluator {
 public:
  explicit NumericEvaluator(const MacdonaldEngine& M, NumericContext ctx = {});

  const Connection& conn() const { return *C_; }
  const NumericContext& context() const { return ctx_; }

  // --- numeric torus points (coordinate i = value at the i-th fundamental coweight) ---
  static NumVec toNum(const TorusPoint& t);
  static NumVec numMul(const NumVec& a, const NumVec& b);
  static NumVec numInvert(const NumVec& t);
  double numChar(const NumVec& t, const IVec& lam) const;
  NumVec numShift(const NumVec& t, const IVec& lam) const;  // q^lam t
  NumVec numWeylAct(int w, const NumVec& t) const;
  double qPowNum(const Rat& r) const;  // q^r as a double, fractional r allowed

  // --- theta functions and the gauge ---
  ThetaValue theta(const NumVec& t) const;  // sum over the coweight lattice
  double jacobiTheta(double z) const;       // prod (1-q^m z)(1-q^{m+1}/z)
  ThetaValue gaugeG(const NumVec& t, const NumVec& g) const;
  ThetaValue gaugeGTilde(const NumVec& t, const NumVec& g) const;

  // --- the solution and its scalar projections ---
  PsiValue evalPsi(const TorusPoint& t, const TorusPoint& g, const PsiSolution& sol) const;
  ScalarValue evalPhiPlus(const TorusPoint& t, const TorusPoint& g, const PsiSolution& sol) const;
  ScalarValue evalPhiPlusW(int w, const TorusPoint& t, const TorusPoint& g,
                           const PsiSolution& sol) const;

  // relative residual of (L f)(t,g) = m_lam(eval point) f(t,g) where f is
  // Phi^+ and L is a reflection-free operator for the anti-dominant lam
  ScalarValue eigenResidual(const DiffReflOp& L, const IVec& lam, bool xside,
                            const TorusPoint& t, const TorusPoint& g,
                            const PsiSolution& sol) const;

  // column w of the fundamental matrix: C_{(e,w)}(t,g) Phi(t, w^{-1} g)
  VecValue tauColumn(int w, const TorusPoint& t, const TorusPoint& g,
                     const PsiSolution& sol) const;
  std::vector<NumVec> fundamentalU(const TorusPoint& t, const TorusPoint& g,
                                   const PsiSolution& sol) const;
  static double detNum(const std::vector<NumVec>& m);

  // each tau-orbit column satisfies the holonomic relation at (t, g) for all
  // fundamental shift pairs in both torus directions
  OrbitReport verifyTauOrbitSolves(const TorusPoint& t, const TorusPoint& g,
                                   const PsiSolution& sol) const;

 private:
  const MacdonaldEngine* M_;
  const Connection* C_;
  NumericContext ctx_;
  int rank_;
  std::vector<std::vector<double>> gram_;  // <pi_i^vee, pi_j^vee>
  std::vector<double> box_;                // sqrt((gram^{-1})_{ii})
  NumVec deltaNum_;
  std::vector<IVec> simpleCoroots_;
  double chiNorm_;

  double thetaAt(const NumVec& t, double cutoff, double* absOut = nullptr) const;
  bool isDeep(const TorusPoint& t, const TorusPoint& g, double* rhoOut) const;
};

}  // namespace bqkz
