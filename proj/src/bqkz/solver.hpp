// Degree-graded recursion for the asymptotically free solution
// Psi(t, gamma) = sum K_{alpha,beta} t^{-alpha} gamma^{beta}, plus the
// structural checks: full residuals, duality, and the gamma-direction series.
#pragma once

#include "series.hpp"

namespace bqkz {

struct ResonantParameters : std::runtime_error {
  ResonantParameters() : std::runtime_error("vanishing divisor 1 - q^c in the recursion") {}
};

struct PsiSolution {
  long D = 0;
  // coefficient vectors in the {T_v} basis, keyed by (alpha, beta)
  std::map<ExpKey, std::vector<Rat>> K;
  // equation used per entry: i for the i-th t-direction, -j for the j-th
  // gamma-direction, 0 for the seed
  std::map<ExpKey, int> source;
};

struct ResidualReport {
  bool ok = true;
  long worstGrade = -1;  // highest grade with a nonzero residual coefficient
  long checked = 0;
};

class PsiSolver {
 public:
  explicit PsiSolver(const SeriesRing& S);

  const SeriesRing& ring() const { return *S_; }

  // largestIndex switches the per-entry equation choice from the smallest
  // admissible direction to the largest; the result must not depend on it
  PsiSolution solvePsi(bool largestIndex = false) const;

  ResidualReport verifyHolonomy(const PsiSolution& sol) const;
  bool verifyDuality(const PsiSolution& sol) const;

  // regroups K by alpha: Gamma_alpha(gamma) = sum_beta K_{alpha,beta} gamma^beta
  std::map<IVec, std::map<IVec, std::vector<Rat>>> gammaStructure(const PsiSolution& sol) const;
  // scalar series of Gamma_0; throws std::logic_error if some K_{0,beta} is
  // not proportional to T_{w0}
  std::map<IVec, Rat> gammaZeroScalars(const PsiSolution& sol) const;

  // elements of Q+^vee with height <= D, in coweight coordinates with heights
  std::vector<std::pair<IVec, long>> coneUpTo(long D) const;

 private:
  const SeriesRing* S_;
  std::vector<MatrixSeries> A_, B_;
  std::vector<Rat> qshift_;  // qshift_[i-1] = q^{<pi_i^vee, .>} base points
  std::vector<TorusPoint> qpoint_;
  RatMat mcb_, mcbInv_;             // columns T_{w0}T_w in the {T_v} basis
  std::vector<std::vector<bool>> fixA_, fixB_;  // per direction, per w

  Rat shiftFactor(int dir, const IVec& mu) const;  // q^{<pi_dir^vee, mu>}
  std::vector<Rat> solveEntry(const RatMat& a0, const std::vector<bool>& fix, const Rat& mult,
                              const std::vector<Rat>& rhs) const;
};

}  // namespace bqkz
