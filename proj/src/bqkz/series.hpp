// Truncated bigraded matrix series in u_r = t^{-alpha_r^vee}, v_s = gamma^{alpha_s^vee},
// and the expansion of the gauged connection matrices around (u, v) = (0, 0).
#pragma once

#include "cocycle.hpp"

namespace bqkz {

struct LaurentFloorExceeded : std::runtime_error {
  LaurentFloorExceeded() : std::runtime_error("series term fell below the Laurent window floor") {}
};
struct NonnegativityViolation : std::runtime_error {
  NonnegativityViolation()
      : std::runtime_error("assembled series has an exponent outside the positive coroot cone") {}
};
struct NonUnitConstantTerm : std::runtime_error {
  NonUnitConstantTerm() : std::runtime_error("series has no invertible constant term") {}
};

// term coeff * t^{-alpha} gamma^{beta}, exponents in coweight coordinates
using ExpKey = std::pair<IVec, IVec>;

struct MatrixSeries {
  std::map<ExpKey, RatMat> terms;
  bool operator==(const MatrixSeries& o) const { return terms == o.terms; }
};

class SeriesRing {
 public:
  SeriesRing(const Connection& C, long degreeBound);

  const Connection& conn() const { return *C_; }
  long degreeBound() const { return D_; }
  Rat laurentFloor() const { return floor_; }

  Rat grade(const IVec& mu) const { return C_->rs().height(mu); }
  Rat gradeKey(const ExpKey& k) const { return grade(k.first) + grade(k.second); }

  MatrixSeries unit() const;
  MatrixSeries add(const MatrixSeries& a, const MatrixSeries& b) const;
  MatrixSeries scale(const MatrixSeries& a, const Rat& c) const;
  MatrixSeries mul(const MatrixSeries& a, const MatrixSeries& b) const {
    return mul(a, b, Rat(D_));
  }
  MatrixSeries mul(const MatrixSeries& a, const MatrixSeries& b, const Rat& bound) const;
  MatrixSeries monomialMul(const MatrixSeries& a, const ExpKey& shift, const Rat& c) const;
  MatrixSeries truncate(const MatrixSeries& a, const Rat& bound) const;
  MatrixSeries invertUnit(const MatrixSeries& a) const;
  RatMat evalAt(const MatrixSeries& a, const TorusPoint& t, const TorusPoint& g) const;

  // R_i(z; gamma) expanded in the monomial z = q_alpha^m t^{alpha^vee} for an
  // affine root b = alpha + m c with alpha negative and m >= 1; with swapped
  // charts the z-powers land in the gamma slot and eta exponents in the t slot
  MatrixSeries expandRFactor(int i, const AffRoot& b, const Rat& bound,
                             bool swapped = false) const;

  // gauged connection series for a dominant translation; A_i / B_j are the
  // fundamental-coweight cases
  MatrixSeries expandGaugedLambda(const IVec& lam) const;
  MatrixSeries expandGaugedA(int i) const;
  MatrixSeries expandGaugedB(int j) const;        // from A_j via the iota relation
  MatrixSeries expandGaugedBDirect(int j) const;  // independent expansion, for cross-checks

 private:
  const Connection* C_;
  long D_;
  Rat floor_;

  void addTerm(MatrixSeries& s, const ExpKey& k, const RatMat& m, const Rat& bound) const;
  MatrixSeries etaToSeries(const GammaMatrix& g, bool swapped) const;
  Rat minGradeOfEta(const GammaMatrix& g) const;
  Rat minGrade(const MatrixSeries& s) const;
  MatrixSeries expandChain(const IVec& lam, bool swapped) const;
};

}  // namespace bqkz
