#include "series.hpp"

#include <cassert>

namespace bqkz {

SeriesRing::SeriesRing(const Connection& C, long degreeBound) : C_(&C), D_(degreeBound) {
  const RootSystem& R = C.rs();
  Rat h0 = 0;
  for (int i = 1; i <= R.rank; ++i) {
    IVec b0 = ivNeg(R.W.actWeight(R.W.w0, R.fundamentalCoweight(i)));
    h0 = std::max(h0, R.height(b0));
  }
  floor_ = -h0 - D_;
}

void SeriesRing::addTerm(MatrixSeries& s, const ExpKey& k, const RatMat& m,
                         const Rat& bound) const {
  Rat g = gradeKey(k);
  if (g > bound) return;
  if (g < floor_) throw LaurentFloorExceeded();
  auto it = s.terms.find(k);
  if (it == s.terms.end()) {
    if (!m.isZero()) s.terms.emplace(k, m);
  } else {
    it->second = it->second + m;
    if (it->second.isZero()) s.terms.erase(it);
  }
}

MatrixSeries SeriesRing::unit() const {
  const int n = C_->rs().W.size(), r = C_->rs().rank;
  MatrixSeries s;
  s.terms.emplace(ExpKey{IVec(r, 0), IVec(r, 0)}, RatMat::identity(n));
  return s;
}

MatrixSeries SeriesRing::add(const MatrixSeries& a, const MatrixSeries& b) const {
  MatrixSeries s = a;
  for (const auto& [k, m] : b.terms) addTerm(s, k, m, Rat(D_));
  return s;
}

MatrixSeries SeriesRing::scale(const MatrixSeries& a, const Rat& c) const {
  MatrixSeries s;
  if (c == 0) return s;
  for (const auto& [k, m] : a.terms) s.terms.emplace(k, m.scaled(c));
  return s;
}

MatrixSeries SeriesRing::mul(const MatrixSeries& a, const MatrixSeries& b,
                             const Rat& bound) const {
  MatrixSeries s;
  for (const auto& [ka, ma] : a.terms) {
    Rat ga = gradeKey(ka);
    for (const auto& [kb, mb] : b.terms) {
      if (ga + gradeKey(kb) > bound) continue;
      addTerm(s, ExpKey{ivAdd(ka.first, kb.first), ivAdd(ka.second, kb.second)}, ma * mb,
              bound);
    }
  }
  return s;
}

MatrixSeries SeriesRing::monomialMul(const MatrixSeries& a, const ExpKey& shift,
                                     const Rat& c) const {
  MatrixSeries s;
  if (c == 0) return s;
  for (const auto& [k, m] : a.terms)
    addTerm(s, ExpKey{ivAdd(k.first, shift.first), ivAdd(k.second, shift.second)},
            m.scaled(c), Rat(D_));
  return s;
}

MatrixSeries SeriesRing::truncate(const MatrixSeries& a, const Rat& bound) const {
  MatrixSeries s;
  for (const auto& [k, m] : a.terms)
    if (gradeKey(k) <= bound) s.terms.emplace(k, m);
  return s;
}

MatrixSeries SeriesRing::invertUnit(const MatrixSeries& a) const {
  const int rank = C_->rs().rank;
  ExpKey k0{IVec(rank, 0), IVec(rank, 0)};
  auto it = a.terms.find(k0);
  if (it == a.terms.end()) throw NonUnitConstantTerm();
  for (const auto& [k, m] : a.terms)
    if (!(k == k0) && gradeKey(k) <= 0) throw NonUnitConstantTerm();
  RatMat cinv;
  try {
    cinv = it->second.inverse();
  } catch (const SingularInverse&) {
    throw NonUnitConstantTerm();
  }
  MatrixSeries cinvS;
  cinvS.terms.emplace(k0, cinv);
  // a = C (Id + N)  =>  a^{-1} = (sum (-N)^j) C^{-1}
  MatrixSeries n = mul(cinvS, a);
  n.terms.erase(k0);
  n = scale(n, Rat(-1));
  MatrixSeries acc = unit(), power = unit();
  while (true) {
    power = mul(power, n);
    if (power.terms.empty()) break;
    acc = add(acc, power);
  }
  return mul(acc, cinvS);
}

RatMat SeriesRing::evalAt(const MatrixSeries& a, const TorusPoint& t,
                          const TorusPoint& g) const {
  RatMat s(C_->rs().W.size(), C_->rs().W.size());
  for (const auto& [k, m] : a.terms)
    s = s + m.scaled(C_->evalChar(t, ivNeg(k.first)) * C_->evalChar(g, k.second));
  return s;
}

MatrixSeries SeriesRing::etaToSeries(const GammaMatrix& gm, bool swapped) const {
  const int rank = C_->rs().rank;
  const IVec zero(rank, 0);
  MatrixSeries s;
  for (int r = 0; r < gm.n; ++r)
    for (int c = 0; c < gm.n; ++c)
      for (const auto& [exp, coef] : gm.at(r, c).terms) {
        ExpKey k = swapped ? ExpKey{exp, zero} : ExpKey{zero, exp};
        RatMat m(gm.n, gm.n);
        m(r, c) = coef;
        addTerm(s, k, m, Rat(D_) - floor_);  // no truncation at assembly of eta data
      }
  return s;
}

Rat SeriesRing::minGradeOfEta(const GammaMatrix& gm) const {
  Rat mg = 0;
  for (const Laurent& f : gm.e)
    for (const auto& [exp, c] : f.terms) mg = std::min(mg, grade(exp));
  return mg;
}

Rat SeriesRing::minGrade(const MatrixSeries& s) const {
  Rat mg = 0;
  bool first = true;
  for (const auto& [k, m] : s.terms) {
    Rat g = gradeKey(k);
    if (first || g < mg) mg = g;
    first = false;
  }
  return mg;
}

MatrixSeries SeriesRing::expandRFactor(int i, const AffRoot& b, const Rat& bound,
                                       bool swapped) const {
  const RootSystem& R = C_->rs();
  assert(b.level >= 1);
  IVec aexp = R.corootOf(ivNeg(b.alpha));  // positive coroot: z = rho * t^{-aexp}
  assert(R.inPositiveCorootCone(aexp));
  Rat rho = C_->algebra().pf().qAlphaPow(b.alpha, b.level);
  Rat gz = grade(aexp);
  Rat k = C_->algebra().pf().kGen(i);

  MatrixSeries M = etaToSeries(C_->etaGen(i), swapped);
  Rat minM = std::min(Rat(0), minGrade(M));
  const IVec zero(R.rank, 0);

  // p = 0: k*M - (k^2-1) Id
  MatrixSeries s = truncate(add(scale(M, k), scale(unit(), 1 - k * k)), bound);
  // p >= 1: rho^p z^p * k^{2p-1}(k^2-1) (M - k Id)
  MatrixSeries baseP = add(M, scale(unit(), -k));
  Rat kp = k;  // k^{2p-1}
  Rat rp = 1;
  for (long p = 1; Rat(p) * gz + minM <= bound; ++p) {
    kp = (p == 1) ? k : kp * k * k;
    rp *= rho;
    IVec pz = ivScale(aexp, p);
    ExpKey shift = swapped ? ExpKey{zero, pz} : ExpKey{pz, zero};
    MatrixSeries term = monomialMul(baseP, shift, rp * kp * (k * k - 1));
    s = add(s, truncate(term, bound));
  }
  return s;
}

MatrixSeries SeriesRing::expandChain(const IVec& lam, bool swapped) const {
  const AffWeyl& A = C_->algebra().aw();
  const RootSystem& R = C_->rs();
  ReducedWord rw = A.reducedWord(A.translation(lam));

  // factor data: the eta(omega) head, then one R-factor per letter with the
  // affine root prefix(a_l) (negative gradient, positive level)
  std::vector<AffRoot> roots;
  ExtAff prefix = A.omegaElem(rw.omega);
  for (int l : rw.letters) {
    AffRoot bl = A.act(prefix, A.simpleAffineRoot(l));
    assert(A.gradientNegative(bl) && bl.level >= 1);
    roots.push_back(bl);
    prefix = A.mul(prefix, A.simpleAffine(l));
  }

  IVec beta0 = ivNeg(R.W.actWeight(R.W.w0, lam));
  Rat hShift = R.height(beta0);
  std::vector<Rat> mg(rw.letters.size());
  for (size_t m = 0; m < rw.letters.size(); ++m)
    mg[m] = std::min(Rat(0), minGradeOfEta(C_->etaGen(rw.letters[m])));
  // suffix[m] = sum of minimal grades of factors m..end plus the final shift
  std::vector<Rat> suffix(rw.letters.size() + 1, hShift);
  for (int m = (int)rw.letters.size() - 1; m >= 0; --m) suffix[m] = suffix[m + 1] + mg[m];

  MatrixSeries acc = truncate(etaToSeries(C_->etaOmega(rw.omega), swapped), Rat(D_) - suffix[0]);
  for (size_t m = 0; m < rw.letters.size(); ++m) {
    Rat bound = Rat(D_) - suffix[m + 1];
    MatrixSeries f = expandRFactor(rw.letters[m], roots[m], bound - minGrade(acc), swapped);
    acc = mul(acc, f, bound);
  }

  const IVec zero(R.rank, 0);
  ExpKey shift = swapped ? ExpKey{beta0, zero} : ExpKey{zero, beta0};
  acc = monomialMul(acc, shift, C_->deltaPow(ivNeg(lam)));
  for (const auto& [k, m] : acc.terms)
    if (!R.inPositiveCorootCone(k.first) || !R.inPositiveCorootCone(k.second))
      throw NonnegativityViolation();
  return acc;
}

MatrixSeries SeriesRing::expandGaugedLambda(const IVec& lam) const {
  return expandChain(lam, false);
}

MatrixSeries SeriesRing::expandGaugedA(int i) const {
  return expandChain(C_->rs().fundamentalCoweight(i), false);
}

MatrixSeries SeriesRing::expandGaugedB(int j) const {
  MatrixSeries a = expandGaugedA(j);
  RatMat p = C_->iotaMatrix();
  MatrixSeries b;
  for (const auto& [k, m] : a.terms)
    b.terms.emplace(ExpKey{k.second, k.first}, p * m * p);
  return b;
}

MatrixSeries SeriesRing::expandGaugedBDirect(int j) const {
  MatrixSeries chain = expandChain(C_->rs().fundamentalCoweight(j), true);
  RatMat p = C_->iotaMatrix();
  MatrixSeries b;
  for (const auto& [k, m] : chain.terms) b.terms.emplace(k, p * m * p);
  return b;
}

}  // namespace bqkz
