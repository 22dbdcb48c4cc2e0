#include "numeric.hpp"

#include <cmath>

namespace bqkz {

namespace {

double toD(const Rat& r) { return r.get_d(); }

long heightOf(const RootSystem& rs, const IVec& lam) {
  Rat h = rs.height(lam);
  if (h.get_den() != 1) throw std::logic_error("non-integral coroot height");
  return h.get_num().get_si();
}

}  // namespace

NumericEvaluator::NumericEvaluator(const MacdonaldEngine& M, NumericContext ctx)
    : M_(&M), C_(&M.conn()), ctx_(ctx), rank_(C_->rs().rank) {
  const RootSystem& rs = C_->rs();
  RatMat g(rank_, rank_);
  gram_.assign(rank_, std::vector<double>(rank_));
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) {
      Rat v = rs.innerCoweight(rs.fundamentalCoweight(i + 1), rs.fundamentalCoweight(j + 1));
      g(i, j) = v;
      gram_[i][j] = toD(v);
    }
  RatMat gi = g.inverse();
  box_.resize(rank_);
  for (int i = 0; i < rank_; ++i) box_[i] = std::sqrt(toD(gi(i, i)));
  deltaNum_ = toNum(C_->deltaK());
  for (int i = 0; i < rank_; ++i) {
    IVec e(rank_, 0);
    e[i] = 1;
    simpleCoroots_.push_back(rs.corootOf(e));
  }
  chiNorm_ = 0;
  for (int w = 0; w < rs.W.size(); ++w) chiNorm_ += std::fabs(toD(M.chiWeight(w)));
}

NumVec NumericEvaluator::toNum(const TorusPoint& t) {
  NumVec r(t.size());
  for (size_t i = 0; i < t.size(); ++i) r[i] = toD(t[i]);
  return r;
}

NumVec NumericEvaluator::numMul(const NumVec& a, const NumVec& b) {
  NumVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * b[i];
  return r;
}

NumVec NumericEvaluator::numInvert(const NumVec& t) {
  NumVec r(t.size());
  for (size_t i = 0; i < t.size(); ++i) r[i] = 1.0 / t[i];
  return r;
}

double NumericEvaluator::numChar(const NumVec& t, const IVec& lam) const {
  double r = 1;
  for (size_t i = 0; i < t.size(); ++i) r *= std::pow(t[i], (double)lam[i]);
  return r;
}

double NumericEvaluator::qPowNum(const Rat& r) const {
  return std::pow(toD(C_->algebra().pf().qbase()), (double)C_->algebra().pf().e() * toD(r));
}

NumVec NumericEvaluator::numShift(const NumVec& t, const IVec& lam) const {
  const RootSystem& rs = C_->rs();
  NumVec r(t.size());
  for (int i = 0; i < rank_; ++i)
    r[i] = qPowNum(rs.innerCoweight(lam, rs.fundamentalCoweight(i + 1))) * t[i];
  return r;
}

NumVec NumericEvaluator::numWeylAct(int w, const NumVec& t) const {
  const WeylGroup& W = C_->rs().W;
  NumVec r(t.size());
  for (int i = 0; i < rank_; ++i)
    r[i] = numChar(t, W.actWeight(W.inverse[w], C_->rs().fundamentalCoweight(i + 1)));
  return r;
}

double NumericEvaluator::thetaAt(const NumVec& t, double cutoff, double* absOut) const {
  // box enumeration: |n_i|^2 <= (gram^{-1})_{ii} <n, gram n> by Cauchy-Schwarz
  std::vector<long> lo(rank_), hi(rank_), n(rank_);
  for (int i = 0; i < rank_; ++i) {
    hi[i] = (long)std::floor(box_[i] * std::sqrt(cutoff)) + 1;
    lo[i] = -hi[i];
    n[i] = lo[i];
  }
  double qd = toD(C_->algebra().pf().q());
  double sum = 0, sumAbs = 0;
  while (true) {
    double ip = 0;
    for (int i = 0; i < rank_; ++i)
      for (int j = 0; j < rank_; ++j) ip += gram_[i][j] * n[i] * n[j];
    if (ip <= cutoff) {
      double term = std::pow(qd, ip / 2);
      for (int i = 0; i < rank_; ++i) term *= std::pow(t[i], (double)n[i]);
      sum += term;
      sumAbs += std::fabs(term);
    }
    int i = 0;
    while (i < rank_ && n[i] == hi[i]) {
      n[i] = lo[i];
      ++i;
    }
    if (i == rank_) break;
    ++n[i];
  }
  if (absOut) *absOut = sumAbs;
  return sum;
}

ThetaValue NumericEvaluator::theta(const NumVec& t) const {
  double cutoff = ctx_.thetaCutoff;
  double sumAbs = 0;
  double prev = thetaAt(t, cutoff / 2);
  double cur = thetaAt(t, cutoff, &sumAbs);
  // near lattice-theta zeros the value is cancellation-dominated; stop once
  // the step falls below the roundoff floor of the absolute sum
  while (std::fabs(cur - prev) > ctx_.tailTolerance * std::fabs(cur) &&
         std::fabs(cur - prev) > 1e-15 * sumAbs && cutoff < 32 * ctx_.thetaCutoff) {
    prev = cur;
    cutoff *= 1.5;
    cur = thetaAt(t, cutoff, &sumAbs);
  }
  return {cur, std::fabs(cur - prev), sumAbs};
}

double NumericEvaluator::jacobiTheta(double z) const {
  double qd = toD(C_->algebra().pf().q());
  double r = 1, qm = 1;
  for (int m = 0; m < 4096; ++m) {
    r *= (1 - qm * z) * (1 - qm * qd / z);
    qm *= qd;
    if (qm * (std::fabs(z) + 1 / std::fabs(z) + 1) < 1e-18) break;
  }
  return r;
}

ThetaValue NumericEvaluator::gaugeG(const NumVec& t, const NumVec& g) const {
  NumVec w0gi = numInvert(numWeylAct(C_->rs().W.w0, g));
  ThetaValue num = theta(numMul(t, w0gi));
  ThetaValue d1 = theta(numMul(deltaNum_, t));
  ThetaValue d2 = theta(numMul(numInvert(deltaNum_), w0gi));
  if (std::fabs(d1.value * d2.value) < 1e-280 || std::fabs(d1.value) < 1e-10 * d1.scale ||
      std::fabs(d2.value) < 1e-10 * d2.scale)
    throw GaugeSingular();
  double v = num.value / (d1.value * d2.value);
  double rel = num.tail / std::max(std::fabs(num.value), 1e-300) +
               d1.tail / std::fabs(d1.value) + d2.tail / std::fabs(d2.value);
  double cond = num.scale / std::max(std::fabs(num.value), 1e-300) +
                d1.scale / std::fabs(d1.value) + d2.scale / std::fabs(d2.value);
  return {v, std::fabs(v) * rel + 1e-15 * std::fabs(v), std::fabs(v) * cond};
}

ThetaValue NumericEvaluator::gaugeGTilde(const NumVec& t, const NumVec& g) const {
  NumVec w0gi = numInvert(numWeylAct(C_->rs().W.w0, g));
  ThetaValue num = theta(numMul(t, w0gi));
  ThetaValue d1 = theta(numMul(deltaNum_, t));
  if (std::fabs(d1.value) < 1e-280 || std::fabs(d1.value) < 1e-10 * d1.scale)
    throw GaugeSingular();
  double v = num.value / d1.value;
  double rel =
      num.tail / std::max(std::fabs(num.value), 1e-300) + d1.tail / std::fabs(d1.value);
  double cond = num.scale / std::max(std::fabs(num.value), 1e-300) +
                d1.scale / std::fabs(d1.value);
  return {v, std::fabs(v) * rel + 1e-15 * std::fabs(v), std::fabs(v) * cond};
}

bool NumericEvaluator::isDeep(const TorusPoint& t, const TorusPoint& g, double* rhoOut) const {
  double rho = 0;
  for (int i = 0; i < rank_; ++i) {
    rho = std::max(rho, std::fabs(toD(C_->evalChar(t, ivNeg(simpleCoroots_[i])))));
    rho = std::max(rho, std::fabs(toD(C_->evalChar(g, simpleCoroots_[i]))));
  }
  if (rhoOut) *rhoOut = rho;
  return rho <= ctx_.depth;
}

PsiValue NumericEvaluator::evalPsi(const TorusPoint& t, const TorusPoint& g,
                                   const PsiSolution& sol) const {
  const RootSystem& rs = C_->rs();
  IVec ones(rank_, 1), negOnes(rank_, -1);
  TorusPoint td = t, gd = g;
  long n = 0;
  double rho = 0;
  while (!isDeep(td, gd, &rho)) {
    td = C_->shift(td, negOnes);
    gd = C_->shift(gd, ones);
    if (++n > 256) throw std::runtime_error("cannot reach the convergence region");
  }
  int dim = rs.W.size();
  std::vector<Rat> v(dim, Rat(0));
  double topGrade = 0;  // numeric size of the grade-D layer
  for (const auto& [key, coeffs] : sol.K) {
    Rat m = C_->evalChar(td, ivNeg(key.first)) * C_->evalChar(gd, key.second);
    double mag = 0;
    for (int j = 0; j < dim; ++j) {
      v[j] += coeffs[j] * m;
      double a = std::fabs(toD(coeffs[j]));
      if (a > mag) mag = a;
    }
    if (heightOf(rs, key.first) + heightOf(rs, key.second) == sol.D)
      topGrade += mag * std::fabs(toD(m));
  }
  double tail = rho < 1 ? topGrade * rho / (1 - rho) : INFINITY;
  if (n > 0) {
    IVec lam(rank_, n);
    RatMat Dm = C_->gaugedD(lam, lam, t, g);
    v = Dm.apply(v);
    double norm = 0;
    for (int i = 0; i < dim; ++i) {
      double s = 0;
      for (int j = 0; j < dim; ++j) s += std::fabs(toD(Dm(i, j)));
      if (s > norm) norm = s;
    }
    tail *= norm;
  }
  return {std::move(v), tail, n};
}

ScalarValue NumericEvaluator::evalPhiPlus(const TorusPoint& t, const TorusPoint& g,
                                          const PsiSolution& sol) const {
  PsiValue p = evalPsi(t, g, sol);
  Rat chi = M_->chiPlus(p.v);
  ThetaValue G = gaugeG(toNum(t), toNum(g));
  double v = G.value * toD(chi);
  double bound = std::fabs(G.value) * chiNorm_ * p.tail + std::fabs(toD(chi)) * G.tail;
  return {v, bound};
}

ScalarValue NumericEvaluator::evalPhiPlusW(int w, const TorusPoint& t, const TorusPoint& g,
                                           const PsiSolution& sol) const {
  return evalPhiPlus(t, C_->weylAct(C_->rs().W.inverse[w], g), sol);
}

ScalarValue NumericEvaluator::eigenResidual(const DiffReflOp& L, const IVec& lam, bool xside,
                                            const TorusPoint& t, const TorusPoint& g,
                                            const PsiSolution& sol) const {
  double acc = 0, accBound = 0;
  for (const auto& [key, e] : L) {
    Rat c = M_->evalExpr(e, t, g);
    auto [t2, g2] = M_->shiftedPoint(key.first, key.second, t, g);
    ScalarValue f = evalPhiPlus(t2, g2, sol);
    acc += toD(c) * f.value;
    accBound += std::fabs(toD(c)) * f.bound;
  }
  TorusPoint ep = xside ? Connection::invert(g) : t;
  Rat mval = 0;
  for (const IVec& mu : C_->rs().weylOrbit(lam)) mval += C_->evalChar(ep, mu);
  ScalarValue f0 = evalPhiPlus(t, g, sol);
  double rhs = toD(mval) * f0.value;
  double scale = std::max({std::fabs(acc), std::fabs(rhs), 1e-300});
  double residual = std::fabs(acc - rhs) / scale;
  double bound = (accBound + std::fabs(toD(mval)) * f0.bound) / scale + 1e-10;
  return {residual, bound};
}

VecValue NumericEvaluator::tauColumn(int w, const TorusPoint& t, const TorusPoint& g,
                                     const PsiSolution& sol) const {
  const WeylGroup& W = C_->rs().W;
  TorusPoint gw = C_->weylAct(W.inverse[w], g);
  PsiValue p = evalPsi(t, gw, sol);
  ThetaValue G = gaugeG(toNum(t), toNum(gw));
  RatMat Cw = C_->cocycleSecond(C_->algebra().aw().finite(w), t, g);
  int dim = W.size();
  NumVec col(dim, 0);
  double pnorm = 0;
  for (int j = 0; j < dim; ++j) pnorm = std::max(pnorm, std::fabs(toD(p.v[j])));
  double bound = 0;
  for (int i = 0; i < dim; ++i) {
    double rowAbs = 0;
    for (int j = 0; j < dim; ++j) {
      double cij = toD(Cw(i, j));
      col[i] += cij * G.value * toD(p.v[j]);
      rowAbs += std::fabs(cij);
    }
    bound = std::max(bound, rowAbs * (std::fabs(G.value) * p.tail + pnorm * G.tail));
  }
  return {std::move(col), bound};
}

std::vector<NumVec> NumericEvaluator::fundamentalU(const TorusPoint& t, const TorusPoint& g,
                                                   const PsiSolution& sol) const {
  int dim = C_->rs().W.size();
  std::vector<NumVec> m(dim, NumVec(dim, 0));
  for (int w = 0; w < dim; ++w) {
    VecValue col = tauColumn(w, t, g, sol);
    for (int i = 0; i < dim; ++i) m[i][w] = col.v[i];
  }
  return m;
}

double NumericEvaluator::detNum(const std::vector<NumVec>& m) {
  int n = (int)m.size();
  std::vector<NumVec> a = m;
  double det = 1;
  for (int c = 0; c < n; ++c) {
    int p = c;
    for (int r = c + 1; r < n; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[p][c])) p = r;
    if (a[p][c] == 0) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (int r = c + 1; r < n; ++r) {
      double f = a[r][c] / a[c][c];
      for (int j = c; j < n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  return det;
}

OrbitReport NumericEvaluator::verifyTauOrbitSolves(const TorusPoint& t, const TorusPoint& g,
                                                   const PsiSolution& sol) const {
  OrbitReport rep;
  const RootSystem& rs = C_->rs();
  int dim = rs.W.size();
  std::vector<std::pair<IVec, IVec>> pairs;
  IVec zero(rank_, 0);
  for (int i = 1; i <= rank_; ++i) {
    pairs.emplace_back(rs.fundamentalCoweight(i), zero);
    pairs.emplace_back(zero, rs.fundamentalCoweight(i));
  }
  for (int w = 0; w < dim; ++w) {
    VecValue here = tauColumn(w, t, g, sol);
    double scale = 0;
    for (double x : here.v) scale = std::max(scale, std::fabs(x));
    for (const auto& [lam, mu] : pairs) {
      VecValue shifted = tauColumn(w, C_->shift(t, ivNeg(lam)), C_->shift(g, mu), sol);
      RatMat Cm = C_->connectionC(lam, mu, t, g);
      double worst = 0, cnorm = 0;
      for (int i = 0; i < dim; ++i) {
        double s = 0, rowAbs = 0;
        for (int j = 0; j < dim; ++j) {
          double cij = toD(Cm(i, j));
          s += cij * shifted.v[j];
          rowAbs += std::fabs(cij);
        }
        worst = std::max(worst, std::fabs(s - here.v[i]));
        cnorm = std::max(cnorm, rowAbs);
      }
      double rel = worst / std::max(scale, 1e-300);
      double bnd = (here.bound + cnorm * shifted.bound) / std::max(scale, 1e-300) + 1e-9;
      rep.worst = std::max(rep.worst, rel);
      rep.bound = std::max(rep.bound, bnd);
      if (rel > bnd) rep.ok = false;
      ++rep.samples;
    }
  }
  return rep;
}

}  // namespace bqkz
