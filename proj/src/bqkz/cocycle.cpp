#include "cocycle.hpp"

namespace bqkz {

Connection::Connection(const HeckeAlgebra& H) : H_(&H), P_(H) {
  const AffWeyl& A = H.aw();
  for (int i = 0; i <= rs().rank; ++i)
    etaGen_.push_back(P_.eta(H.basis(A.simpleAffine(i))));
  for (int o = 0; o < A.omegaCount(); ++o)
    etaOmega_.push_back(P_.eta(H.basis(A.omegaElem(o))));
  for (int i = 1; i <= rs().rank; ++i) {
    Rat d = 1;
    for (const IVec& a : rs().posRoots)
      d *= ratPow(H.pf().kRoot(a), a[i - 1]);  // <pi_i^vee, alpha> = coefficient of alpha_i
    delta_.push_back(d);
  }
}

Rat Connection::evalChar(const TorusPoint& t, const IVec& lam) const {
  Rat r = 1;
  for (size_t i = 0; i < t.size(); ++i) r *= ratPow(t[i], lam[i]);
  return r;
}

Rat Connection::evalAffChar(const TorusPoint& t, const AffRoot& a) const {
  return H_->pf().qAlphaPow(a.alpha, a.level) * evalChar(t, rs().corootOf(a.alpha));
}

TorusPoint Connection::shift(const TorusPoint& t, const IVec& lam) const {
  TorusPoint r(t.size());
  for (int i = 0; i < (int)t.size(); ++i)
    r[i] = H_->pf().qpow(rs().innerCoweight(lam, rs().fundamentalCoweight(i + 1))) * t[i];
  return r;
}

TorusPoint Connection::weylAct(int w, const TorusPoint& t) const {
  const WeylGroup& W = rs().W;
  TorusPoint r(t.size());
  for (int i = 0; i < (int)t.size(); ++i)
    r[i] = evalChar(t, W.actWeight(W.inverse[w], rs().fundamentalCoweight(i + 1)));
  return r;
}

TorusPoint Connection::torusAct(const ExtAff& w, const TorusPoint& t) const {
  return shift(weylAct(w.v, t), w.lambda);
}

TorusPoint Connection::invert(const TorusPoint& t) {
  TorusPoint r(t.size());
  for (size_t i = 0; i < t.size(); ++i) r[i] = 1 / t[i];
  return r;
}

Rat Connection::cClosed(const Rat& z, const Rat& kappa) {
  if (z == 1) throw PoleAtOne();
  return (1 / kappa - kappa * z) / (1 - z);
}

Rat Connection::bClosed(const Rat& z, const Rat& kappa) {
  if (z == 1) throw PoleAtOne();
  return (kappa - 1 / kappa) / (1 - z);
}

Rat Connection::cFun(const AffRoot& a, const TorusPoint& t) const {
  return cClosed(evalAffChar(t, a), H_->pf().kAffine(a));
}

Rat Connection::bFun(const AffRoot& a, const TorusPoint& t) const {
  return bClosed(evalAffChar(t, a), H_->pf().kAffine(a));
}

RatMat Connection::rMatrix(int i, const Rat& z, const TorusPoint& gamma) const {
  Rat k = H_->pf().kGen(i);
  if (z == 1 || z == 1 / (k * k)) throw RMatrixPole();
  Rat c = cClosed(z, k), b = bClosed(z, k);
  RatMat m = etaGen_[i].evalAt(gamma) - RatMat::identity(rs().W.size()).scaled(b);
  return m.scaled(1 / c);
}

RatMat Connection::iotaMatrix() const {
  const WeylGroup& W = rs().W;
  RatMat p(W.size(), W.size());
  for (int v = 0; v < W.size(); ++v) p(W.inverse[v], v) = 1;
  return p;
}

RatMat Connection::cocycleFirst(const ExtAff& w, const TorusPoint& t,
                                const TorusPoint& gamma) const {
  const AffWeyl& A = H_->aw();
  ReducedWord rw = A.reducedWord(w);
  RatMat c = etaOmega_[rw.omega].evalAt(gamma);
  TorusPoint tp = torusAct(A.inv(A.omegaElem(rw.omega)), t);
  for (int l : rw.letters) {
    AffRoot al = A.simpleAffineRoot(l);
    Rat z = evalAffChar(tp, al);
    Rat k = H_->pf().kGen(l);
    if (z == 1 || z == 1 / (k * k)) throw CocyclePole(al);
    c = c * rMatrix(l, z, gamma);
    tp = torusAct(A.inv(A.simpleAffine(l)), tp);
  }
  return c;
}

RatMat Connection::cocycleSecond(const ExtAff& w, const TorusPoint& t,
                                 const TorusPoint& gamma) const {
  RatMat p = iotaMatrix();
  return p * cocycleFirst(w, invert(gamma), invert(t)) * p;
}

RatMat Connection::cocycleTranslation(const IVec& lam, const TorusPoint& t,
                                      const TorusPoint& gamma) const {
  long n = 0;
  for (long c : lam) n = std::max(n, -c);
  const AffWeyl& A = H_->aw();
  if (n == 0) return cocycleFirst(A.translation(lam), t, gamma);
  IVec nu(lam.size(), n);
  IVec mu = ivAdd(lam, nu);
  RatMat head = cocycleFirst(A.translation(mu), t, gamma);
  // C_{(-nu,e)}(t') = C_{(nu,e)}(q^{nu} t')^{-1} evaluated at t' = q^{-mu} t
  RatMat tail = cocycleFirst(A.translation(nu), shift(t, ivSub(nu, mu)), gamma).inverse();
  return head * tail;
}

RatMat Connection::connectionC(const IVec& lam, const IVec& mu, const TorusPoint& t,
                               const TorusPoint& gamma) const {
  RatMat first = cocycleTranslation(lam, t, gamma);
  RatMat p = iotaMatrix();
  RatMat second =
      p * cocycleTranslation(mu, invert(gamma), invert(shift(t, ivNeg(lam)))) * p;
  return first * second;
}

RatMat Connection::gaugedD(const IVec& lam, const IVec& mu, const TorusPoint& t,
                           const TorusPoint& gamma) const {
  const WeylGroup& W = rs().W;
  IVec w0lam = W.actWeight(W.w0, lam);
  IVec w0mu = W.actWeight(W.w0, mu);
  Rat pref = deltaPow(ivNeg(ivAdd(lam, mu)));
  pref *= H_->pf().qpow(-rs().innerCoweight(mu, w0lam));
  pref *= evalChar(gamma, ivNeg(w0lam));
  pref *= evalChar(t, w0mu);
  return connectionC(lam, mu, t, gamma).scaled(pref);
}

std::pair<std::vector<RatMat>, std::vector<RatMat>> Connection::asymptoticConstants() const {
  const WeylGroup& W = rs().W;
  const int n = W.size();
  // change of basis: column w = T_{w0}T_w in the {T_v} basis
  RatMat cb(n, n);
  HeckeElem tw0 = H_->basis(H_->aw().finite(W.w0));
  for (int w = 0; w < n; ++w) {
    HeckeElem prod = H_->multiply(tw0, H_->basis(H_->aw().finite(w)));
    for (const auto& [u, c] : prod) cb(u.v, w) = c;
  }
  RatMat cbInv = cb.inverse();
  auto project = [&](auto fixes) {
    RatMat d(n, n);
    for (int w = 0; w < n; ++w)
      if (fixes(w)) d(w, w) = 1;
    return cb * d * cbInv;
  };
  std::vector<RatMat> as, bs;
  for (int i = 1; i <= rs().rank; ++i) {
    IVec target = W.actWeight(W.w0, rs().fundamentalCoweight(i));
    as.push_back(project(
        [&](int w) { return W.actWeight(W.inverse[w], target) == target; }));
    IVec pi = rs().fundamentalCoweight(i);
    bs.push_back(project([&](int w) { return W.actWeight(w, pi) == pi; }));
  }
  return {as, bs};
}

bool Connection::inSingularSet(const TorusPoint& t, bool positiveSide, IVec* rootOut,
                               long* nOut) const {
  for (const IVec& a : rs().posRoots) {
    Rat z = evalChar(t, rs().corootOf(a));
    if (!positiveSide) z = 1 / z;
    Rat ka = H_->pf().kRoot(a);
    Rat r = z * ka * ka;  // looking for r = q_alpha^{-n}, n >= 1
    Rat qa = H_->pf().qAlpha(a);
    Rat cur = r * qa;
    long n = 1;
    while (cur > 1) {
      cur *= qa;
      ++n;
    }
    if (cur == 1) {
      if (rootOut) *rootOut = a;
      if (nOut) *nOut = n;
      return true;
    }
  }
  return false;
}

TorusPoint randomTorusPoint(std::mt19937_64& rng, int rank) {
  std::uniform_int_distribution<long> pq(2, 20);
  std::uniform_int_distribution<int> sign(0, 1);
  TorusPoint t;
  for (int i = 0; i < rank; ++i) {
    Rat c(pq(rng), pq(rng));
    c.canonicalize();
    if (sign(rng)) c = -c;
    t.push_back(c);
  }
  return t;
}

}  // namespace bqkz
