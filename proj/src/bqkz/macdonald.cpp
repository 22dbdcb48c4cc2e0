#include "macdonald.hpp"

namespace bqkz {

ExprPtr exprMono(const Rat& c, IVec mu, IVec nu) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Mono;
  e->c = c;
  e->mu = std::move(mu);
  e->nu = std::move(nu);
  return e;
}

ExprPtr exprRecip(const Rat& c, IVec mu, IVec nu) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Recip;
  e->c = c;
  e->mu = std::move(mu);
  e->nu = std::move(nu);
  return e;
}

ExprPtr exprSum(std::vector<ExprPtr> kids) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Sum;
  e->kids = std::move(kids);
  return e;
}

ExprPtr exprProd(std::vector<ExprPtr> kids) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Prod;
  e->kids = std::move(kids);
  return e;
}

namespace {
std::vector<Rat> invertAll(const ParameterField& pf) {
  std::vector<Rat> ks;
  for (int c = 0; c < pf.aw().classCount(); ++c) ks.push_back(Rat(1));
  // pick one representative generator per class
  for (int i = 0; i <= pf.aw().rank(); ++i) ks[pf.aw().generatorClass(i)] = 1 / pf.kGen(i);
  return ks;
}
}  // namespace

MacdonaldEngine::MacdonaldEngine(const Connection& C)
    : C_(&C), pfx_(C.algebra().pf().withKs(invertAll(C.algebra().pf()))), Hx_(pfx_) {}

Rat MacdonaldEngine::evalExprMemo(const ExprPtr& e, const TorusPoint& t, const TorusPoint& g,
                                  std::map<const Expr*, Rat>& memo) const {
  auto it = memo.find(e.get());
  if (it != memo.end()) return it->second;
  Rat v;
  switch (e->kind) {
    case Expr::Kind::Mono:
      v = e->c * C_->evalChar(t, e->mu) * C_->evalChar(g, e->nu);
      break;
    case Expr::Kind::Recip: {
      Rat d = 1 - e->c * C_->evalChar(t, e->mu) * C_->evalChar(g, e->nu);
      if (d == 0) throw ExprPole();
      v = 1 / d;
      break;
    }
    case Expr::Kind::Sum:
      v = 0;
      for (const auto& k : e->kids) v += evalExprMemo(k, t, g, memo);
      break;
    case Expr::Kind::Prod:
      v = 1;
      for (const auto& k : e->kids) v *= evalExprMemo(k, t, g, memo);
      break;
  }
  memo.emplace(e.get(), v);
  return v;
}

Rat MacdonaldEngine::evalExpr(const ExprPtr& e, const TorusPoint& t, const TorusPoint& g) const {
  std::map<const Expr*, Rat> memo;
  return evalExprMemo(e, t, g, memo);
}

ExprPtr MacdonaldEngine::wAct(const ExtAff& wx, const ExtAff& wy, const ExprPtr& e) const {
  const RootSystem& R = C_->rs();
  const ParameterField& pf = C_->algebra().pf();
  switch (e->kind) {
    case Expr::Kind::Mono:
    case Expr::Kind::Recip: {
      IVec mu = R.W.actWeight(wx.v, e->mu);
      IVec nu = R.W.actWeight(wy.v, e->nu);
      Rat c = e->c * pf.qpow(R.innerCoweight(wy.lambda, nu) - R.innerCoweight(wx.lambda, mu));
      return e->kind == Expr::Kind::Mono ? exprMono(c, std::move(mu), std::move(nu))
                                         : exprRecip(c, std::move(mu), std::move(nu));
    }
    default: {
      std::vector<ExprPtr> kids;
      for (const auto& k : e->kids) kids.push_back(wAct(wx, wy, k));
      return e->kind == Expr::Kind::Sum ? exprSum(std::move(kids)) : exprProd(std::move(kids));
    }
  }
}

DiffReflOp MacdonaldEngine::identityOp() const {
  const int n = C_->rs().rank;
  const AffWeyl& aw = C_->algebra().aw();
  DiffReflOp op;
  op.emplace(std::pair{aw.identity(), aw.identity()}, exprMono(Rat(1), IVec(n, 0), IVec(n, 0)));
  return op;
}

DiffReflOp MacdonaldEngine::addOp(const DiffReflOp& a, const DiffReflOp& b) const {
  DiffReflOp op = a;
  for (const auto& [k, e] : b) {
    auto it = op.find(k);
    if (it == op.end())
      op.emplace(k, e);
    else
      it->second = exprSum({it->second, e});
  }
  return op;
}

DiffReflOp MacdonaldEngine::scaleOp(const DiffReflOp& a, const Rat& c) const {
  const int n = C_->rs().rank;
  DiffReflOp op;
  if (c == 0) return op;
  ExprPtr cm = exprMono(c, IVec(n, 0), IVec(n, 0));
  for (const auto& [k, e] : a) op.emplace(k, exprProd({cm, e}));
  return op;
}

DiffReflOp MacdonaldEngine::mulOp(const DiffReflOp& a, const DiffReflOp& b) const {
  const AffWeyl& aw = C_->algebra().aw();
  DiffReflOp op;
  for (const auto& [ka, ea] : a)
    for (const auto& [kb, eb] : b) {
      std::pair<ExtAff, ExtAff> k{aw.mul(ka.first, kb.first), aw.mul(ka.second, kb.second)};
      ExprPtr e = exprProd({ea, wAct(ka.first, ka.second, eb)});
      auto it = op.find(k);
      if (it == op.end())
        op.emplace(std::move(k), std::move(e));
      else
        it->second = exprSum({it->second, e});
    }
  return op;
}

DiffReflOp MacdonaldEngine::rhoGenerator(int i, bool xside) const {
  const RootSystem& R = C_->rs();
  const AffWeyl& aw = C_->algebra().aw();
  const ParameterField& pf = xside ? pfx_ : C_->algebra().pf();
  const int n = R.rank;
  const IVec zero(n, 0);
  Rat k = pf.kGen(i);

  AffRoot a = aw.simpleAffineRoot(i);
  IVec av = R.corootOf(a.alpha);
  // z = X^{a^vee} = q_alpha^{+-level} x^{alpha^vee}; the y side carries the
  // inverted-q convention on affine characters
  Rat pref = C_->algebra().pf().qAlphaPow(a.alpha, xside ? a.level : -a.level);
  IVec mu = xside ? av : zero, nu = xside ? zero : av;

  ExprPtr cz = exprProd({exprSum({exprMono(1 / k, zero, zero), exprMono(-k * pref, mu, nu)}),
                         exprRecip(pref, mu, nu)});
  ExtAff si = aw.simpleAffine(i), e = aw.identity();
  DiffReflOp op;
  op.emplace(std::pair{xside ? si : e, xside ? e : si}, cz);
  op.emplace(std::pair{e, e},
             exprSum({exprMono(k, zero, zero), exprProd({exprMono(Rat(-1), zero, zero), cz})}));
  return op;
}

DiffReflOp MacdonaldEngine::rhoOmega(int idx, bool xside) const {
  const AffWeyl& aw = C_->algebra().aw();
  const int n = C_->rs().rank;
  ExtAff om = aw.omegaElem(idx), e = aw.identity();
  DiffReflOp op;
  op.emplace(std::pair{xside ? om : e, xside ? e : om},
             exprMono(Rat(1), IVec(n, 0), IVec(n, 0)));
  return op;
}

DiffReflOp MacdonaldEngine::rhoOf(const HeckeElem& h, bool xside) const {
  const AffWeyl& aw = C_->algebra().aw();
  DiffReflOp total;
  for (const auto& [w, c] : h) {
    ReducedWord rw = aw.reducedWord(w);
    DiffReflOp acc = rhoOmega(rw.omega, xside);
    for (int l : rw.letters) acc = mulOp(acc, rhoGenerator(l, xside));
    total = addOp(total, scaleOp(acc, c));
  }
  return total;
}

DiffReflOp MacdonaldEngine::resMap(const DiffReflOp& op) const {
  const AffWeyl& aw = C_->algebra().aw();
  DiffReflOp out;
  for (const auto& [k, e] : op) {
    std::pair<ExtAff, ExtAff> kk{aw.translation(k.first.lambda), aw.translation(k.second.lambda)};
    auto it = out.find(kk);
    if (it == out.end())
      out.emplace(std::move(kk), e);
    else
      it->second = exprSum({it->second, e});
  }
  return out;
}

DiffReflOp MacdonaldEngine::macdonaldOperator(const IVec& lam, bool xside) const {
  const RootSystem& R = C_->rs();
  if (!R.isDominant(ivNeg(lam)))
    throw std::invalid_argument("expected an anti-dominant coweight");
  const HeckeAlgebra& H = xside ? Hx_ : C_->algebra();
  HeckeElem m;
  for (const IVec& mu : R.weylOrbit(lam))
    for (const auto& [w, c] : H.yElement(mu)) heckeAdd(m, w, c);
  return resMap(rhoOf(m, xside));
}

std::pair<TorusPoint, TorusPoint> MacdonaldEngine::shiftedPoint(const ExtAff& wx,
                                                                const ExtAff& wy,
                                                                const TorusPoint& t,
                                                                const TorusPoint& g) const {
  const AffWeyl& aw = C_->algebra().aw();
  ExtAff wyFlip{ivNeg(wy.lambda), wy.v};  // translations act inversely on the second slot
  return {C_->torusAct(aw.inv(wx), t), C_->torusAct(aw.inv(wyFlip), g)};
}

Rat MacdonaldEngine::applyOp(const DiffReflOp& op, const PairFn& f, const TorusPoint& t,
                             const TorusPoint& g) const {
  std::map<const Expr*, Rat> memo;
  Rat s = 0;
  for (const auto& [k, e] : op) {
    auto [t2, g2] = shiftedPoint(k.first, k.second, t, g);
    s += evalExprMemo(e, t, g, memo) * f(t2, g2);
  }
  return s;
}

Rat MacdonaldEngine::chiWeight(int w) const {
  const AffWeyl& aw = C_->algebra().aw();
  const ParameterField& pf = C_->algebra().pf();
  Rat kw = 1;
  for (const AffRoot& a : aw.inversionSet(aw.finite(w))) kw *= pf.kAffine(a);
  return kw;
}

Rat MacdonaldEngine::chiPlus(const std::vector<Rat>& v) const {
  Rat s = 0;
  for (int w = 0; w < (int)v.size(); ++w)
    if (v[w] != 0) s += v[w] * chiWeight(w);
  return s;
}

std::map<ExpKey, Rat> MacdonaldEngine::chiPlusSeries(const PsiSolution& sol) const {
  std::map<ExpKey, Rat> out;
  for (const auto& [key, v] : sol.K) out[key] = chiPlus(v);
  return out;
}

std::map<IVec, Rat> MacdonaldEngine::kProductExpansion(long D) const {
  const RootSystem& R = C_->rs();
  const ParameterField& pf = C_->algebra().pf();
  std::map<IVec, Rat> ser{{IVec(R.rank, 0), Rat(1)}};
  for (const IVec& alpha : R.posRoots) {
    IVec av = R.corootOf(alpha);
    long h = (long)R.height(av).get_num().get_si();
    Rat qa = pf.qAlpha(alpha), k2 = pf.kRoot(alpha) * pf.kRoot(alpha);
    // factor = sum_n z^n [ k2^n - (-1)^{n-1} q_a^{n(n-1)/2} ... ] built from
    // the two q-binomial expansions of (z;q)oo and 1/(k2 z;q)oo, z = q_a g^{av}
    std::map<IVec, Rat> fac;
    Rat poch = 1;  // (q_a; q_a)_n
    Rat qn = 1;    // q_a^n
    Rat qtri = 1;  // q_a^{n(n-1)/2}
    std::vector<Rat> numc, denc;
    for (long n = 0; n * h <= D; ++n) {
      if (n > 0) {
        qn *= qa;
        poch *= 1 - qn;
        qtri *= ratPow(qa, n - 1);
      }
      // z^n coefficients: numerator (-1)^n q^{n(n-1)/2}/(q;q)_n, inverse
      // denominator k2^n/(q;q)_n; z^n carries q_a^n
      numc.push_back((n % 2 ? Rat(-1) : Rat(1)) * qtri / poch);
      denc.push_back(ratPow(k2, n) / poch);
    }
    IVec ex(R.rank, 0);
    Rat zn = 1;
    for (long n = 0; n * h <= D; ++n) {
      Rat c = 0;
      for (long j = 0; j <= n; ++j) c += numc[j] * denc[n - j];
      fac[ex] = c * zn;
      ex = ivAdd(ex, av);
      zn *= qa;
    }
    std::map<IVec, Rat> next;
    for (const auto& [e1, c1] : ser)
      for (const auto& [e2, c2] : fac) {
        IVec e = ivAdd(e1, e2);
        if (R.height(e) > Rat(D)) continue;
        next[e] += c1 * c2;
      }
    ser = std::move(next);
  }
  for (auto it = ser.begin(); it != ser.end();)
    it = it->second == 0 ? ser.erase(it) : std::next(it);
  return ser;
}

bool MacdonaldEngine::verifyLeadingTerm(const PsiSolution& sol) const {
  const RootSystem& R = C_->rs();
  const IVec zero(R.rank, 0);
  std::map<IVec, Rat> kprod = kProductExpansion(sol.D);
  Rat kw0 = chiWeight(R.W.w0);
  for (const auto& [key, v] : sol.K) {
    if (!(key.first == zero)) continue;
    auto it = kprod.find(key.second);
    Rat rhs = it == kprod.end() ? Rat(0) : it->second;
    if (chiPlus(v) != kw0 * rhs) return false;
  }
  return true;
}

}  // namespace bqkz
