#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bqkz/series.hpp"

using namespace bqkz;

namespace {

struct Fixture {
  RootSystem rs;
  AffWeyl aw;
  ParameterField pf;
  HeckeAlgebra H;
  Connection C;
  Fixture(char t, int n, Rat q = Rat(1, 4), Rat k = Rat(3))
      : rs(RootSystem::build(t, n)),
        aw(rs),
        pf(aw, q, std::vector<Rat>(aw.classCount(), k)),
        H(pf),
        C(H) {}
};

RatMat constantTerm(const MatrixSeries& s, int rank, int n) {
  ExpKey k0{IVec(rank, 0), IVec(rank, 0)};
  auto it = s.terms.find(k0);
  return it == s.terms.end() ? RatMat(n, n) : it->second;
}

Rat maxAbs(const RatMat& m) {
  Rat r = 0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      Rat v = abs(m(i, j));
      if (v > r) r = v;
    }
  return r;
}

}  // namespace

TEST_CASE("truncated series ring: geometric inverse, truncation, Neumann") {
  Fixture F('A', 1);
  SeriesRing S(F.C, 5);
  const IVec zero{0};
  const IVec av = F.rs.corootOf(IVec{1});  // grade-1 direction t^{-alpha^vee}
  ExpKey m{av, zero};

  MatrixSeries one = S.unit();
  Rat c(2, 7);
  MatrixSeries a = S.add(one, S.monomialMul(one, m, c));
  MatrixSeries inv = S.invertUnit(a);

  MatrixSeries expect = one;
  Rat cp = 1;
  IVec e = zero;
  for (int p = 1; p <= 5; ++p) {
    cp *= -c;
    e = ivAdd(e, av);
    expect = S.add(expect, S.monomialMul(one, ExpKey{e, zero}, cp));
  }
  CHECK(inv == expect);
  CHECK(S.mul(a, inv) == one);

  // Neumann series against an idempotent constant
  auto [alist, blist] = F.C.asymptoticConstants();
  const RatMat& A = alist[0];
  CHECK(A * A == A);
  Rat q = F.pf.q();
  MatrixSeries s = one;
  MatrixSeries qmA;
  qmA.terms.emplace(m, A.scaled(-q));
  s = S.add(s, qmA);
  MatrixSeries sinv = S.invertUnit(s);
  MatrixSeries nexp = one;
  Rat qp = 1;
  e = zero;
  for (int p = 1; p <= 5; ++p) {
    qp *= q;
    e = ivAdd(e, av);
    MatrixSeries term;
    term.terms.emplace(ExpKey{e, zero}, A.scaled(qp));
    nexp = S.add(nexp, term);
  }
  CHECK(sinv == nexp);

  CHECK_THROWS_AS((void)S.invertUnit(S.monomialMul(one, m, Rat(1))), NonUnitConstantTerm);
  MatrixSeries sing;
  sing.terms.emplace(ExpKey{zero, zero}, RatMat(2, 2));
  CHECK_THROWS_AS((void)S.invertUnit(sing), NonUnitConstantTerm);
}

TEST_CASE("truncation commutes with multiplication on nonnegative series") {
  Fixture F('A', 2);
  SeriesRing S(F.C, 4);
  MatrixSeries a = S.expandGaugedA(1);
  MatrixSeries b = S.expandGaugedA(2);
  CHECK(S.truncate(S.mul(a, b, Rat(4)), Rat(2)) ==
        S.mul(S.truncate(a, Rat(2)), S.truncate(b, Rat(2)), Rat(2)));
}

TEST_CASE("R-factor expansion: z=0 value, first order, pointwise tail") {
  Fixture F('A', 1);
  SeriesRing S(F.C, 4);
  const IVec zero{0};
  const IVec av = F.rs.corootOf(IVec{1});
  AffRoot b{IVec{-1}, 1};  // -alpha + c, so z = q t^{-alpha^vee}
  MatrixSeries R = S.expandRFactor(1, b, Rat(4));

  TorusPoint g{Rat(5, 3)};
  // z^0 slice evaluated in gamma equals R_1(0; gamma)
  RatMat z0(2, 2), z1(2, 2);
  for (const auto& [k, m] : R.terms) {
    Rat gpow = F.C.evalChar(g, k.second);
    if (k.first == zero) z0 = z0 + m.scaled(gpow);
    if (k.first == av) z1 = z1 + m.scaled(gpow);
  }
  CHECK(z0 == F.C.rMatrix(1, Rat(0), g));

  // z^1 slice: q * k(k^2-1) (eta(T_1)(gamma) - k Id)
  Rat k = F.pf.kGen(1), q = F.pf.q();
  RatMat eta1 = F.C.etaGen(1).evalAt(g);
  CHECK(z1 == (eta1 + RatMat::identity(2).scaled(-k)).scaled(q * k * (k * k - 1)));

  // deep-point evaluation against the closed form
  TorusPoint t{Rat(1000)};
  Rat z = F.C.evalAffChar(t, b);
  RatMat diff = S.evalAt(R, t, g) + F.C.rMatrix(1, z, g).scaled(Rat(-1));
  CHECK(maxAbs(diff) < Rat(1, 1000000000));
}

TEST_CASE("gauged expansion of the trivial translation is the unit series") {
  for (auto [tp, n] : {std::pair{'A', 1}, {'A', 2}, {'B', 2}}) {
    Fixture F(tp, n);
    SeriesRing S(F.C, 3);
    CHECK(S.expandGaugedLambda(IVec(n, 0)) == S.unit());
  }
}

TEST_CASE("constant terms of the gauged series are the asymptotic projections") {
  for (auto [tp, n] : {std::pair{'A', 1}, {'A', 2}, {'B', 2}, {'C', 2}, {'G', 2}}) {
    Fixture F(tp, n);
    SeriesRing S(F.C, 2);
    auto [alist, blist] = F.C.asymptoticConstants();
    const int W = F.rs.W.size();
    for (int i = 1; i <= n; ++i) {
      CHECK(constantTerm(S.expandGaugedA(i), n, W) == alist[i - 1]);
      CHECK(constantTerm(S.expandGaugedB(i), n, W) == blist[i - 1]);
    }
  }
}

TEST_CASE("deep-point agreement with the exact gauged connection") {
  Fixture F('A', 1);
  const IVec w1 = F.rs.fundamentalCoweight(1);
  const IVec zero{0};
  TorusPoint t{Rat(1000)}, g{Rat(1, 1000)};  // u = v = 10^{-6}

  RatMat Aex = F.C.gaugedD(w1, zero, t, g);
  RatMat Bex = F.C.gaugedD(zero, w1, t, g);
  Rat prev;
  for (long D : {2, 4}) {
    SeriesRing S(F.C, D);
    RatMat dA = S.evalAt(S.expandGaugedA(1), t, g) + Aex.scaled(Rat(-1));
    RatMat dB = S.evalAt(S.expandGaugedB(1), t, g) + Bex.scaled(Rat(-1));
    Rat errA = maxAbs(dA) / std::max(Rat(1), maxAbs(Aex));
    Rat errB = maxAbs(dB) / std::max(Rat(1), maxAbs(Bex));
    CHECK(errA < Rat(1, 10000));
    CHECK(errB < Rat(1, 10000));
    if (D == 4) {
      CHECK(errA < prev);  // tail shrinks with the bound
    }
    prev = errA;
  }
}

TEST_CASE("nonnegative exponents and the two B expansions agree") {
  for (auto [tp, n] : {std::pair{'A', 1}, {'A', 2}, {'B', 2}, {'C', 2}, {'G', 2}}) {
    Fixture F(tp, n);
    SeriesRing S(F.C, 3);
    for (int i = 1; i <= n; ++i) {
      MatrixSeries a = S.expandGaugedA(i);  // throws NonnegativityViolation on failure
      for (const auto& [k, m] : a.terms) {
        CHECK(F.rs.inPositiveCorootCone(k.first));
        CHECK(F.rs.inPositiveCorootCone(k.second));
      }
      CHECK(S.expandGaugedB(i) == S.expandGaugedBDirect(i));
    }
  }
}
