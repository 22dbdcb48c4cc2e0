#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bqkz/prinser.hpp"

using namespace bqkz;

namespace {

struct Fixture {
  RootSystem rs;
  AffWeyl aw;
  ParameterField pf;
  HeckeAlgebra H;
  PrincipalSeries P;
  Fixture(char t, int n, Rat q, std::vector<Rat> ks)
      : rs(RootSystem::build(t, n)),
        aw(rs),
        pf(aw, q, std::move(ks)),
        H(pf),
        P(H) {}
};

// all weights whose dominant representative has height <= bound
std::vector<IVec> smallWeights(const RootSystem& rs, long bound) {
  std::set<IVec> out;
  IVec c(rs.rank, 0);
  while (true) {
    if (rs.height(c) <= bound)
      for (const IVec& w : rs.weylOrbit(c)) out.insert(w);
    int i = 0;
    while (i < rs.rank && c[i] == bound) c[i++] = 0;
    if (i == rs.rank) break;
    ++c[i];
  }
  return {out.begin(), out.end()};
}

}  // namespace

TEST_CASE("eta on the unit and on the A1 generator") {
  Fixture F('A', 1, Rat(1, 4), {Rat(3)});
  CHECK(F.P.eta(F.H.unit()) == GammaMatrix::identityOf(2, 1));

  Rat gap = F.pf.kGen(1) - 1 / F.pf.kGen(1);
  GammaMatrix m = F.P.eta(F.H.basis(F.aw.finite(1)));
  CHECK(m.at(0, 0).isZero());
  CHECK(m.at(0, 1) == Laurent::constant(1, 1));
  CHECK(m.at(1, 0) == Laurent::constant(1, 1));
  CHECK(m.at(1, 1) == Laurent::constant(1, gap));
}

TEST_CASE("eta of Y monomials: first column, triangularity, exponent support") {
  for (auto [t, n] : {std::pair{'A', 2}, {'B', 2}}) {
    RootSystem rs = RootSystem::build(t, n);
    AffWeyl aw(rs);
    ParameterField pf(aw, Rat(1, 4), std::vector<Rat>(aw.classCount(), Rat(3)));
    HeckeAlgebra H(pf);
    PrincipalSeries P(H);
    const WeylGroup& W = rs.W;
    for (const IVec& lam : smallWeights(rs, 3)) {
      GammaMatrix m = P.eta(H.yElement(lam));
      CHECK(m.at(0, 0) == Laurent::mono(lam));
      IVec lamPlus = rs.dominantRep(lam).first;
      auto sat = rs.saturatedSet(lamPlus);
      for (int w = 0; w < W.size(); ++w) {
        CHECK(m.at(w, w) == Laurent::mono(W.actWeight(W.inverse[w], lam)));
        for (int u = 0; u < W.size(); ++u) {
          if (!W.bruhatLeq(u, w)) CHECK(m.at(u, w).isZero());
          for (const auto& [exp, c] : m.at(u, w).terms) CHECK(sat.count(exp) == 1);
        }
      }
    }
  }
}

TEST_CASE("pointwise specialization") {
  Fixture F('A', 1, Rat(1, 4), {Rat(3)});
  TorusPoint g{Rat(2)};  // gamma^{pi^vee} = 2, gamma^{alpha^vee} = 4
  CHECK(F.P.etaAt(F.H.unit(), g) == RatMat::identity(2));

  RatMat m = F.P.etaAt(F.H.yElement(IVec{2}), g);
  CHECK(m(0, 0) == Rat(4));
  CHECK(m(1, 1) == Rat(1, 4));
  CHECK(m(1, 0) == Rat(0));

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> gen(0, 1);
  for (int trial = 0; trial < 6; ++trial) {
    auto rnd = [&] {
      HeckeElem h = F.H.unit();
      for (int s = 0; s < 3; ++s) h = F.H.rightMulGen(h, gen(rng));
      return h;
    };
    HeckeElem a = rnd(), b = rnd();
    CHECK(F.P.etaAt(F.H.multiply(a, b), g) == F.P.etaAt(a, g) * F.P.etaAt(b, g));
  }
}

TEST_CASE("eta is an algebra map on Laurent matrices") {
  Fixture F('A', 2, Rat(1, 4), {Rat(3)});
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> gen(0, 2);
  for (int trial = 0; trial < 4; ++trial) {
    auto rnd = [&] {
      HeckeElem h = F.H.unit();
      for (int s = 0; s < 3; ++s) h = F.H.rightMulGen(h, gen(rng));
      return h;
    };
    HeckeElem a = rnd(), b = rnd();
    CHECK(F.P.eta(F.H.multiply(a, b)) == F.P.eta(a) * F.P.eta(b));
  }
}

TEST_CASE("xi basis: explicit low-rank columns and eigen property") {
  Fixture A1('A', 1, Rat(1, 4), {Rat(3)});
  auto xi = A1.P.xiBasis();
  CHECK(xi[0][0] == Laurent::constant(1, 1));
  CHECK(xi[0][1].isZero());
  Rat gap = A1.pf.kGen(1) - 1 / A1.pf.kGen(1);
  CHECK(xi[1][0] == Laurent::mono(IVec{2}, gap));
  CHECK(xi[1][1] == Laurent::constant(1, 1) - Laurent::mono(IVec{2}));

  for (auto [t, n] : {std::pair{'A', 2}, {'B', 2}}) {
    RootSystem rs = RootSystem::build(t, n);
    AffWeyl aw(rs);
    ParameterField pf(aw, Rat(1, 4), std::vector<Rat>(aw.classCount(), Rat(3)));
    HeckeAlgebra H(pf);
    PrincipalSeries P(H);
    const WeylGroup& W = rs.W;
    auto basis = P.xiBasis();
    IVec pi = rs.fundamentalCoweight(1);
    GammaMatrix ep = P.eta(H.yElement(pi));
    for (int w = 0; w < W.size(); ++w) {
      auto lhs = ep.apply(basis[w]);
      Laurent ev = Laurent::mono(W.actWeight(W.inverse[w], pi));
      for (int u = 0; u < W.size(); ++u) CHECK(lhs[u] == ev * basis[w][u]);
    }

    // generically a basis: nonsingular at a random rational gamma
    TorusPoint g;
    for (int i = 0; i < n; ++i) g.push_back(Rat(3 + 2 * i, 2));
    RatMat coef(W.size(), W.size());
    for (int w = 0; w < W.size(); ++w)
      for (int u = 0; u < W.size(); ++u) coef(u, w) = basis[w][u].evalAt(g);
    CHECK_NOTHROW(coef.inverse());
  }
}
