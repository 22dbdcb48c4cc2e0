#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bqkz/affweyl.hpp"
#include "bqkz/params.hpp"

using namespace bqkz;

namespace {
struct Fix {
  RootSystem rs;
  AffWeyl aw;
  explicit Fix(char t, int n) : rs(RootSystem::build(t, n)), aw(rs) {}
};
}  // namespace

TEST_CASE("affine action") {
  Fix f('A', 1);
  IVec alpha = {1};
  // t(lambda)(alpha + rc) = alpha + (r - <lambda,alpha>)c
  auto tpi = f.aw.translation({1});
  auto img = f.aw.act(tpi, AffRoot{alpha, 0});
  CHECK(img == AffRoot{alpha, -1});
  // s_0 negates a_0
  auto s0 = f.aw.simpleAffine(0);
  auto a0 = f.aw.simpleAffineRoot(0);
  CHECK(f.aw.act(s0, a0) == AffRoot{ivNeg(a0.alpha), -a0.level});
}

TEST_CASE("length and inversion sets") {
  Fix f('A', 2);
  CHECK(f.aw.length(f.aw.identity()) == 0);
  // dominant translations: l(t(lam)) = sum over positive roots of <lam,alpha>
  IVec p1 = f.rs.fundamentalCoweight(1);
  CHECK(f.aw.length(f.aw.translation(p1)) == 2);
  auto theta = f.rs.corootOf(f.rs.highestRoot);
  long expect = 0;
  for (const auto& a : f.rs.posRoots) expect += f.rs.pairRootCoweight(theta, a).get_num().get_si();
  CHECK(f.aw.length(f.aw.translation(theta)) == expect);
  CHECK((long)f.aw.inversionSet(f.aw.translation(theta)).size() == expect);
  // S(t(lambda)) for dominant lambda = {alpha + rc : alpha > 0, 0 <= r < <lam,alpha>}
  auto inv = f.aw.inversionSet(f.aw.translation(p1));
  for (const auto& a : inv) {
    CHECK(!AffWeyl::gradientNegative(a));
    CHECK(a.level >= 0);
    CHECK(a.level < f.rs.pairRootCoweight(p1, a.alpha));
  }
}

TEST_CASE("reduced words") {
  Fix f('A', 1);
  auto s0 = f.aw.simpleAffine(0);
  auto r0 = f.aw.reducedWord(s0);
  CHECK(r0.omega == 0);
  CHECK(r0.letters == std::vector<int>{0});

  auto tpi = f.aw.translation({1});
  auto r1 = f.aw.reducedWord(tpi);
  CHECK(r1.omega == 1);
  CHECK(r1.letters == std::vector<int>{1});
  CHECK(f.aw.evalWord(r1) == tpi);

  auto tav = f.aw.translation({2});
  auto r2 = f.aw.reducedWord(tav);
  CHECK(r2.omega == 0);
  CHECK(r2.letters == std::vector<int>{0, 1});
  CHECK(f.aw.evalWord(r2) == tav);
}

TEST_CASE("round trips and subadditivity, rank 2") {
  for (char t : {'A', 'B', 'G'}) {
    Fix f(t, 2);
    std::vector<ExtAff> elems = {f.aw.identity()};
    // breadth-first ball of radius 4 in the generators
    std::set<ExtAff> seen(elems.begin(), elems.end());
    for (int step = 0; step < 4; ++step) {
      std::vector<ExtAff> next;
      for (const auto& w : elems)
        for (int i = 0; i <= 2; ++i) {
          auto x = f.aw.mul(w, f.aw.simpleAffine(i));
          if (seen.insert(x).second) next.push_back(x);
        }
      elems = next;
    }
    std::vector<ExtAff> ball(seen.begin(), seen.end());
    for (const auto& w : ball) {
      auto rw = f.aw.reducedWord(w);
      CHECK((long)rw.letters.size() == f.aw.length(w));
      CHECK(f.aw.evalWord(rw) == w);
    }
    for (size_t i = 0; i < ball.size(); i += 7)
      for (size_t j = 0; j < ball.size(); j += 11) {
        auto prod = f.aw.mul(ball[i], ball[j]);
        CHECK(f.aw.length(prod) <= f.aw.length(ball[i]) + f.aw.length(ball[j]));
      }
  }
}

TEST_CASE("Omega groups") {
  Fix fa1('A', 1);
  CHECK(fa1.aw.omegaCount() == 2);
  CHECK(fa1.aw.omegaPermutation(1) == std::vector<int>{1, 0});

  Fix fa2('A', 2);
  CHECK(fa2.aw.omegaCount() == 3);
  // cyclic on {0,1,2}: nontrivial permutations have no fixed point
  for (int i = 1; i < 3; ++i) {
    auto p = fa2.aw.omegaPermutation(i);
    for (int j = 0; j <= 2; ++j) CHECK(p[j] != j);
  }

  Fix fg2('G', 2);
  CHECK(fg2.aw.omegaCount() == 1);
  Fix ff4('F', 4);
  CHECK(ff4.aw.omegaCount() == 1);
  Fix fc2('C', 2);
  CHECK(fc2.aw.omegaCount() == 2);
}

TEST_CASE("Bruhat order") {
  Fix f('A', 1);
  auto s0 = f.aw.simpleAffine(0);
  auto s1 = f.aw.simpleAffine(1);
  auto tpi = f.aw.translation({1});
  CHECK(f.aw.bruhatLeq(f.aw.identity(), s0));
  CHECK(!f.aw.bruhatLeq(s0, s1));
  CHECK(!f.aw.bruhatLeq(s1, s0));
  // omega <= omega*s1 = t(pi), while s0 has a different Omega part
  auto om = f.aw.omegaElem(1);
  CHECK(f.aw.bruhatLeq(om, tpi));
  CHECK(!f.aw.bruhatLeq(s0, tpi));
  // restricted to W0 it is the subword order of the finite group
  Fix g('B', 2);
  const auto& W = g.rs.W;
  for (int u = 0; u < W.size(); ++u)
    for (int w = 0; w < W.size(); ++w) {
      bool fin = W.bruhatLeq(u, w);
      bool aff = g.aw.bruhatLeq(g.aw.finite(u), g.aw.finite(w));
      CHECK(fin == aff);
    }
}

TEST_CASE("generator conjugacy classes and parameters") {
  Fix fa1('A', 1);
  CHECK(fa1.aw.classCount() == 1);
  Fix fb2('B', 2);
  CHECK(fb2.aw.classCount() == 2);
  Fix fg2('G', 2);
  CHECK(fg2.aw.classCount() == 2);
  Fix fa2('A', 2);
  CHECK(fa2.aw.classCount() == 1);

  ParameterField pf(fa1.aw, Rat(1, 4), {Rat(3)});
  CHECK(pf.qbase() == Rat(1, 2));
  CHECK(pf.e() == 2);
  CHECK(pf.q() == Rat(1, 4));
  CHECK(pf.qpow(Rat(1)) == Rat(1, 4));
  CHECK(pf.qpow(Rat(1, 2)) == Rat(1, 2));
  CHECK(pf.qpow(Rat(0)) == 1);
  CHECK(pf.qpow(Rat(1, 2)) * pf.qpow(Rat(3, 2)) == pf.qpow(Rat(2)));
  CHECK_THROWS_AS(pf.qpow(Rat(1, 3)), NonIntegralExponent);
  CHECK(pf.kGen(0) == 3);
  CHECK(pf.genericThrough(8));

  // A2: q = 1/4 has no rational cube root, so the input becomes qbase
  ParameterField pf2(fa2.aw, Rat(1, 4), {Rat(3)});
  CHECK(pf2.qbase() == Rat(1, 4));
  CHECK(pf2.e() == 3);
  CHECK(pf2.q() == Rat(1, 64));

  // G2: q_alpha = q for long, q^3 for short
  ParameterField pg(fg2.aw, Rat(1, 4), {Rat(3), Rat(5)});
  CHECK(pg.e() == 1);
  CHECK(pg.qAlpha(fg2.rs.highestRoot) == Rat(1, 4));
  CHECK(pg.qAlpha(IVec{1, 0}) == ratPow(Rat(1, 4), 3));
  // k by length: phi long
  CHECK(pg.kRoot(fg2.rs.highestRoot) == pg.kGen(0));
  CHECK(pg.kRoot(IVec{1, 0}) == pg.kGen(1));
}
