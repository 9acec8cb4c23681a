#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "zeq/cascade.hpp"
#include "zeq/tower.hpp"

using namespace zeq;

namespace {

PresentationPtr rational_presentation(const Rat& t_value) {
  // d = 1 (no algebraic part), one transcendental t
  Upoly<RatFunc> P{RatFunc(Rat(0)), RatFunc(Rat(1))};  // z
  std::vector<ComputableScalar> b{ComputableScalar::rational(GaussRat(t_value))};
  return make_presentation(1, 1, std::move(P), std::move(b), Ball::exact(GaussRat(Rat(0))),
                           Ground::R);
}

MPoly<TowerElem> tmono(const PresentationPtr& F, uint32_t n, Exp e, const TowerElem& c) {
  return MPoly<TowerElem>::monomial(n, std::move(e), c);
}

QPoly qmono(uint32_t n, Exp e, Rat c) { return QPoly::monomial(n, std::move(e), c); }

QPoly random_qpoly(std::mt19937& rng, uint32_t nvars, int max_deg, int terms) {
  QPoly f(nvars);
  std::uniform_int_distribution<int> dc(-5, 5);
  std::uniform_int_distribution<int> de(0, max_deg);
  for (int t = 0; t < terms; ++t) {
    Exp e(nvars);
    for (auto& x : e) x = static_cast<uint32_t>(de(rng));
    f.add_term(std::move(e), Rat(dc(rng)));
  }
  return f;
}

}  // namespace

TEST_CASE("affine changes: round trip, identity, worked example") {
  std::mt19937 rng(2);
  for (int rep = 0; rep < 40; ++rep) {
    QPoly f = random_qpoly(rng, 3, 3, 5);
    LinearChange ch;
    ch.level = 3;
    ch.mu = {Rat(rep % 5 - 2), Rat((rep / 5) % 5 - 2, 3)};
    QPoly g = apply_affine_change(f, ch);
    CHECK(apply_affine_change(g, ch, true) == f);
  }
  QPoly f = random_qpoly(rng, 2, 3, 4);
  LinearChange id2{2, {Rat(0)}};
  CHECK(apply_affine_change(f, id2) == f);

  // phi_(1)(x1 x2) = x2^2 + x1 x2
  QPoly x1x2 = qmono(2, {1, 1}, Rat(1));
  LinearChange one2{2, {Rat(1)}};
  CHECK(apply_affine_change(x1x2, one2) == qmono(2, {0, 2}, Rat(1)) + x1x2);
}

TEST_CASE("affine changes act degree by degree (coefficient functoriality)") {
  std::mt19937 rng(31);
  for (int rep = 0; rep < 25; ++rep) {
    QPoly f = random_qpoly(rng, 3, 3, 6);
    LinearChange ch{3, {Rat(1), Rat(-2)}};
    QPoly g = apply_affine_change(f, ch);
    // the image of the degree-D part is the degree-D part of the image
    for (int64_t D = 0; D <= f.total_degree(); ++D) {
      QPoly fD(3), gD(3);
      for (const auto& [e, c] : f.terms())
        if (static_cast<int64_t>(exp_total(e)) == D) fD.add_term(e, c);
      for (const auto& [e, c] : g.terms())
        if (static_cast<int64_t>(exp_total(e)) == D) gD.add_term(e, c);
      CHECK(apply_affine_change(fD, ch) == gD);
    }
  }
}

TEST_CASE("monicize: worked examples") {
  auto F = rational_presentation(Rat(3));
  TowerElem one = TowerElem::one(F);
  TowerElem t = TowerElem::t_var(F, 0);

  // [x1 x2] at level 2: mu = (1), output x2^2 + x1 x2, c = 1
  MPoly<TowerElem> g = tmono(F, 2, {1, 1}, one);
  auto m = monicize(std::vector<MPoly<TowerElem>>{g}, 2, one);
  CHECK(m.change.mu == std::vector<Rat>{Rat(1)});
  CHECK(m.constants[0] == one);
  CHECK(m.polys[0] == tmono(F, 2, {0, 2}, one) + tmono(F, 2, {1, 1}, one));

  // [x2^2 - t x1^3]: already monic in x2 (constant top coefficient), mu = 0
  MPoly<TowerElem> cusp = tmono(F, 2, {0, 2}, one) + tmono(F, 2, {3, 0}, -t);
  auto m2 = monicize(std::vector<MPoly<TowerElem>>{cusp}, 2, one);
  CHECK(m2.change.is_identity());
  CHECK(m2.constants[0] == one);
  CHECK(m2.polys[0] == cusp);

  // [x1^2 + x2^2]: coefficient of x2^2 is already 1
  MPoly<TowerElem> circ = tmono(F, 2, {2, 0}, one) + tmono(F, 2, {0, 2}, one);
  auto m3 = monicize(std::vector<MPoly<TowerElem>>{circ}, 2, one);
  CHECK(m3.change.is_identity());
  CHECK(m3.constants[0] == one);

  // errors
  CHECK_THROWS_AS(monicize(std::vector<MPoly<TowerElem>>{MPoly<TowerElem>::constant(2, one)}, 2, one),
                  Error);
  CHECK_THROWS_AS(monicize(std::vector<MPoly<TowerElem>>{MPoly<TowerElem>(2)}, 2, one), Error);
}

TEST_CASE("cusp cascade: levels ((2,1),(3,3)), e1 = 4t, final unit 3") {
  auto F = rational_presentation(Rat(3));
  TowerElem one = TowerElem::one(F);
  TowerElem t = TowerElem::t_var(F, 0);
  MPoly<TowerElem> g = tmono(F, 2, {0, 2}, one) + tmono(F, 2, {3, 0}, -t);

  Cascade<TowerElem> c = build_cascade(std::vector<MPoly<TowerElem>>{g}, one);
  REQUIRE(c.levels.size() == 2);
  CHECK(c.levels[0].j == 2);
  CHECK(c.levels[0].d == 2);
  CHECK(c.levels[0].l == 1);
  CHECK(c.levels[1].j == 1);
  CHECK(c.levels[1].d == 3);
  CHECK(c.levels[1].l == 3);
  CHECK(c.k0 == 1);
  // e_1 = 4t and f_1 = x1^3
  CHECK(c.levels[1].e == t * Rat(4));
  CHECK(c.levels[1].f == tmono(F, 1, {3}, one));
  CHECK(c.final_unit == one * Rat(3));

  // cross-check Delta_{2,1} against the resultant identity: for d = 2,
  // Delta_1 = -Res_{x2}(f, df/dx2)
  DiscSeq<MPoly<TowerElem>> seq = generalized_discriminants(g, 1, one);
  MPoly<TowerElem> d_dx2 = tmono(F, 2, {0, 1}, one * Rat(2));
  MPoly<TowerElem> res = resultant(g, d_dx2, 1);
  CHECK(seq.values[0] == -res);

  // certificate is self-consistent and replays identically
  check_certificate(c, one);
  CascadeReplay rep = replay_of(c);
  Cascade<TowerElem> again = build_cascade(std::vector<MPoly<TowerElem>>{g}, one, false, &rep);
  CHECK(again.levels.size() == c.levels.size());
  for (size_t k = 0; k < c.levels.size(); ++k) {
    CHECK(again.levels[k].d == c.levels[k].d);
    CHECK(again.levels[k].l == c.levels[k].l);
    CHECK(again.levels[k].e == c.levels[k].e);
    CHECK(again.levels[k].f == c.levels[k].f);
  }
}

TEST_CASE("single-variable input stops immediately") {
  auto F = rational_presentation(Rat(2));
  TowerElem one = TowerElem::one(F);
  MPoly<TowerElem> g = tmono(F, 1, {1}, one);
  Cascade<TowerElem> c = build_cascade(std::vector<MPoly<TowerElem>>{g}, one);
  REQUIRE(c.levels.size() == 1);
  CHECK(c.levels[0].d == 1);
  CHECK(c.levels[0].l == 1);
  CHECK(c.k0 == 1);
  CHECK(c.final_unit == one);
}

TEST_CASE("homogeneous inputs keep every cascade level homogeneous") {
  auto F = rational_presentation(Rat(5));
  TowerElem one = TowerElem::one(F);
  // g = x1 x2 (x1 + x2)
  MPoly<TowerElem> g =
      tmono(F, 2, {2, 1}, one) + tmono(F, 2, {1, 2}, one);
  Cascade<TowerElem> c = build_cascade(std::vector<MPoly<TowerElem>>{g}, one, true);
  CHECK(c.homogeneous);
  for (const auto& lv : c.levels) CHECK(lv.f.is_homogeneous());
  check_certificate(c, one);

  // non-homogeneous input with the flag raised is rejected
  MPoly<TowerElem> bad = g + MPoly<TowerElem>::constant(2, one);
  CHECK_THROWS_AS(build_cascade(std::vector<MPoly<TowerElem>>{bad}, one, true), Error);
}

TEST_CASE("certificate tampering is detected") {
  auto F = rational_presentation(Rat(3));
  TowerElem one = TowerElem::one(F);
  TowerElem t = TowerElem::t_var(F, 0);
  MPoly<TowerElem> g = tmono(F, 2, {0, 2}, one) + tmono(F, 2, {3, 0}, -t);
  Cascade<TowerElem> c = build_cascade(std::vector<MPoly<TowerElem>>{g}, one);
  Cascade<TowerElem> forged = c;
  forged.levels[1].l = 2;
  CHECK_THROWS_AS(check_certificate(forged, one), Error);
  Cascade<TowerElem> forged2 = c;
  forged2.levels[1].e = t * Rat(5);
  CHECK_THROWS_AS(check_certificate(forged2, one), Error);
}

TEST_CASE("constant and zero inputs are stripped and reported") {
  auto F = rational_presentation(Rat(3));
  TowerElem one = TowerElem::one(F);
  MPoly<TowerElem> g = tmono(F, 1, {2}, one) + tmono(F, 1, {0}, one);
  std::vector<MPoly<TowerElem>> gs{MPoly<TowerElem>(1), g, MPoly<TowerElem>::constant(1, one * Rat(7))};
  Cascade<TowerElem> c = build_cascade(gs, one);
  CHECK(c.stripped_zero_inputs == std::vector<size_t>{0});
  CHECK(c.stripped_constant_inputs == std::vector<size_t>{2});
  CHECK(c.s == 1);
  CHECK_THROWS_AS(build_cascade(std::vector<MPoly<TowerElem>>{MPoly<TowerElem>(1)}, one), Error);
}
