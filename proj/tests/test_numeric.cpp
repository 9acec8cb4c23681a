#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "zeq/algnum.hpp"
#include "zeq/numeric.hpp"

using namespace zeq;

namespace {

// 50-digit bracketing of pi and e, frozen from standard tables; both serve as
// oracles independent of the mpfr path that produces our enclosures.
const char* PI_LO = "31415926535897932384626433832795028841971693993751/10000000000000000000000000000000000000000000000000";
const char* PI_HI = "31415926535897932384626433832795028841971693993752/10000000000000000000000000000000000000000000000000";
const char* E_LO = "27182818284590452353602874713526624977572470936999/10000000000000000000000000000000000000000000000000";
const char* E_HI = "27182818284590452353602874713527624977572470937000/10000000000000000000000000000000000000000000000000";
const char* LOG2_LO = "6931471805599453094172321214581765680755001343602/10000000000000000000000000000000000000000000000000";
const char* LOG2_HI = "6931471805599453094172321214581765680755001343603/10000000000000000000000000000000000000000000000000";

bool ball_brackets(const Ball& b, const char* lo, const char* hi) {
  return b.lo() <= Rat::from_string(hi) && b.hi() >= Rat::from_string(lo);
}

PresentationPtr sqrt_presentation(const Rat& binding, Rat sel_lo, Rat sel_hi) {
  Upoly<RatFunc> P{RatFunc(QPoly::variable(1, 0, Rat(1))) * Rat(-1), RatFunc(Rat(0)),
                   RatFunc(Rat(1))};
  std::vector<ComputableScalar> b{ComputableScalar::rational(GaussRat(binding))};
  return make_presentation(1, 2, std::move(P), std::move(b),
                           Ball::real_interval(sel_lo, sel_hi), Ground::R);
}

PresentationPtr mth_root_presentation(unsigned m, const Rat& binding, Rat sel_lo, Rat sel_hi) {
  Upoly<RatFunc> P(m + 1, RatFunc(Rat(0)));
  P[0] = RatFunc(QPoly::variable(1, 0, Rat(1))) * Rat(-1);
  P[m] = RatFunc(Rat(1));
  std::vector<ComputableScalar> b{ComputableScalar::rational(GaussRat(binding))};
  return make_presentation(1, m, std::move(P), std::move(b),
                           Ball::real_interval(sel_lo, sel_hi), Ground::R);
}

}  // namespace

TEST_CASE("refine_scalar: builtins against frozen digit oracles") {
  ComputableScalar pi = ComputableScalar::pi();
  Ball b7 = pi.refine(7);
  CHECK(b7.radius() <= Rat(1, 128));
  CHECK(ball_brackets(b7, PI_LO, PI_HI));

  ComputableScalar e = ComputableScalar::euler();
  Ball e10 = e.refine(10);
  Ball e5 = e.refine(5);
  CHECK(e10.radius() <= Rat::pow2(-10));
  CHECK(e10.overlaps(e5));
  CHECK(ball_brackets(e10, E_LO, E_HI));

  ComputableScalar l2 = ComputableScalar::log_of(Rat(2));
  CHECK(ball_brackets(l2.refine(40), LOG2_LO, LOG2_HI));

  // exp(1/2)^2 must overlap e
  ComputableScalar eh = ComputableScalar::exp_of(Rat(1, 2));
  Ball sq = eh.refine(40) * eh.refine(40);
  CHECK(sq.overlaps(e10));

  ComputableScalar r = ComputableScalar::rational(GaussRat(Rat(3, 2)));
  CHECK(r.refine(3).is_exact());
  CHECK(r.refine(3).center() == GaussRat(Rat(3, 2)));

  // determinism per precision argument
  CHECK(pi.refine(7).center() == b7.center());
  CHECK(pi.refine(7).radius() == b7.radius());
}

TEST_CASE("oracle protocol: good and bad subprocesses") {
  auto good = std::make_shared<OracleSession>(std::string(ZEQ_TEST_ORACLE) + " sqrt2");
  ComputableScalar s = ComputableScalar::oracle(good, 0);
  Ball b = s.refine(20);
  CHECK(b.radius() <= Rat::pow2(-20));
  Rat lo = Rat(2).sqrt_lb(128), hi = Rat(2).sqrt_ub(128);
  CHECK(b.lo() <= hi);
  CHECK(b.hi() >= lo);

  auto bad = std::make_shared<OracleSession>(std::string(ZEQ_TEST_ORACLE) + " bad");
  ComputableScalar sb = ComputableScalar::oracle(bad, 0);
  CHECK_THROWS_AS(sb.refine(10), Error);
}

TEST_CASE("ball arithmetic contains exact images (random rational samples)") {
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> dc(-20, 20);
  for (int rep = 0; rep < 80; ++rep) {
    Rat ca(dc(rng)), cb(dc(rng));
    Rat ra(std::abs(dc(rng)) + 1, 7), rb(std::abs(dc(rng)) + 1, 9);
    Ball A = Ball::real_interval(ca - ra, ca + ra);
    Ball B = Ball::real_interval(cb - rb, cb + rb);
    for (int i = -2; i <= 2; ++i) {
      Rat x = ca + ra * Rat(i, 2);
      Rat y = cb + rb * Rat(i, 2);
      CHECK((A + B).contains(GaussRat(x + y)));
      CHECK((A - B).contains(GaussRat(x - y)));
      CHECK((A * B).contains(GaussRat(x * y)));
      if (B.excludes_zero() && !y.is_zero()) CHECK((A / B).contains(GaussRat(x / y)));
    }
  }
  Ball I = Ball(GaussRat(Rat(0), Rat(1)), Rat(1, 100), false);
  Ball prod = I * I;
  CHECK(prod.contains(GaussRat(Rat(-1))));
}

TEST_CASE("certify_ball_nonvanishing on 4t around pi") {
  QPoly fourt = QPoly::variable(1, 0, Rat(4));
  std::vector<ComputableScalar> center{ComputableScalar::pi()};
  auto c1 = certify_ball_nonvanishing({fourt}, center, Rat(1), Ground::R);
  CHECK(c1.ok);
  CHECK(c1.per_poly[0].size() >= 1);
  auto c4 = certify_ball_nonvanishing({fourt}, center, Rat(4), Ground::R);
  CHECK_FALSE(c4.ok);  // the 4-ball reaches t = 0
  CHECK(c4.failed_poly == 0);
  auto cc = certify_ball_nonvanishing({QPoly::constant(1, Rat(1))}, center, Rat(100), Ground::R);
  CHECK(cc.ok);
}

TEST_CASE("tail constants: M = 11/2, K_tail = 4, C_upper dominates the sqrt remainder") {
  auto F = sqrt_presentation(Rat(4), Rat(19, 10), Rat(21, 10));
  TailBounds tb = tail_constants(*F, Rat(1, 4));
  CHECK(tb.M == Rat(11, 2));
  CHECK(tb.K_tail == 4);
  Rat ratio = tb.C_upper / Rat(11);
  CHECK(ratio >= Rat(2));
  CHECK((ratio - Rat(2)) * (ratio - Rat(2)) >= Rat(2));
  REQUIRE(tb.eta.has_value());
  CHECK(*tb.eta <= Rat(4));
  CHECK(tb.eta->sign() > 0);

  // Taylor tail of sqrt(4 + tau) = 2 sum C(1/2,l) (tau/4)^l at tau = 1/4
  Rat tau(1, 4);
  for (unsigned k : {4u, 6u, 8u}) {
    Rat partial(0);
    Rat binom(1);  // C(1/2, l)
    for (unsigned l = 0; l < k; ++l) {
      partial = partial + Rat(2) * binom * (tau * Rat(1, 4)).pow(l);
      binom = binom * (Rat(1, 2) - Rat(static_cast<long>(l))) / Rat(static_cast<long>(l) + 1);
    }
    Rat value_lo = Rat(17, 4).sqrt_lb(128);
    Rat value_hi = Rat(17, 4).sqrt_ub(128);
    Rat remainder_ub = max((value_hi - partial).abs(), (value_lo - partial).abs());
    Rat bound2 = tb.C_upper * tb.C_upper / Rat::pow2(static_cast<long>(k));
    CHECK(remainder_ub * remainder_ub <= bound2);
  }
}

TEST_CASE("isolate_roots: worked examples") {
  Upoly<GaussRat> f{GaussRat(Rat(-9, 2)), GaussRat(Rat(0)), GaussRat(Rat(1))};
  IsolationResult iso = isolate_roots(f);
  REQUIRE(iso.boxes.size() == 2);
  CHECK(iso.boxes[0].is_real());
  CHECK(iso.boxes[1].is_real());
  REQUIRE(iso.separation.has_value());
  CHECK(*iso.separation > Rat(4));
  CHECK((*iso.separation) * (*iso.separation) <= Rat(18));

  Upoly<GaussRat> g{GaussRat(Rat(-1)), GaussRat(Rat(1))};
  IsolationResult iso2 = isolate_roots(g);
  CHECK(iso2.boxes.size() == 1);
  CHECK_FALSE(iso2.separation.has_value());
  CHECK(iso2.boxes[0].contains(GaussRat(Rat(1))));

  Upoly<GaussRat> h{GaussRat(Rat(1)), GaussRat(Rat(-2)), GaussRat(Rat(1))};
  CHECK_THROWS_AS(isolate_roots(h), Error);

  Upoly<GaussRat> c{GaussRat(Rat(1)), GaussRat(Rat(0)), GaussRat(Rat(1))};
  IsolationResult iso3 = isolate_roots(c);
  REQUIRE(iso3.boxes.size() == 2);
  CHECK(iso3.boxes[0].contains(GaussRat(Rat(0), Rat(-1))));
  CHECK(iso3.boxes[1].contains(GaussRat(Rat(0), Rat(1))));

  // Gaussian coefficients: (z - i)(z - 2) = z^2 - (2+i)z + 2i
  Upoly<GaussRat> gi{GaussRat(Rat(0), Rat(2)), GaussRat(Rat(-2), Rat(-1)), GaussRat(Rat(1))};
  IsolationResult iso4 = isolate_roots(gi);
  REQUIRE(iso4.boxes.size() == 2);
  bool has_i = false, has_2 = false;
  for (const auto& bx : iso4.boxes) {
    has_i = has_i || bx.contains(GaussRat(Rat(0), Rat(1)));
    has_2 = has_2 || bx.contains(GaussRat(Rat(2)));
  }
  CHECK(has_i);
  CHECK(has_2);
}

TEST_CASE("track_root: sqrt branch from t = 4 to q = 9/2") {
  auto F = sqrt_presentation(Rat(4), Rat(19, 10), Rat(21, 10));
  TrackOutcome t = track_root(*F, {GaussRat(Rat(9, 2))});
  Rat lo = Rat(9, 2).sqrt_lb(128), hi = Rat(9, 2).sqrt_ub(128);
  CHECK(t.box.is_real());
  CHECK(t.box.re_lo <= hi);
  CHECK(t.box.re_hi >= lo);
  CHECK(t.box.re_lo.sign() > 0);
  REQUIRE(t.roots_at_q.separation.has_value());

  TrackOutcome t0 = track_root(*F, {GaussRat(Rat(4))});
  CHECK(t0.box.contains(GaussRat(Rat(2))));

  CHECK_THROWS_AS(track_root(*F, {GaussRat(Rat(-1))}), Error);
}

TEST_CASE("track_root: negative branch is kept apart") {
  auto F = sqrt_presentation(Rat(4), Rat(-21, 10), Rat(-19, 10));
  TrackOutcome t = track_root(*F, {GaussRat(Rat(9, 2))});
  CHECK(t.box.re_hi.sign() < 0);
}

TEST_CASE("track_root: m-th roots over random rational endpoints") {
  std::mt19937 rng(21);
  std::uniform_int_distribution<int> da(1, 6);
  for (unsigned m : {2u, 3u}) {
    for (int rep = 0; rep < 10; ++rep) {
      Rat a(da(rng));
      Rat q = Rat(da(rng)) + Rat(da(rng), 7);
      Rat am = a.pow(m);
      auto F = mth_root_presentation(m, am, a - Rat(1, 2), a + Rat(1, 2));
      TrackOutcome t = track_root(*F, {GaussRat(q)});
      CHECK(t.box.is_real());
      CHECK(t.box.re_lo.sign() > 0);
      CHECK(t.box.re_lo.pow(m) <= q);
      CHECK(t.box.re_hi.pow(m) >= q);
    }
  }
}

TEST_CASE("tracking with a transcendental binding") {
  Upoly<RatFunc> P{RatFunc(QPoly::variable(1, 0, Rat(1))) * Rat(-1), RatFunc(Rat(0)),
                   RatFunc(Rat(1))};
  std::vector<ComputableScalar> b{ComputableScalar::pi()};
  auto F = make_presentation(1, 2, std::move(P), std::move(b),
                             Ball::real_interval(Rat(17, 10), Rat(18, 10)), Ground::R);
  TrackOutcome t = track_root(*F, {GaussRat(Rat(157, 50))});
  CHECK(t.box.is_real());
  Rat lo = Rat(157, 50).sqrt_lb(128), hi = Rat(157, 50).sqrt_ub(128);
  CHECK(t.box.re_lo <= hi);
  CHECK(t.box.re_hi >= lo);
}

TEST_CASE("determinism: identical runs give identical results") {
  auto F = sqrt_presentation(Rat(4), Rat(19, 10), Rat(21, 10));
  TrackOutcome a = track_root(*F, {GaussRat(Rat(9, 2))});
  TrackOutcome b = track_root(*F, {GaussRat(Rat(9, 2))});
  CHECK(a.root_index == b.root_index);
  CHECK(a.box.str() == b.box.str());
  CHECK(a.steps == b.steps);

  ComputableScalar pi = ComputableScalar::pi();
  CHECK(pi.refine(33).str() == ComputableScalar::pi().refine(33).str());
}
