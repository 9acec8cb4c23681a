#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "zeq/numeric.hpp"
#include "zeq/tower.hpp"

using namespace zeq;

namespace {

PresentationPtr sqrt_t_presentation() {
  // k = Q(t)(z), z^2 = t, t bound to 2, z the positive root
  Upoly<RatFunc> P{RatFunc(QPoly::variable(1, 0, Rat(1))) * Rat(-1), RatFunc(Rat(0)),
                   RatFunc(Rat(1))};
  std::vector<ComputableScalar> b{ComputableScalar::rational(GaussRat(Rat(2)))};
  Ball sel = Ball::real_interval(Rat(7, 5), Rat(3, 2));
  return make_presentation(1, 2, std::move(P), std::move(b), sel, Ground::R);
}

PresentationPtr cbrt_presentation() {
  // z^3 = t + 1, t bound to 1, z the real cube root of 2
  QPoly t = QPoly::variable(1, 0, Rat(1));
  Upoly<RatFunc> P{RatFunc(-t - QPoly::constant(1, Rat(1))), RatFunc(Rat(0)), RatFunc(Rat(0)),
                   RatFunc(Rat(1))};
  std::vector<ComputableScalar> b{ComputableScalar::rational(GaussRat(Rat(1)))};
  Ball sel = Ball::real_interval(Rat(5, 4), Rat(13, 10));
  return make_presentation(1, 3, std::move(P), std::move(b), sel, Ground::R);
}

TowerElem random_elem(std::mt19937& rng, const PresentationPtr& F) {
  std::uniform_int_distribution<int> dc(-4, 4);
  std::uniform_int_distribution<int> dd(0, 2);
  std::vector<RatFunc> coords;
  for (uint32_t k = 0; k < F->d; ++k) {
    QPoly num(F->r), den(F->r);
    for (int t = 0; t < 2; ++t) {
      Exp e(F->r);
      for (auto& x : e) x = static_cast<uint32_t>(dd(rng));
      num.add_term(std::move(e), Rat(dc(rng)));
    }
    den.add_term(Exp(F->r, 0), Rat(1));
    if (dd(rng) == 0) {
      Exp e(F->r, 0);
      if (F->r > 0) e[0] = 1;
      den.add_term(std::move(e), Rat(1));  // 1 + t1, never 0 near the bindings
    }
    coords.push_back(RatFunc(num, den));
  }
  return TowerElem(F, std::move(coords));
}

}  // namespace

TEST_CASE("presentation validation") {
  Upoly<RatFunc> bad{RatFunc(Rat(1)), RatFunc(Rat(-2)), RatFunc(Rat(1))};  // (z-1)^2
  std::vector<ComputableScalar> b{ComputableScalar::rational(GaussRat(Rat(2)))};
  CHECK_THROWS_AS(make_presentation(1, 2, bad, b, Ball::exact(GaussRat(Rat(1))), Ground::R), Error);
  Upoly<RatFunc> notmonic{RatFunc(QPoly(1)), RatFunc(Rat(0)), RatFunc(Rat(2))};
  CHECK_THROWS_AS(make_presentation(1, 2, notmonic, b, Ball::exact(GaussRat(Rat(0))), Ground::R),
                  Error);
  auto F = sqrt_t_presentation();
  CHECK(F->d == 2);
  CHECK(F->disc_numerator.degree_in(0) >= 1);  // 4t up to normalization
}

TEST_CASE("z^2 = t reduction and inverses") {
  auto F = sqrt_t_presentation();
  TowerElem z = TowerElem::z_gen(F);
  TowerElem t = TowerElem::t_var(F, 0);
  CHECK(z * z == t);  // z.z -> t
  TowerElem one = TowerElem::one(F);
  TowerElem a = one + z;
  CHECK(one * a == a);
  CHECK((one + z) * (one - z) == one - t);

  // inv(z) = z/t since z * z/t = t/t = 1
  TowerElem zi = z.inv();
  CHECK(z * zi == one);
  TowerElem z_over_t(
      F, {RatFunc(Rat(0)), RatFunc(QPoly::constant(1, Rat(1)), QPoly::variable(1, 0, Rat(1)))});
  CHECK(zi == z_over_t);
  CHECK(one.inv() == one);
  CHECK_THROWS_AS(TowerElem::zero(F).inv(), Error);
}

TEST_CASE("tw_is_zero is purely symbolic") {
  auto F = sqrt_t_presentation();
  TowerElem z = TowerElem::z_gen(F);
  TowerElem t = TowerElem::t_var(F, 0);
  CHECK(tw_is_zero(TowerElem::zero(F)));
  CHECK(tw_is_zero(z * z - t));
  CHECK_FALSE(tw_is_zero(z));
}

TEST_CASE("field axioms on random elements") {
  std::mt19937 rng(5);
  for (const auto& F : {sqrt_t_presentation(), cbrt_presentation()}) {
    TowerElem one = TowerElem::one(F);
    for (int rep = 0; rep < 25; ++rep) {
      TowerElem a = random_elem(rng, F);
      TowerElem b = random_elem(rng, F);
      TowerElem c = random_elem(rng, F);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + b == b + a);
      if (!tw_is_zero(a)) {
        CHECK(a * a.inv() == one);
      }
    }
  }
}

TEST_CASE("reducible squarefree presentations are caught by tw_inv") {
  // P = z^2 - 1 over Q (r = 0): squarefree but reducible
  Upoly<RatFunc> P{RatFunc(Rat(-1)), RatFunc(Rat(0)), RatFunc(Rat(1))};
  auto F = make_presentation(0, 2, std::move(P), {}, Ball::exact(GaussRat(Rat(1))), Ground::R);
  TowerElem z = TowerElem::z_gen(F);
  TowerElem one = TowerElem::one(F);
  CHECK_THROWS_AS((z - one).inv(), Error);  // gcd(z-1, z^2-1) = z-1
}

TEST_CASE("symbolic zero implies numeric zero; nonzero separates from 0") {
  auto F = sqrt_t_presentation();
  TowerEvaluator ev(F);
  TowerElem z = TowerElem::z_gen(F);
  TowerElem one = TowerElem::one(F);
  TowerElem zero_elem = z * z - TowerElem::t_var(F, 0);
  REQUIRE(tw_is_zero(zero_elem));
  for (unsigned p : {16u, 64u, 256u}) {
    Ball bb = ev.eval(zero_elem, p);
    CHECK(bb.contains_zero());
  }
  // sqrt(2) - 1 is nonzero: the evaluator certifies a positive lower bound
  Rat lb = ev.lower_bound_nonzero(z - one);
  CHECK(lb.sign() > 0);
  CHECK(lb < Rat(1, 2));  // true value ~ 0.414
  Ball zb = ev.z_ball(30);
  CHECK(zb.radius() <= Rat::pow2(-30));
  // both enclosures contain sqrt(2), so they must overlap
  Rat lo = Rat(2).sqrt_lb(256), hi = Rat(2).sqrt_ub(256);
  CHECK(zb.lo() <= hi);
  CHECK(zb.hi() >= lo);
}

TEST_CASE("TowerElem serialization has exactly d coordinates") {
  auto F = cbrt_presentation();
  std::mt19937 rng(9);
  TowerElem a = random_elem(rng, F);
  std::string s = a.str();
  size_t commas = 0;
  int depth = 0;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) ++commas;
  }
  CHECK(commas == F->d - 1);
}
