#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "zeq/qpoly.hpp"
#include "zeq/ratfunc.hpp"

using namespace zeq;

namespace {

QPoly qp(uint32_t nvars) { return QPoly(nvars); }

QPoly random_poly(std::mt19937& rng, uint32_t nvars, int max_deg, int terms, int coeff_span = 9) {
  QPoly f(nvars);
  std::uniform_int_distribution<int> dc(-coeff_span, coeff_span);
  std::uniform_int_distribution<int> de(0, max_deg);
  for (int t = 0; t < terms; ++t) {
    Exp e(nvars);
    for (auto& x : e) x = static_cast<uint32_t>(de(rng));
    f.add_term(std::move(e), Rat(dc(rng)));
  }
  return f;
}

// independent cofactor-expansion oracle
Rat det_oracle(std::vector<std::vector<Rat>> m) {
  size_t n = m.size();
  if (n == 1) return m[0][0];
  Rat acc(0);
  for (size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Rat>> sub;
    for (size_t i = 1; i < n; ++i) {
      std::vector<Rat> row;
      for (size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      sub.push_back(row);
    }
    Rat term = m[0][j] * det_oracle(sub);
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

}  // namespace

TEST_CASE("Rat canonical form and string round-trip") {
  Rat a(6, -4);
  CHECK(a.num() == -3);
  CHECK(a.den() == 2);
  CHECK(a.str() == "-3/2");
  CHECK(Rat::from_string("-3/2") == a);
  CHECK(Rat::from_string("7") == Rat(7));
  CHECK_THROWS_AS(Rat(1, 0), Error);
  CHECK(Rat(0).str() == "0/1");
}

TEST_CASE("Rat sqrt bounds bracket the true value") {
  Rat two(2);
  Rat lo = two.sqrt_lb(), hi = two.sqrt_ub();
  CHECK(lo * lo <= two);
  CHECK(hi * hi >= two);
  CHECK(hi - lo <= Rat::pow2(-60));
}

TEST_CASE("GaussRat arithmetic") {
  GaussRat i(Rat(0), Rat(1));
  CHECK((i * i) == GaussRat(Rat(-1)));
  GaussRat a(Rat(3), Rat(4));
  CHECK(a.norm2() == Rat(25));
  CHECK((a / a).is_one());
  CHECK(GaussRat::from_string("(3/1,4/1)") == a);
  CHECK(GaussRat::from_string("5/2") == GaussRat(Rat(5, 2)));
}

TEST_CASE("MPoly ring axioms on random triples") {
  std::mt19937 rng(42);
  for (int rep = 0; rep < 60; ++rep) {
    QPoly a = random_poly(rng, 3, 3, 4);
    QPoly b = random_poly(rng, 3, 3, 4);
    QPoly c = random_poly(rng, 3, 3, 4);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("mv_gcd on the worked examples") {
  // (t1^2 - t2^2, t1 - t2) -> t1 - t2, confirmed by exact division
  QPoly a(2), b(2);
  a.add_term({2, 0}, Rat(1));
  a.add_term({0, 2}, Rat(-1));
  b.add_term({1, 0}, Rat(1));
  b.add_term({0, 1}, Rat(-1));
  QPoly g = mv_gcd(a, b);
  CHECK(g == b);
  CHECK(try_div_exact(a, g).has_value());
  CHECK(try_div_exact(b, g).has_value());

  // gcd with zero normalizes
  QPoly z(2);
  QPoly f = scale_rat(b, Rat(-4, 6));
  CHECK(mv_gcd(f, z) == b);  // primitive, positive leading

  // coprime pair: gcd 1, cross-checked by a nonzero resultant in t1
  QPoly p(2), q(2);
  p.add_term({1, 0}, Rat(1));
  p.add_term({0, 0}, Rat(1));  // t1 + 1
  q.add_term({0, 1}, Rat(1));
  q.add_term({0, 0}, Rat(1));  // t2 + 1
  QPoly gg = mv_gcd(p, q);
  CHECK(gg.is_constant());
  CHECK(gg.constant_value() == Rat(1));
  QPoly res = resultant(p * q, p, 0);  // shares the factor p: resultant vanishes
  CHECK(res.is_zero());
  QPoly res2 = resultant(p, q * q + p, 0);
  (void)res2;  // just exercises mixed degrees
}

TEST_CASE("mv_gcd multiplicativity: gcd(ah, bh) associate to h gcd(a,b)") {
  std::mt19937 rng(7);
  int done = 0;
  for (int rep = 0; rep < 40 && done < 20; ++rep) {
    QPoly a = random_poly(rng, 2, 2, 3);
    QPoly b = random_poly(rng, 2, 2, 3);
    QPoly h = random_poly(rng, 2, 2, 2);
    if (a.is_zero() || b.is_zero() || h.is_zero()) continue;
    QPoly lhs = mv_gcd(a * h, b * h);
    QPoly rhs = normalize_poly(h * mv_gcd(a, b));
    CHECK(lhs == rhs);
    ++done;
  }
  CHECK(done >= 20);
}

TEST_CASE("ff_det agrees with a cofactor oracle up to size 5") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> d(-5, 5);
  for (size_t n = 1; n <= 5; ++n) {
    for (int rep = 0; rep < 30; ++rep) {
      std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n));
      for (auto& row : m)
        for (auto& x : row) x = Rat(d(rng));
      CHECK(ff_det(m) == det_oracle(m));
    }
  }
}

TEST_CASE("ff_det examples: Newton 2x2, identity, singular") {
  // power sums of x^2 + b x + c as symbolic polynomials in (b, c)
  QPoly bb = QPoly::variable(2, 0, Rat(1));
  QPoly cc = QPoly::variable(2, 1, Rat(1));
  QPoly s0 = QPoly::constant(2, Rat(2));
  QPoly s1 = -bb;
  QPoly s2 = bb * bb - scale_rat(cc, Rat(2));
  QPoly disc = ff_det(std::vector<std::vector<QPoly>>{{s0, s1}, {s1, s2}});
  CHECK(disc == bb * bb - scale_rat(cc, Rat(4)));

  std::vector<std::vector<Rat>> id3{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  CHECK(ff_det(id3) == Rat(1));
  std::vector<std::vector<Rat>> sing{{1, 1}, {1, 1}};
  CHECK(ff_det(sing) == Rat(0));
}

TEST_CASE("resultant worked examples") {
  // Res_z(z^2 - t, 2z) = -4t, cross-checked by lc(g)^deg(f) * f(root of g)
  QPoly f(2), g(2);
  f.add_term({0, 2}, Rat(1));
  f.add_term({1, 0}, Rat(-1));
  g.add_term({0, 1}, Rat(2));
  QPoly r = resultant(f, g, 1);
  QPoly expect(2);
  expect.add_term({1, 0}, Rat(-4));
  CHECK(r == expect);
  // product formula: lc(g)^2 * f(0) = 4 * (-t)
  QPoly cross = scale_rat(f.coeff_in(1, 0), Rat(4));
  CHECK(r == cross);

  // Res_z(f, 1) = 1
  QPoly one_p = QPoly::constant(2, Rat(1));
  QPoly r2 = resultant(f, one_p, 1);
  CHECK(r2 == QPoly::constant(2, Rat(1)));

  // Res_z(z - a, z - b) = a - b by the 2x2 Sylvester determinant
  QPoly za(3), zb(3);  // vars (a, b, z)
  za.add_term({0, 0, 1}, Rat(1));
  za.add_term({1, 0, 0}, Rat(-1));
  zb.add_term({0, 0, 1}, Rat(1));
  zb.add_term({0, 1, 0}, Rat(-1));
  QPoly amb(3);
  amb.add_term({1, 0, 0}, Rat(1));
  amb.add_term({0, 1, 0}, Rat(-1));
  CHECK(resultant(za, zb, 2) == amb);

  QPoly zero2(2);
  CHECK_THROWS_AS(resultant(zero2, zero2, 1), Error);
  CHECK(resultant(f, zero2, 1).is_zero());
}

TEST_CASE("resultant vanishes exactly on common factors (random)") {
  std::mt19937 rng(19);
  std::uniform_int_distribution<int> root(-4, 4);
  for (int rep = 0; rep < 100; ++rep) {
    // univariate over Q: f, g products of linear factors
    auto make = [&](int k, QPoly* out) {
      QPoly f = QPoly::constant(1, Rat(1));
      for (int i = 0; i < k; ++i) {
        QPoly lin(1);
        lin.add_term({1}, Rat(1));
        lin.add_term({0}, Rat(root(rng)));
        f = f * lin;
      }
      *out = f;
    };
    QPoly f(1), g(1);
    make(2, &f);
    make(2, &g);
    QPoly res = resultant(f, g, 0);
    QPoly gc = mv_gcd(f, g);
    bool share = !gc.is_constant();
    CHECK(res.is_zero() == share);
  }
}

TEST_CASE("rf_normalize canonical forms") {
  QPoly t = QPoly::variable(1, 0, Rat(1));
  QPoly two = QPoly::constant(1, Rat(2));
  RatFunc a = rf_normalize(scale_rat(t, Rat(2)), two);
  CHECK(a.num() == t);
  CHECK(a.den().is_constant());
  CHECK(a.den().constant_value() == Rat(1));

  RatFunc b = rf_normalize(t * t - QPoly::constant(1, Rat(1)), t - QPoly::constant(1, Rat(1)));
  CHECK(b.num() == t + QPoly::constant(1, Rat(1)));

  QPoly den(1);
  den.add_term({3}, Rat(1));
  den.add_term({0}, Rat(5));
  RatFunc c = rf_normalize(QPoly(1), den);
  CHECK(c.is_zero());

  CHECK_THROWS_AS(rf_normalize(t, QPoly(1)), Error);
}

TEST_CASE("rf_normalize is idempotent and a congruence") {
  std::mt19937 rng(23);
  for (int rep = 0; rep < 60; ++rep) {
    QPoly a = random_poly(rng, 2, 2, 3);
    QPoly b = random_poly(rng, 2, 2, 3);
    QPoly c = random_poly(rng, 2, 2, 2);
    if (b.is_zero() || c.is_zero()) continue;
    RatFunc x(a, b);
    RatFunc y(x.num(), x.den());  // normalize twice
    CHECK(x == y);
    // congruence: normalize(a/b) == normalize(c/d) iff a d == b c
    QPoly a2 = random_poly(rng, 2, 2, 3);
    QPoly b2 = random_poly(rng, 2, 2, 2);
    if (b2.is_zero()) continue;
    RatFunc w(a2, b2);
    CHECK((w == x) == (a2 * b == b2 * a));
    RatFunc z(a * c, b * c);
    CHECK(x == z);
  }
}

TEST_CASE("canonical serialization is deterministic and graded-lex ordered") {
  QPoly f(2);
  f.add_term({1, 1}, Rat(3));
  f.add_term({0, 0}, Rat(-1, 2));
  f.add_term({2, 0}, Rat(1));
  std::string s = to_canonical_string(f, default_names("t", 2));
  CHECK(s == "1/1*t1^2 + 3/1*t1^1*t2^1 + -1/2");
  CHECK(to_canonical_string(QPoly(2), default_names("t", 2)) == "0");
}
