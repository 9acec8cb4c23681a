#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "zeq/gendisc.hpp"
#include "zeq/qpoly.hpp"

using namespace zeq;

namespace {

Upoly<Rat> monic_from_roots(const std::vector<std::pair<Rat, int>>& roots) {
  Upoly<Rat> f{Rat(1)};
  for (const auto& [r, m] : roots)
    for (int k = 0; k < m; ++k) f = up_mul(f, Upoly<Rat>{-r, Rat(1)});
  return f;
}

}  // namespace

TEST_CASE("newton power sums: symbolic d = 2 and d = 1") {
  // ring Q[b1, b2]
  QPoly b1 = QPoly::variable(2, 0, Rat(1));
  QPoly b2 = QPoly::variable(2, 1, Rat(1));
  QPoly one = QPoly::constant(2, Rat(1));
  auto s = newton_power_sums(std::vector<QPoly>{b1, b2}, 2, one);
  CHECK(s[0] == QPoly::constant(2, Rat(2)));
  CHECK(s[1] == -b1);
  CHECK(s[2] == b1 * b1 - scale_rat(b2, Rat(2)));

  auto s1 = newton_power_sums(std::vector<QPoly>{b1}, 1, one);
  CHECK(s1[0] == one);
  CHECK(s1[1] == -b1);
}

TEST_CASE("newton power sums: x^2 - 3x + 2 has sums (2, 3, 5)") {
  auto s = newton_power_sums(std::vector<Rat>{Rat(-3), Rat(2)}, 2, Rat(1));
  CHECK(s[0] == Rat(2));
  CHECK(s[1] == Rat(3));
  CHECK(s[2] == Rat(5));
}

TEST_CASE("newton identity residual vanishes on random coefficients") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> dc(-6, 6);
  for (int rep = 0; rep < 50; ++rep) {
    size_t d = 1 + static_cast<size_t>(rep % 6);
    std::vector<Rat> b;
    for (size_t k = 0; k < d; ++k) b.push_back(Rat(dc(rng)));
    auto s = newton_power_sums(b, d, Rat(1));
    for (size_t k = 1; k <= d; ++k) {
      Rat res = s[k];
      for (size_t i = 1; i < k; ++i) res = res + b[i - 1] * s[k - i];
      res = res + b[k - 1] * Rat(static_cast<long>(k));
      CHECK(res.is_zero());
    }
  }
}

TEST_CASE("generalized discriminants: worked examples") {
  // x^2 + b x + c -> (b^2 - 4c, 2)
  QPoly b = QPoly::variable(2, 0, Rat(1));
  QPoly c = QPoly::variable(2, 1, Rat(1));
  QPoly one = QPoly::constant(2, Rat(1));
  auto seq = generalized_discriminants_from_coeffs(std::vector<QPoly>{b, c}, one);
  CHECK(seq.values[0] == b * b - scale_rat(c, Rat(4)));
  CHECK(seq.values[1] == QPoly::constant(2, Rat(2)));
  CHECK(seq.first_nonzero == 1);

  // (x-1)^2 -> (0, 2)
  auto seq2 = generalized_discriminants_q(Upoly<Rat>{Rat(1), Rat(-2), Rat(1)});
  CHECK(seq2.values[0].is_zero());
  CHECK(seq2.values[1] == Rat(2));
  CHECK(seq2.first_nonzero == 2);

  // x^3 -> (0, 0, 3)
  auto seq3 = generalized_discriminants_q(Upoly<Rat>{Rat(0), Rat(0), Rat(0), Rat(1)});
  CHECK(seq3.values[0].is_zero());
  CHECK(seq3.values[1].is_zero());
  CHECK(seq3.values[2] == Rat(3));
  CHECK(seq3.first_nonzero == 3);
}

TEST_CASE("distinct root counts") {
  CHECK(distinct_root_count_q(Upoly<Rat>{Rat(2), Rat(-3), Rat(1)}) == 2);
  CHECK(distinct_root_count_q(Upoly<Rat>{Rat(1), Rat(-2), Rat(1)}) == 1);
  for (int d = 1; d <= 5; ++d) {
    Upoly<Rat> xd(static_cast<size_t>(d) + 1, Rat(0));
    xd.back() = Rat(1);
    CHECK(distinct_root_count_q(xd) == 1);
  }
  CHECK_THROWS_AS(generalized_discriminants_q(Upoly<Rat>{Rat(2), Rat(2)}), Error);  // not monic
}

TEST_CASE("Delta_1 equals the signed resultant of f and f'") {
  std::mt19937 rng(13);
  std::uniform_int_distribution<int> dc(-5, 5);
  for (int rep = 0; rep < 120; ++rep) {
    size_t d = 2 + static_cast<size_t>(rep % 5);  // degrees 2..6
    Upoly<Rat> f(d + 1, Rat(0));
    f.back() = Rat(1);
    for (size_t k = 0; k < d; ++k) f[k] = Rat(dc(rng));
    auto seq = generalized_discriminants_q(f);
    // resultant via the Sylvester determinant on the univariate view
    QPoly fp(1), fq(1);
    for (size_t k = 0; k < f.size(); ++k) fp.add_term({static_cast<uint32_t>(k)}, f[k]);
    for (size_t k = 1; k < f.size(); ++k)
      fq.add_term({static_cast<uint32_t>(k - 1)}, f[k] * Rat(static_cast<long>(k)));
    QPoly res = resultant(fp, fq, 0);
    Rat rv = res.is_zero() ? Rat(0) : res.constant_value();
    long sign_exp = static_cast<long>(d * (d - 1) / 2);
    Rat expected = (sign_exp % 2 == 0) ? rv : -rv;
    CHECK(seq.values[0] == expected);
  }
}

TEST_CASE("brute-force oracle: 200 random products of linear powers") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> droot(-3, 3);
  std::uniform_int_distribution<int> dmult(1, 2);
  std::uniform_int_distribution<int> dcount(1, 3);
  for (int rep = 0; rep < 200; ++rep) {
    int k = dcount(rng);
    std::vector<std::pair<Rat, int>> roots;
    std::set<std::string> distinct;
    size_t total = 0;
    for (int i = 0; i < k && total <= 5; ++i) {
      Rat r(droot(rng));
      int m = dmult(rng);
      if (total + static_cast<size_t>(m) > 6) m = 1;
      roots.emplace_back(r, m);
      distinct.insert(r.str());
      total += static_cast<size_t>(m);
    }
    Upoly<Rat> f = monic_from_roots(roots);
    CHECK(distinct_root_count_q(f) == distinct.size());
  }
}

TEST_CASE("homogeneity: discriminants of dehomogenized forms") {
  // f = (x + y)(x + 2y)(x + 3y), monic in x with b_j homogeneous of degree j
  QPoly x = QPoly::variable(2, 0, Rat(1));
  QPoly y = QPoly::variable(2, 1, Rat(1));
  QPoly f = (x + y) * (x + scale_rat(y, Rat(2))) * (x + scale_rat(y, Rat(3)));
  auto seq = generalized_discriminants(f, 0, Rat(1));
  size_t d = seq.values.size();
  REQUIRE(d == 3);
  for (size_t l = 1; l <= d; ++l) {
    const QPoly& v = seq.values[d - l];  // Delta_{d+1-l}
    if (v.is_zero()) continue;
    CHECK(v.is_homogeneous());
    CHECK(v.total_degree() == static_cast<int64_t>(l * (l - 1)));
  }
  // and a squarefree product of distinct linear forms has l = 1
  CHECK(seq.first_nonzero == 1);
}
