#ifndef ZEQ_QPOLY_HPP
#define ZEQ_QPOLY_HPP

#include <vector>

#include "zeq/mpoly.hpp"

namespace zeq {

// Polynomials over Q: integer normalization, contents, and the multivariate
// gcd used for rational-function canonical forms.  The gcd is content/
// primitive-part recursion with a subresultant PRS in the top variable.

using QPoly = MPoly<Rat>;

inline mpz_class lcm_denominators(const QPoly& f) {
  mpz_class l = 1;
  for (const auto& [e, c] : f.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.den().get_mpz_t());
  return l;
}

/// f scaled to integer coefficients (sign preserved).
inline QPoly make_integer(const QPoly& f) {
  mpz_class l = lcm_denominators(f);
  if (l == 1) return f;
  return scale_rat(f, Rat(l));
}

/// gcd of the (integer) coefficients; f must have integer coefficients.
inline mpz_class int_content(const QPoly& f) {
  mpz_class g = 0;
  for (const auto& [e, c] : f.terms()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.num().get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

/// Primitive integer form, sign preserved.
inline QPoly pp_int(const QPoly& f) {
  if (f.is_zero()) return f;
  QPoly g = make_integer(f);
  mpz_class c = int_content(g);
  if (c == 1) return g;
  return scale_rat(g, Rat(mpq_class(mpz_class(1), c)));
}

/// Canonical associate: primitive integer coefficients, positive leading
/// (graded-lex) coefficient.
inline QPoly normalize_poly(const QPoly& f) {
  if (f.is_zero()) return f;
  QPoly g = pp_int(f);
  if (g.leading().second.sign() < 0) g = -g;
  return g;
}

/// Pseudo-remainder of F by G in variable v: lc_v(G)^(deg F - deg G + 1) * F = Q*G + R.
inline QPoly prem(const QPoly& F, const QPoly& G, uint32_t v) {
  int64_t d = G.degree_in(v);
  if (d < 0) fail(errc::internal_contradiction, "prem by zero");
  QPoly l = G.coeff_in(v, static_cast<uint32_t>(d));
  QPoly r = F;
  int64_t e = F.degree_in(v) - d + 1;
  while (!r.is_zero() && r.degree_in(v) >= d) {
    int64_t dr = r.degree_in(v);
    QPoly lr = r.coeff_in(v, static_cast<uint32_t>(dr));
    QPoly shift = QPoly::variable(F.nvars(), v, Rat(1));
    QPoly xk = QPoly::constant(F.nvars(), Rat(1));
    for (int64_t i = 0; i < dr - d; ++i) xk = xk * shift;
    r = l * r - lr * xk * G;
    --e;
  }
  for (int64_t i = 0; i < e; ++i) r = l * r;
  return r;
}

namespace detail {

inline QPoly gcd_integer_poly(const QPoly& a, const QPoly& b);

inline QPoly pp_int_signless(const QPoly& f) {
  QPoly g = pp_int(f);
  if (!g.is_zero() && g.leading().second.sign() < 0) g = -g;
  return g;
}

/// Content of F with respect to variable v: gcd of the coefficient polynomials.
inline QPoly content_v(const QPoly& F, uint32_t v) {
  QPoly g(F.nvars());
  int64_t d = F.degree_in(v);
  for (int64_t k = d; k >= 0; --k) {
    QPoly c = F.coeff_in(v, static_cast<uint32_t>(k));
    if (c.is_zero()) continue;
    g = g.is_zero() ? pp_int_signless(c) : gcd_integer_poly(g, c);
    if (!g.is_zero() && g.is_constant() && g.constant_value().is_one()) break;
  }
  return g;
}

/// gcd of two nonzero integer-coefficient polynomials, positive-primitive result.
inline QPoly gcd_integer_poly(const QPoly& a, const QPoly& b) {
  uint32_t nv = a.nvars();
  int main_var = -1;
  for (int k = static_cast<int>(nv) - 1; k >= 0; --k)
    if (a.degree_in(static_cast<uint32_t>(k)) > 0 || b.degree_in(static_cast<uint32_t>(k)) > 0) {
      main_var = k;
      break;
    }
  if (main_var < 0) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.constant_value().num().get_mpz_t(), b.constant_value().num().get_mpz_t());
    return QPoly::constant(nv, Rat(g));
  }
  uint32_t v = static_cast<uint32_t>(main_var);

  QPoly ca = content_v(a, v), cb = content_v(b, v);
  QPoly cg = gcd_integer_poly(ca, cb);
  QPoly F = exact_div(a, ca), G = exact_div(b, cb);
  if (F.degree_in(v) < G.degree_in(v)) std::swap(F, G);
  if (G.degree_in(v) == 0) {
    // G is v-free after content removal, hence a unit wrt v
    return cg;
  }

  // subresultant PRS
  QPoly one = QPoly::constant(nv, Rat(1));
  QPoly g = one, h = one;
  QPoly result(nv);
  while (true) {
    int64_t delta = F.degree_in(v) - G.degree_in(v);
    QPoly R = prem(F, G, v);
    if (R.is_zero()) {
      result = exact_div(G, content_v(G, v));
      break;
    }
    if (R.degree_in(v) == 0) {
      result = one;
      break;
    }
    QPoly divisor = g;
    for (int64_t i = 0; i < delta; ++i) divisor = divisor * h;
    F = G;
    G = exact_div(R, divisor);
    g = F.coeff_in(v, static_cast<uint32_t>(F.degree_in(v)));
    if (delta >= 1) {
      QPoly num = g;
      for (int64_t i = 1; i < delta; ++i) num = num * g;
      QPoly den = one;
      for (int64_t i = 1; i < delta; ++i) den = den * h;
      h = delta == 1 ? g : exact_div(num, den);
    }
  }
  QPoly res = cg * pp_int_signless(result);
  return pp_int_signless(res);
}

}  // namespace detail

/// Greatest common divisor over Q[x1..xn], normalized to primitive integer
/// coefficients with positive leading coefficient.  mv_gcd(0,0) = 0.
inline QPoly mv_gcd(const QPoly& a, const QPoly& b) {
  if (a.is_zero() && b.is_zero()) return QPoly(a.nvars());
  if (a.is_zero()) return normalize_poly(b);
  if (b.is_zero()) return normalize_poly(a);
  QPoly g = detail::gcd_integer_poly(pp_int(a), pp_int(b));
  return normalize_poly(g);
}

}  // namespace zeq

#endif
