#ifndef ZEQ_UPOLY_HPP
#define ZEQ_UPOLY_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zeq/rat.hpp"

namespace zeq {

// Dense univariate polynomials over a coefficient field: coeffs[k] is the
// coefficient of x^k, with no trailing zeros (the zero polynomial is empty).

template <class C>
using Upoly = std::vector<C>;

template <class C>
void up_trim(Upoly<C>& f) {
  while (!f.empty() && f.back().is_zero()) f.pop_back();
}

template <class C>
int64_t up_deg(const Upoly<C>& f) {
  return static_cast<int64_t>(f.size()) - 1;
}

template <class C>
bool up_is_zero(const Upoly<C>& f) {
  return f.empty();
}

template <class C>
Upoly<C> up_add(const Upoly<C>& a, const Upoly<C>& b) {
  Upoly<C> r = a.size() >= b.size() ? a : b;
  const Upoly<C>& s = a.size() >= b.size() ? b : a;
  for (size_t i = 0; i < s.size(); ++i) r[i] = r[i] + s[i];
  up_trim(r);
  return r;
}

template <class C>
Upoly<C> up_neg(const Upoly<C>& a) {
  Upoly<C> r = a;
  for (auto& c : r) c = -c;
  return r;
}

template <class C>
Upoly<C> up_sub(const Upoly<C>& a, const Upoly<C>& b) {
  return up_add(a, up_neg(b));
}

template <class C>
Upoly<C> up_mul(const Upoly<C>& a, const Upoly<C>& b) {
  if (a.empty() || b.empty()) return {};
  Upoly<C> r;
  r.reserve(a.size() + b.size() - 1);
  for (size_t k = 0; k + 1 < a.size() + b.size(); ++k) {
    std::optional<C> acc;
    for (size_t i = 0; i < a.size(); ++i) {
      if (k < i || k - i >= b.size()) continue;
      C t = a[i] * b[k - i];
      acc = acc ? *acc + t : t;
    }
    r.push_back(acc ? *acc : a[0] - a[0]);
  }
  up_trim(r);
  return r;
}

template <class C>
Upoly<C> up_scale(const Upoly<C>& a, const C& c) {
  Upoly<C> r;
  r.reserve(a.size());
  for (const auto& x : a) r.push_back(x * c);
  up_trim(r);
  return r;
}

/// Division with remainder; lc(b) must be invertible (field coefficients).
template <class C>
std::pair<Upoly<C>, Upoly<C>> up_divrem(const Upoly<C>& a, const Upoly<C>& b) {
  if (b.empty()) fail(errc::division_by_zero, "univariate division by zero");
  Upoly<C> r = a;
  Upoly<C> q;
  if (a.size() < b.size()) return {q, r};
  C lb_inv = b.back() / (b.back() * b.back());  // 1/lc
  q.assign(a.size() - b.size() + 1, b.back() - b.back());
  while (!r.empty() && r.size() >= b.size()) {
    C c = r.back() * lb_inv;
    size_t shift = r.size() - b.size();
    q[shift] = q[shift] + c;
    for (size_t i = 0; i < b.size(); ++i) r[shift + i] = r[shift + i] - c * b[i];
    up_trim(r);
  }
  up_trim(q);
  return {q, r};
}

template <class C>
Upoly<C> up_mod(const Upoly<C>& a, const Upoly<C>& b) {
  return up_divrem(a, b).second;
}

template <class C>
Upoly<C> up_make_monic(const Upoly<C>& a) {
  if (a.empty()) fail(errc::division_by_zero, "monic form of zero polynomial");
  C inv = a.back() / (a.back() * a.back());
  return up_scale(a, inv);
}

template <class C>
bool up_is_monic(const Upoly<C>& a) {
  return !a.empty() && a.back().is_one();
}

template <class C>
Upoly<C> up_derivative(const Upoly<C>& a) {
  Upoly<C> r;
  for (size_t k = 1; k < a.size(); ++k) r.push_back(a[k] * Rat(static_cast<long>(k)));
  up_trim(r);
  return r;
}

/// Monic gcd over a field.
template <class C>
Upoly<C> up_gcd(Upoly<C> a, Upoly<C> b) {
  up_trim(a);
  up_trim(b);
  while (!b.empty()) {
    Upoly<C> r = up_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.empty()) return a;
  return up_make_monic(a);
}

/// Extended gcd: returns (g, u, v) with g = u*a + v*b monic.
template <class C>
std::tuple<Upoly<C>, Upoly<C>, Upoly<C>> up_ext_gcd(const Upoly<C>& a, const Upoly<C>& b) {
  Upoly<C> r0 = a, r1 = b;
  up_trim(r0);
  up_trim(r1);
  if (r0.empty() && r1.empty()) fail(errc::division_by_zero, "ext_gcd(0,0)");
  C one = !r0.empty() ? r0.back() / r0.back() : r1.back() / r1.back();
  Upoly<C> u0{one}, u1{}, v0{}, v1{one};
  while (!r1.empty()) {
    auto [q, r2] = up_divrem(r0, r1);
    Upoly<C> u2 = up_sub(u0, up_mul(q, u1));
    Upoly<C> v2 = up_sub(v0, up_mul(q, v1));
    r0 = std::move(r1);
    r1 = std::move(r2);
    u0 = std::move(u1);
    u1 = std::move(u2);
    v0 = std::move(v1);
    v1 = std::move(v2);
  }
  C lc = r0.back();
  C inv = lc / (lc * lc);
  return {up_scale(r0, inv), up_scale(u0, inv), up_scale(v0, inv)};
}

template <class C, class V>
V up_eval(const Upoly<C>& f, const V& x, const V& one) {
  // Horner; empty polynomial evaluates to 0 = one - one
  if (f.empty()) return one - one;
  V acc = one * f.back();
  for (size_t k = f.size() - 1; k-- > 0;) acc = acc * x + one * f[k];
  return acc;
}

template <class C>
std::string up_str(const Upoly<C>& f, const std::string& var) {
  if (f.empty()) return "0";
  std::string out;
  for (size_t k = f.size(); k-- > 0;) {
    if (f[k].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += f[k].str();
    if (k > 0) out += "*" + var + "^" + std::to_string(k);
  }
  return out;
}

}  // namespace zeq

#endif
