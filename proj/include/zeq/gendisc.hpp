#ifndef ZEQ_GENDISC_HPP
#define ZEQ_GENDISC_HPP

#include <optional>
#include <vector>

#include "zeq/mpoly.hpp"
#include "zeq/upoly.hpp"

namespace zeq {

/// Power sums s_0..s_m of the roots of the monic x^d + b1 x^{d-1} + ... + bd,
/// by Newton's identities; stays in the coefficient ring (no fractions).
template <class R>
std::vector<R> newton_power_sums(const std::vector<R>& b, size_t m, const R& one) {
  size_t d = b.size();
  std::vector<R> s;
  s.reserve(m + 1);
  s.push_back(one * Rat(static_cast<long>(d)));
  for (size_t k = 1; k <= m; ++k) {
    // s_k + b1 s_{k-1} + ... + b_{k-1} s_1 + k b_k = 0       (k <= d)
    // s_k + b1 s_{k-1} + ... + bd s_{k-d} = 0                (k > d)
    std::optional<R> acc;
    size_t top = std::min(k - 1, d);
    for (size_t i = 1; i <= top; ++i) {
      R t = b[i - 1] * s[k - i];
      acc = acc ? *acc + t : t;
    }
    if (k <= d) {
      R t = b[k - 1] * Rat(static_cast<long>(k));
      acc = acc ? *acc + t : t;
    }
    s.push_back(acc ? -*acc : one - one);
  }
  return s;
}

/// Generalized discriminants Delta_1..Delta_d (values[l-1] = Delta_l) and the
/// index of the first nonvanishing one.
template <class R>
struct DiscSeq {
  std::vector<R> values;
  size_t first_nonzero = 0;  // 1-based; 0 means all zero (impossible for monic input)
  const R& first_value() const { return values.at(first_nonzero - 1); }
};

template <class R>
DiscSeq<R> generalized_discriminants_from_coeffs(const std::vector<R>& b, const R& one) {
  size_t d = b.size();
  if (d == 0) fail(errc::not_monic, "degree-zero polynomial has no discriminant sequence");
  std::vector<R> s = newton_power_sums(b, 2 * d >= 2 ? 2 * d - 2 : 0, one);
  std::vector<std::optional<R>> slots(d);
  for (size_t l = 1; l <= d; ++l) {
    std::vector<std::vector<R>> h;
    h.reserve(l);
    for (size_t i = 0; i < l; ++i) {
      std::vector<R> row;
      row.reserve(l);
      for (size_t j = 0; j < l; ++j) row.push_back(s[i + j]);
      h.push_back(std::move(row));
    }
    slots[d - l] = ff_det(std::move(h));  // Delta_{d+1-l}
  }
  DiscSeq<R> out;
  out.values.reserve(d);
  for (size_t k = 0; k < d; ++k) out.values.push_back(std::move(*slots[k]));
  for (size_t k = 0; k < d; ++k)
    if (!is_zero(out.values[k])) {
      out.first_nonzero = k + 1;
      break;
    }
  return out;
}

/// Coefficient list b1..bd of f viewed monic in x_var; NotMonic if the top
/// coefficient is not the ring unit.
template <class C>
std::vector<MPoly<C>> monic_coeff_list(const MPoly<C>& f, uint32_t var, const C& one) {
  int64_t d = f.degree_in(var);
  if (d < 1) fail(errc::not_monic, "expected positive degree in the selected variable");
  MPoly<C> top = f.coeff_in(var, static_cast<uint32_t>(d));
  if (!(top == MPoly<C>::constant(f.nvars(), one)))
    fail(errc::not_monic, "polynomial is not monic in the selected variable");
  std::vector<MPoly<C>> b;
  b.reserve(static_cast<size_t>(d));
  for (int64_t k = d - 1; k >= 0; --k) b.push_back(f.coeff_in(var, static_cast<uint32_t>(k)));
  return b;
}

template <class C>
DiscSeq<MPoly<C>> generalized_discriminants(const MPoly<C>& f, uint32_t var, const C& one) {
  auto b = monic_coeff_list(f, var, one);
  return generalized_discriminants_from_coeffs(b, MPoly<C>::constant(f.nvars(), one));
}

template <class C>
size_t distinct_root_count(const MPoly<C>& f, uint32_t var, const C& one) {
  auto seq = generalized_discriminants(f, var, one);
  if (seq.first_nonzero == 0)
    fail(errc::internal_contradiction, "discriminant sequence of a monic polynomial is entirely zero");
  return seq.values.size() - seq.first_nonzero + 1;
}

// Univariate-over-Q conveniences (CLI and oracle tests).
inline DiscSeq<Rat> generalized_discriminants_q(const Upoly<Rat>& f) {
  if (up_deg(f) < 1) fail(errc::not_monic, "expected positive degree");
  if (!f.back().is_one()) fail(errc::not_monic, "polynomial is not monic");
  std::vector<Rat> b;
  for (int64_t k = up_deg(f) - 1; k >= 0; --k) b.push_back(f[static_cast<size_t>(k)]);
  return generalized_discriminants_from_coeffs(b, Rat(1));
}

inline size_t distinct_root_count_q(const Upoly<Rat>& f) {
  auto seq = generalized_discriminants_q(f);
  if (seq.first_nonzero == 0)
    fail(errc::internal_contradiction, "discriminant sequence of a monic polynomial is entirely zero");
  return seq.values.size() - seq.first_nonzero + 1;
}

}  // namespace zeq

#endif
