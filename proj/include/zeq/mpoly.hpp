#ifndef ZEQ_MPOLY_HPP
#define ZEQ_MPOLY_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "zeq/rat.hpp"

namespace zeq {

using Exp = std::vector<uint32_t>;

inline uint64_t exp_total(const Exp& e) {
  uint64_t t = 0;
  for (uint32_t v : e) t += v;
  return t;
}

/// Graded-lexicographic order on exponent vectors (x1 heaviest within a degree).
struct GrlexLess {
  bool operator()(const Exp& a, const Exp& b) const {
    uint64_t da = exp_total(a), db = exp_total(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

/// Sparse multivariate polynomial over a coefficient type C.
/// C must provide +, -, *, unary -, ==, and is_zero(); stored coefficients
/// are never zero and terms are kept in graded-lex order.
template <class C>
class MPoly {
 public:
  using TermMap = std::map<Exp, C, GrlexLess>;

  MPoly() : nvars_(0) {}
  explicit MPoly(uint32_t nvars) : nvars_(nvars) {}

  static MPoly constant(uint32_t nvars, const C& c) {
    MPoly p(nvars);
    p.add_term(Exp(nvars, 0), c);
    return p;
  }
  static MPoly monomial(uint32_t nvars, Exp e, const C& c) {
    MPoly p(nvars);
    p.add_term(std::move(e), c);
    return p;
  }
  /// x_{var} (0-based) with the given unit coefficient.
  static MPoly variable(uint32_t nvars, uint32_t var, const C& one) {
    Exp e(nvars, 0);
    e.at(var) = 1;
    return monomial(nvars, std::move(e), one);
  }

  uint32_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }

  void add_term(Exp e, const C& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(std::move(e), c);
    } else {
      it->second = it->second + c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// Leading term in graded-lex order; polynomial must be nonzero.
  const std::pair<const Exp, C>& leading() const {
    if (terms_.empty()) fail(errc::internal_contradiction, "leading term of zero polynomial");
    return *terms_.rbegin();
  }

  int64_t total_degree() const {
    return terms_.empty() ? -1 : static_cast<int64_t>(exp_total(terms_.rbegin()->first));
  }
  int64_t degree_in(uint32_t var) const {
    int64_t d = -1;
    for (const auto& [e, c] : terms_) d = std::max<int64_t>(d, e.at(var));
    return d;
  }

  bool is_constant() const { return total_degree() <= 0; }
  /// Constant coefficient (exponent all-zero); polynomial must be a nonzero constant.
  const C& constant_value() const {
    if (terms_.size() != 1 || total_degree() != 0)
      fail(errc::internal_contradiction, "constant_value of nonconstant polynomial");
    return terms_.begin()->second;
  }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    uint64_t d = exp_total(terms_.begin()->first);
    for (const auto& [e, c] : terms_)
      if (exp_total(e) != d) return false;
    return true;
  }

  MPoly operator-() const {
    MPoly r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }
  MPoly operator+(const MPoly& o) const {
    check_vars(o);
    MPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
  }
  MPoly operator-(const MPoly& o) const {
    check_vars(o);
    MPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
  }
  MPoly operator*(const MPoly& o) const {
    check_vars(o);
    MPoly r(nvars_);
    for (const auto& [ea, ca] : terms_)
      for (const auto& [eb, cb] : o.terms_) {
        Exp e(nvars_);
        for (uint32_t k = 0; k < nvars_; ++k) e[k] = ea[k] + eb[k];
        r.add_term(std::move(e), ca * cb);
      }
    return r;
  }
  bool operator==(const MPoly& o) const {
    if (nvars_ != o.nvars_ || terms_.size() != o.terms_.size()) return false;
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    for (; a != terms_.end(); ++a, ++b)
      if (a->first != b->first || !(a->second == b->second)) return false;
    return true;
  }
  bool operator!=(const MPoly& o) const { return !(*this == o); }

  MPoly scaled(const C& c) const {
    MPoly r(nvars_);
    for (const auto& [e, co] : terms_) r.add_term(e, co * c);
    return r;
  }
  MPoly pow(unsigned e) const {
    if (e == 0) fail(errc::internal_contradiction, "MPoly::pow(0) needs a unit context");
    MPoly r = *this;
    for (unsigned k = 1; k < e; ++k) r = r * *this;
    return r;
  }

  /// Coefficient of x_var^k, as a polynomial with the same variable set
  /// (the var exponent is zeroed).
  MPoly coeff_in(uint32_t var, uint32_t k) const {
    MPoly r(nvars_);
    for (const auto& [e, c] : terms_)
      if (e.at(var) == k) {
        Exp e2 = e;
        e2[var] = 0;
        r.add_term(std::move(e2), c);
      }
    return r;
  }
  /// Univariate view in x_var: coefficients c_0..c_deg.
  std::vector<MPoly> coeffs_in(uint32_t var) const {
    int64_t d = degree_in(var);
    std::vector<MPoly> cs;
    for (int64_t k = 0; k <= std::max<int64_t>(d, 0); ++k) cs.push_back(coeff_in(var, static_cast<uint32_t>(k)));
    return cs;
  }
  static MPoly from_coeffs_in(uint32_t nvars, uint32_t var, const std::vector<MPoly>& cs) {
    MPoly r(nvars);
    for (size_t k = 0; k < cs.size(); ++k)
      for (const auto& [e, c] : cs[k].terms()) {
        Exp e2 = e;
        e2.at(var) += static_cast<uint32_t>(k);
        r.add_term(std::move(e2), c);
      }
    return r;
  }

  /// Terms of maximal total degree.
  MPoly leading_form() const {
    MPoly r(nvars_);
    if (terms_.empty()) return r;
    uint64_t d = exp_total(terms_.rbegin()->first);
    for (const auto& [e, c] : terms_)
      if (exp_total(e) == d) r.add_term(e, c);
    return r;
  }

 private:
  void check_vars(const MPoly& o) const {
    if (nvars_ != o.nvars_) fail(errc::internal_contradiction, "MPoly variable-count mismatch");
  }

  uint32_t nvars_;
  TermMap terms_;
};

template <class C>
bool is_zero(const MPoly<C>& p) {
  return p.is_zero();
}

/// Multiply every coefficient by a rational scalar (C must support c * Rat).
template <class C>
MPoly<C> scale_rat(const MPoly<C>& f, const Rat& r) {
  MPoly<C> out(f.nvars());
  if (r.is_zero()) return out;
  for (const auto& [e, c] : f.terms()) out.add_term(e, c * r);
  return out;
}

template <class C>
MPoly<C> operator*(const MPoly<C>& f, const Rat& r) {
  return scale_rat(f, r);
}

/// Reinterpret f over a larger variable set (new variables get exponent 0).
template <class C>
MPoly<C> extend_vars(const MPoly<C>& f, uint32_t new_nvars) {
  if (new_nvars < f.nvars()) fail(errc::internal_contradiction, "extend_vars shrinking");
  if (new_nvars == f.nvars()) return f;
  MPoly<C> r(new_nvars);
  for (const auto& [e, c] : f.terms()) {
    Exp e2 = e;
    e2.resize(new_nvars, 0);
    r.add_term(std::move(e2), c);
  }
  return r;
}

/// Drop variable `var`; f must not involve it.
template <class C>
MPoly<C> drop_var(const MPoly<C>& f, uint32_t var) {
  MPoly<C> r(f.nvars() - 1);
  for (const auto& [e, c] : f.terms()) {
    if (e.at(var) != 0) fail(errc::internal_contradiction, "drop_var of occurring variable");
    Exp e2;
    e2.reserve(e.size() - 1);
    for (uint32_t k = 0; k < e.size(); ++k)
      if (k != var) e2.push_back(e[k]);
    r.add_term(std::move(e2), c);
  }
  return r;
}

/// Substitute x_src <- x_src + mu * x_piv (exact; mu rational).
template <class C>
MPoly<C> subst_var_linear(const MPoly<C>& f, uint32_t src, uint32_t piv, const Rat& mu) {
  if (mu.is_zero()) return f;
  MPoly<C> r(f.nvars());
  for (const auto& [e, c] : f.terms()) {
    uint32_t a = e.at(src);
    if (a == 0) {
      r.add_term(e, c);
      continue;
    }
    // (x_src + mu x_piv)^a expanded with binomial coefficients.
    mpz_class binom = 1;
    Rat mupow(1);
    for (uint32_t k = 0; k <= a; ++k) {
      Exp e2 = e;
      e2[src] = a - k;
      e2[piv] += k;
      Rat coef = Rat(binom) * mupow;
      r.add_term(std::move(e2), c * coef);
      binom = binom * (a - k) / (k + 1);
      mupow = mupow * mu;
    }
  }
  return r;
}

/// Evaluate f at rational points (used for leading forms at (mu,1)).
template <class C>
C eval_at_rats(const MPoly<C>& f, const std::vector<Rat>& pt, const C& zero) {
  C acc = zero;
  for (const auto& [e, c] : f.terms()) {
    Rat m(1);
    for (uint32_t k = 0; k < e.size(); ++k)
      for (uint32_t i = 0; i < e[k]; ++i) m = m * pt.at(k);
    acc = acc + c * m;
  }
  return acc;
}

/// Evaluate f at points of type V (requires V*V, V*C, V+V, V-V).
template <class V, class C>
V eval_mpoly(const MPoly<C>& f, const std::vector<V>& pt, const V& one) {
  std::optional<V> acc;
  for (const auto& [e, c] : f.terms()) {
    V m = one;
    for (uint32_t k = 0; k < e.size(); ++k)
      for (uint32_t i = 0; i < e[k]; ++i) m = m * pt.at(k);
    V term = m * c;
    acc = acc ? *acc + term : term;
  }
  if (acc) return *acc;
  return one - one;
}

/// Exact polynomial division: returns a/b when b divides a exactly.
template <class C>
std::optional<MPoly<C>> try_div_exact(const MPoly<C>& a, const MPoly<C>& b) {
  if (b.is_zero()) return std::nullopt;
  MPoly<C> q(a.nvars());
  MPoly<C> r = a;
  const auto& lb = b.leading();
  while (!r.is_zero()) {
    const auto& lr = r.leading();
    Exp diff(r.nvars());
    for (uint32_t k = 0; k < r.nvars(); ++k) {
      if (lr.first[k] < lb.first[k]) return std::nullopt;
      diff[k] = lr.first[k] - lb.first[k];
    }
    C c = lr.second / lb.second;
    MPoly<C> t = MPoly<C>::monomial(r.nvars(), std::move(diff), c);
    q = q + t;
    r = r - t * b;
  }
  return q;
}

template <class T>
T exact_div(const T& a, const T& b) {
  return a / b;
}
template <class C>
MPoly<C> exact_div(const MPoly<C>& a, const MPoly<C>& b) {
  auto q = try_div_exact(a, b);
  if (!q) fail(errc::internal_contradiction, "inexact division in fraction-free elimination");
  return *q;
}

template <class T>
T det_cofactor(const std::vector<std::vector<T>>& m) {
  size_t n = m.size();
  if (n == 1) return m[0][0];
  // expand along the first row
  std::optional<T> acc;
  for (size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<T>> sub;
    sub.reserve(n - 1);
    for (size_t i = 1; i < n; ++i) {
      std::vector<T> row;
      row.reserve(n - 1);
      for (size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      sub.push_back(std::move(row));
    }
    T term = m[0][j] * det_cofactor(sub);
    if (j % 2 == 1) term = -term;
    acc = acc ? *acc + term : term;
  }
  if (!acc) {
    // whole first row zero: determinant vanishes; synthesize 0 from an entry
    T z = m[0][0] - m[0][0];
    return z;
  }
  return *acc;
}

/// Exact determinant over an integral domain: cofactor expansion for n <= 4,
/// Bareiss fraction-free elimination beyond (all divisions exact).
template <class T>
T ff_det(std::vector<std::vector<T>> m) {
  size_t n = m.size();
  if (n == 0) fail(errc::internal_contradiction, "ff_det of empty matrix");
  for (const auto& row : m)
    if (row.size() != n) fail(errc::internal_contradiction, "ff_det of non-square matrix");
  if (n <= 4) return det_cofactor(m);

  bool negate = false;
  std::optional<T> prev;
  for (size_t k = 0; k + 1 < n; ++k) {
    size_t piv = k;
    while (piv < n && m[piv][k].is_zero()) ++piv;
    if (piv == n) {
      T z = m[0][0] - m[0][0];
      return z;
    }
    if (piv != k) {
      std::swap(m[piv], m[k]);
      negate = !negate;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        T num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        m[i][j] = prev ? exact_div(num, *prev) : num;
      }
      m[i][k] = m[k][k] - m[k][k];  // exact zero of the domain
    }
    prev = m[k][k];
  }
  T d = m[n - 1][n - 1];
  return negate ? -d : d;
}

/// Sylvester resultant of f and g with respect to x_var; the result does not
/// involve x_var.  Res = 0 when exactly one input is zero; both zero is an error.
template <class C>
MPoly<C> resultant(const MPoly<C>& f, const MPoly<C>& g, uint32_t var) {
  if (f.is_zero() && g.is_zero())
    fail(errc::validation_error, "resultant(0,0) undefined");
  if (f.is_zero() || g.is_zero()) return MPoly<C>(f.nvars());
  int64_t m = f.degree_in(var), l = g.degree_in(var);
  if (m == 0 && l == 0) {
    // empty Sylvester block: Res = 1; synthesize from the constants
    C one = f.leading().second / f.leading().second;
    return MPoly<C>::constant(f.nvars(), one);
  }
  auto fc = f.coeffs_in(var);
  auto gc = g.coeffs_in(var);
  size_t n = static_cast<size_t>(m + l);
  MPoly<C> zero(f.nvars());
  std::vector<std::vector<MPoly<C>>> s(n, std::vector<MPoly<C>>(n, zero));
  // l rows of f coefficients (descending), then m rows of g coefficients
  for (size_t r = 0; r < static_cast<size_t>(l); ++r)
    for (size_t j = 0; j <= static_cast<size_t>(m); ++j) s[r][r + j] = fc[static_cast<size_t>(m) - j];
  for (size_t r = 0; r < static_cast<size_t>(m); ++r)
    for (size_t j = 0; j <= static_cast<size_t>(l); ++j) s[l + r][r + j] = gc[static_cast<size_t>(l) - j];
  return ff_det(std::move(s));
}

/// Canonical text form: terms in descending graded-lex order, every term as
/// coeff*var^exp with explicit exponents; the zero polynomial prints as "0".
template <class C>
std::string to_canonical_string(const MPoly<C>& f, const std::vector<std::string>& names) {
  if (f.is_zero()) return "0";
  std::string out;
  const auto& t = f.terms();
  for (auto it = t.rbegin(); it != t.rend(); ++it) {
    if (!out.empty()) out += " + ";
    std::string term = it->second.str();
    for (uint32_t k = 0; k < it->first.size(); ++k)
      if (it->first[k] != 0)
        term += "*" + names.at(k) + "^" + std::to_string(it->first[k]);
    out += term;
  }
  return out;
}

inline std::vector<std::string> default_names(const std::string& stem, uint32_t n) {
  std::vector<std::string> v;
  for (uint32_t i = 1; i <= n; ++i) v.push_back(stem + std::to_string(i));
  return v;
}

}  // namespace zeq

#endif
