#ifndef ZEQ_RATFUNC_HPP
#define ZEQ_RATFUNC_HPP

#include <string>
#include <utility>

#include "zeq/qpoly.hpp"

namespace zeq {

/// Rational function num/den over Q[t1..tr] in canonical form: den != 0,
/// gcd(num,den) = 1, den primitive integer with positive leading coefficient.
/// Constants are stored with zero variables so they mix with any arity;
/// binary operations align variable counts by extension.
class RatFunc {
 public:
  RatFunc() : num_(0), den_(QPoly::constant(0, Rat(1))) {}
  explicit RatFunc(const Rat& c)
      : num_(c.is_zero() ? QPoly(0) : QPoly::constant(0, c)), den_(QPoly::constant(0, Rat(1))) {}
  RatFunc(QPoly num, QPoly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }
  explicit RatFunc(QPoly num) : num_(std::move(num)), den_(QPoly::constant(num_.nvars(), Rat(1))) {
    normalize();
  }

  /// t_i (0-based) as a rational function in nvars variables.
  static RatFunc var(uint32_t nvars, uint32_t i) {
    return RatFunc(QPoly::variable(nvars, i, Rat(1)));
  }

  const QPoly& num() const { return num_; }
  const QPoly& den() const { return den_; }
  uint32_t nvars() const { return num_.nvars(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_ == den_; }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  /// Value of a constant rational function.
  Rat constant_value() const {
    if (!is_constant()) fail(errc::internal_contradiction, "RatFunc::constant_value of nonconstant");
    if (num_.is_zero()) return Rat(0);
    return num_.constant_value() / den_.constant_value();
  }

  RatFunc operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
  }
  RatFunc operator+(const RatFunc& o) const {
    auto [a, b] = aligned(*this, o);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  RatFunc operator-(const RatFunc& o) const { return *this + (-o); }
  RatFunc operator*(const RatFunc& o) const {
    auto [a, b] = aligned(*this, o);
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  RatFunc operator/(const RatFunc& o) const {
    if (o.is_zero()) fail(errc::division_by_zero, "RatFunc division by zero");
    auto [a, b] = aligned(*this, o);
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
  }
  RatFunc operator*(const Rat& c) const {
    RatFunc r = *this;
    r.num_ = scale_rat(r.num_, c);
    r.normalize();
    return r;
  }
  RatFunc inv() const { return RatFunc(Rat(1)) / *this; }

  bool operator==(const RatFunc& o) const {
    auto [a, b] = aligned(*this, o);
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  /// Canonical text "(num)/(den)" with t1..tr variable names.
  std::string str() const {
    return "(" + to_canonical_string(num_, default_names("t", nvars())) + ")/(" +
           to_canonical_string(den_, default_names("t", nvars())) + ")";
  }

  RatFunc extended(uint32_t new_nvars) const {
    if (new_nvars == nvars()) return *this;
    RatFunc r = *this;
    r.num_ = extend_vars(r.num_, new_nvars);
    r.den_ = extend_vars(r.den_, new_nvars);
    return r;
  }

 private:
  static std::pair<RatFunc, RatFunc> aligned(const RatFunc& a, const RatFunc& b) {
    uint32_t nv = std::max(a.nvars(), b.nvars());
    return {a.extended(nv), b.extended(nv)};
  }

  void normalize() {
    if (den_.nvars() != num_.nvars()) {
      uint32_t nv = std::max(den_.nvars(), num_.nvars());
      num_ = extend_vars(num_, nv);
      den_ = extend_vars(den_, nv);
    }
    if (den_.is_zero()) fail(errc::zero_denominator, "rational function with zero denominator");
    if (num_.is_zero()) {
      num_ = QPoly(0);
      den_ = QPoly::constant(0, Rat(1));
      return;
    }
    QPoly g = mv_gcd(num_, den_);
    if (!(g.is_constant() && g.constant_value().is_one())) {
      num_ = exact_div(num_, g);
      den_ = exact_div(den_, g);
    }
    // pin the representative: den integer-primitive with positive leading coeff
    QPoly den_canon = normalize_poly(den_);
    // multiplier m with den * m = den_canon, a rational constant
    Rat m = den_canon.leading().second / den_.leading().second;
    num_ = scale_rat(num_, m);
    den_ = std::move(den_canon);
    // constants collapse to arity 0
    if (num_.is_constant() && den_.is_constant() && nvars() != 0) {
      Rat v = num_.constant_value() / den_.constant_value();
      num_ = QPoly::constant(0, v);
      den_ = QPoly::constant(0, Rat(1));
      if (v.is_zero()) num_ = QPoly(0);
    }
  }

  QPoly num_, den_;
};

inline RatFunc operator*(const Rat& c, const RatFunc& f) { return f * c; }
inline bool is_zero(const RatFunc& f) { return f.is_zero(); }

/// rf_normalize: canonical rational function from a fraction of polynomials.
inline RatFunc rf_normalize(const QPoly& num, const QPoly& den) { return RatFunc(num, den); }

}  // namespace zeq

#endif
