#ifndef ZEQ_RAT_HPP
#define ZEQ_RAT_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>

#include "zeq/error.hpp"

namespace zeq {

/// Arbitrary-precision rational in canonical form: gcd(|num|,den)=1, den>0.
/// All arithmetic is exact; serialization is always "num/den" in base 10.
class Rat {
 public:
  Rat() : v_(0) {}
  Rat(long n) : v_(n) {}  // NOLINT: implicit on purpose, mirrors integer literals
  Rat(long n, long d) : v_(n, d) {
    if (d == 0) fail(errc::zero_denominator, "Rat(n,0)");
    v_.canonicalize();
  }
  explicit Rat(const mpz_class& z) : v_(z) {}
  explicit Rat(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }

  static Rat from_string(const std::string& s);

  const mpq_class& mpq() const { return v_; }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  Rat operator-() const { return Rat(mpq_class(-v_)); }
  Rat operator+(const Rat& o) const { return Rat(mpq_class(v_ + o.v_)); }
  Rat operator-(const Rat& o) const { return Rat(mpq_class(v_ - o.v_)); }
  Rat operator*(const Rat& o) const { return Rat(mpq_class(v_ * o.v_)); }
  Rat operator/(const Rat& o) const {
    if (o.is_zero()) fail(errc::division_by_zero, "Rat division by zero");
    return Rat(mpq_class(v_ / o.v_));
  }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }

  bool operator==(const Rat& o) const { return v_ == o.v_; }
  bool operator!=(const Rat& o) const { return v_ != o.v_; }
  bool operator<(const Rat& o) const { return v_ < o.v_; }
  bool operator<=(const Rat& o) const { return v_ <= o.v_; }
  bool operator>(const Rat& o) const { return v_ > o.v_; }
  bool operator>=(const Rat& o) const { return v_ >= o.v_; }

  Rat abs() const { return Rat(mpq_class(::abs(v_))); }
  Rat inv() const {
    if (is_zero()) fail(errc::division_by_zero, "Rat::inv of zero");
    return Rat(mpq_class(1 / v_));
  }
  Rat pow(unsigned long e) const {
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), e);
    mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), e);
    mpq_class r(n, d);
    return Rat(std::move(r));
  }

  /// 2^e for possibly negative e.
  static Rat pow2(long e) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
    if (e >= 0) return Rat(p);
    return Rat(mpq_class(mpz_class(1), p));
  }

  /// Certified bounds for sqrt(*this), within 2^-prec_bits.  Requires *this >= 0.
  Rat sqrt_lb(unsigned prec_bits = 64) const;
  Rat sqrt_ub(unsigned prec_bits = 64) const;

  std::string str() const {
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }
  double to_double() const { return v_.get_d(); }  // diagnostics only

 private:
  mpq_class v_;
};

inline Rat Rat::from_string(const std::string& s) {
  std::string t = s;
  if (t.empty()) fail(errc::parse_error, "empty rational");
  size_t slash = t.find('/');
  try {
    if (slash == std::string::npos) {
      mpq_class q(t, 10);
      q.canonicalize();
      return Rat(std::move(q));
    }
    mpz_class n(t.substr(0, slash), 10), d(t.substr(slash + 1), 10);
    if (sgn(d) == 0) fail(errc::zero_denominator, "rational literal with zero denominator");
    mpq_class q(n, d);
    q.canonicalize();
    return Rat(std::move(q));
  } catch (const std::invalid_argument&) {
    fail(errc::parse_error, "bad rational literal: " + s);
  }
}

inline Rat Rat::sqrt_lb(unsigned prec_bits) const {
  if (sign() < 0) fail(errc::validation_error, "sqrt of negative rational");
  if (is_zero()) return Rat(0);
  // sqrt(p/q) = sqrt(p*q*4^m) / (q*2^m); floor square root gives the lower bound.
  mpz_class pq = num() * den();
  mpz_class scaled;
  mpz_mul_2exp(scaled.get_mpz_t(), pq.get_mpz_t(), 2 * prec_bits);
  mpz_class s;
  mpz_sqrt(s.get_mpz_t(), scaled.get_mpz_t());
  mpz_class d;
  mpz_mul_2exp(d.get_mpz_t(), den().get_mpz_t(), prec_bits);
  return Rat(mpq_class(s, d));
}

inline Rat Rat::sqrt_ub(unsigned prec_bits) const {
  if (sign() < 0) fail(errc::validation_error, "sqrt of negative rational");
  if (is_zero()) return Rat(0);
  mpz_class pq = num() * den();
  mpz_class scaled;
  mpz_mul_2exp(scaled.get_mpz_t(), pq.get_mpz_t(), 2 * prec_bits);
  mpz_class s, rem;
  mpz_sqrtrem(s.get_mpz_t(), rem.get_mpz_t(), scaled.get_mpz_t());
  if (sgn(rem) != 0) s += 1;
  mpz_class d;
  mpz_mul_2exp(d.get_mpz_t(), den().get_mpz_t(), prec_bits);
  return Rat(mpq_class(s, d));
}

inline Rat operator*(const Rat& a, long b) { return a * Rat(b); }
inline Rat operator*(long a, const Rat& b) { return Rat(a) * b; }
inline Rat min(const Rat& a, const Rat& b) { return a <= b ? a : b; }
inline Rat max(const Rat& a, const Rat& b) { return a >= b ? a : b; }
inline bool is_zero(const Rat& a) { return a.is_zero(); }

/// Gaussian rational a+bi with exact component arithmetic.
class GaussRat {
 public:
  GaussRat() = default;
  GaussRat(Rat re) : re_(std::move(re)) {}  // NOLINT
  GaussRat(long n) : re_(n) {}              // NOLINT
  GaussRat(Rat re, Rat im) : re_(std::move(re)), im_(std::move(im)) {}

  const Rat& re() const { return re_; }
  const Rat& im() const { return im_; }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_one() const { return re_.is_one() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }

  GaussRat conj() const { return {re_, -im_}; }
  Rat norm2() const { return re_ * re_ + im_ * im_; }

  GaussRat operator-() const { return {-re_, -im_}; }
  GaussRat operator+(const GaussRat& o) const { return {re_ + o.re_, im_ + o.im_}; }
  GaussRat operator-(const GaussRat& o) const { return {re_ - o.re_, im_ - o.im_}; }
  GaussRat operator*(const GaussRat& o) const {
    return {re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_};
  }
  GaussRat operator/(const GaussRat& o) const {
    Rat n2 = o.norm2();
    if (n2.is_zero()) fail(errc::division_by_zero, "GaussRat division by zero");
    GaussRat p = *this * o.conj();
    return {p.re_ / n2, p.im_ / n2};
  }
  GaussRat inv() const { return GaussRat(Rat(1)) / *this; }

  bool operator==(const GaussRat& o) const { return re_ == o.re_ && im_ == o.im_; }
  bool operator!=(const GaussRat& o) const { return !(*this == o); }

  /// Canonical text: real values print as bare rationals, others as "(re,im)".
  std::string str() const {
    if (im_.is_zero()) return re_.str();
    return "(" + re_.str() + "," + im_.str() + ")";
  }
  static GaussRat from_string(const std::string& s);

 private:
  Rat re_, im_;
};

inline GaussRat GaussRat::from_string(const std::string& s) {
  if (!s.empty() && s.front() == '(') {
    if (s.back() != ')') fail(errc::parse_error, "bad GaussRat literal: " + s);
    size_t comma = s.find(',');
    if (comma == std::string::npos) fail(errc::parse_error, "bad GaussRat literal: " + s);
    return {Rat::from_string(s.substr(1, comma - 1)),
            Rat::from_string(s.substr(comma + 1, s.size() - comma - 2))};
  }
  return {Rat::from_string(s)};
}

inline GaussRat operator*(const GaussRat& a, const Rat& b) { return a * GaussRat(b); }
inline GaussRat operator*(const Rat& a, const GaussRat& b) { return GaussRat(a) * b; }
inline bool is_zero(const GaussRat& a) { return a.is_zero(); }

}  // namespace zeq

#endif
