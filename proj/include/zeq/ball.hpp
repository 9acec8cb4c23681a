#ifndef ZEQ_BALL_HPP
#define ZEQ_BALL_HPP

#include <string>

#include "zeq/rat.hpp"

namespace zeq {

/// Closed disk |z - center| <= radius with exact rational data.  Real-typed
/// balls (center.im = 0) stand for real intervals and use exact endpoint
/// arithmetic; mixed operations fall back to rigorous disk formulas.
class Ball {
 public:
  Ball() : c_(GaussRat(Rat(0))), r_(0), real_(true) {}
  Ball(GaussRat c, Rat r, bool real_typed)
      : c_(std::move(c)), r_(std::move(r)), real_(real_typed && c_.is_real()) {
    if (r_.sign() < 0) fail(errc::internal_contradiction, "negative ball radius");
  }
  static Ball exact(const GaussRat& v) { return Ball(v, Rat(0), v.is_real()); }
  static Ball real_interval(const Rat& lo, const Rat& hi) {
    if (hi < lo) fail(errc::internal_contradiction, "empty interval");
    Rat c = (lo + hi) * Rat(1, 2);
    Rat r = (hi - lo) * Rat(1, 2);
    return Ball(GaussRat(c), r, true);
  }

  const GaussRat& center() const { return c_; }
  const Rat& radius() const { return r_; }
  bool real_typed() const { return real_; }
  bool is_exact() const { return r_.is_zero(); }
  Rat lo() const { return c_.re() - r_; }
  Rat hi() const { return c_.re() + r_; }

  bool contains_zero() const {
    if (real_) return lo().sign() <= 0 && hi().sign() >= 0;
    return c_.norm2() <= r_ * r_;
  }
  bool excludes_zero() const { return !contains_zero(); }
  bool contains(const GaussRat& p) const { return ((c_ - p).norm2() <= r_ * r_) || contains_real(p); }
  bool overlaps(const Ball& o) const {
    Rat s = r_ + o.r_;
    return (c_ - o.c_).norm2() <= s * s;
  }

  /// Certified |value| bounds over the ball.
  Rat mag_ub() const {
    if (real_) return max(lo().abs(), hi().abs());
    return c_.norm2().sqrt_ub() + r_;
  }
  Rat mag_lb() const {
    if (real_) {
      if (contains_zero()) return Rat(0);
      return min(lo().abs(), hi().abs());
    }
    Rat lb = c_.norm2().sqrt_lb() - r_;
    return lb.sign() > 0 ? lb : Rat(0);
  }

  Ball operator-() const { return Ball(-c_, r_, real_); }
  Ball operator+(const Ball& o) const { return Ball(c_ + o.c_, r_ + o.r_, real_ && o.real_); }
  Ball operator-(const Ball& o) const { return Ball(c_ - o.c_, r_ + o.r_, real_ && o.real_); }

  Ball operator*(const Ball& o) const {
    if (real_ && o.real_) {
      Rat p1 = lo() * o.lo(), p2 = lo() * o.hi(), p3 = hi() * o.lo(), p4 = hi() * o.hi();
      Rat mn = min(min(p1, p2), min(p3, p4));
      Rat mx = max(max(p1, p2), max(p3, p4));
      return real_interval(mn, mx);
    }
    Rat m1 = real_ ? max(lo().abs(), hi().abs()) : c_.norm2().sqrt_ub() + r_;
    Rat m2 = o.real_ ? max(o.lo().abs(), o.hi().abs()) : o.c_.norm2().sqrt_ub() + o.r_;
    // |c1 c2 - z w| <= |c1| r2 + |c2| r1 + r1 r2 with |ci| <= mi
    Rat rad = m1 * o.r_ + m2 * r_ + r_ * o.r_;
    return Ball(c_ * o.c_, rad, false);
  }

  /// Reciprocal; the ball must exclude zero.
  Ball recip() const {
    if (contains_zero()) fail(errc::precision_failure, "reciprocal of ball containing zero");
    if (real_) {
      Rat a = lo(), b = hi();
      return real_interval(b.inv(), a.inv());
    }
    Rat n2 = c_.norm2();
    Rat d = n2 - r_ * r_;  // > 0 since zero excluded
    GaussRat cc = c_.conj();
    return Ball(GaussRat(cc.re() / d, cc.im() / d), r_ / d, false);
  }
  Ball operator/(const Ball& o) const { return *this * o.recip(); }

  Ball operator*(const Rat& s) const {
    if (real_) {
      Rat a = lo() * s, b = hi() * s;
      return s.sign() >= 0 ? real_interval(a, b) : real_interval(b, a);
    }
    return Ball(c_ * s, r_ * s.abs(), false);
  }
  Ball operator*(const GaussRat& s) const { return *this * Ball::exact(s); }
  Ball operator+(const GaussRat& s) const { return Ball(c_ + s, r_, real_ && s.is_real()); }

  Ball pow(unsigned e) const {
    if (e == 0) return Ball::exact(GaussRat(Rat(1)));
    if (real_) {
      Rat a = lo(), b = hi();
      Rat pa = a.pow(e), pb = b.pow(e);
      if (e % 2 == 1) return real_interval(pa, pb);
      if (a.sign() >= 0) return real_interval(pa, pb);
      if (b.sign() <= 0) return real_interval(pb, pa);
      return real_interval(Rat(0), max(pa, pb));
    }
    Ball r = *this;
    for (unsigned k = 1; k < e; ++k) r = r * *this;
    return r;
  }

  /// Forget real typing (used when mixing with genuinely complex data).
  Ball as_complex() const { return Ball(c_, r_, false); }

  std::string str() const { return "[c=" + c_.str() + " r=" + r_.str() + "]"; }

 private:
  bool contains_real(const GaussRat& p) const {
    return real_ && p.is_real() && lo() <= p.re() && p.re() <= hi();
  }

  GaussRat c_;
  Rat r_;
  bool real_;
};

inline Ball operator*(const Rat& s, const Ball& b) { return b * s; }
inline Ball operator*(const GaussRat& s, const Ball& b) { return b * s; }

/// Axis-aligned rectangle with exact rational corners.
struct Box {
  Rat re_lo, re_hi, im_lo, im_hi;

  static Box point(const GaussRat& p) { return {p.re(), p.re(), p.im(), p.im()}; }
  static Box real_segment(const Rat& lo, const Rat& hi) { return {lo, hi, Rat(0), Rat(0)}; }

  bool valid() const { return re_lo <= re_hi && im_lo <= im_hi; }
  bool is_real() const { return im_lo.is_zero() && im_hi.is_zero(); }
  GaussRat center() const {
    return {(re_lo + re_hi) * Rat(1, 2), (im_lo + im_hi) * Rat(1, 2)};
  }
  Rat width() const { return re_hi - re_lo; }
  Rat height() const { return im_hi - im_lo; }

  bool contains(const GaussRat& p) const {
    return re_lo <= p.re() && p.re() <= re_hi && im_lo <= p.im() && p.im() <= im_hi;
  }
  bool contains_box(const Box& o) const {
    return re_lo <= o.re_lo && o.re_hi <= re_hi && im_lo <= o.im_lo && o.im_hi <= im_hi;
  }
  bool intersects(const Box& o) const {
    return !(o.re_lo > re_hi || re_lo > o.re_hi || o.im_lo > im_hi || im_lo > o.im_hi);
  }

  Box inflated(const Rat& s) const { return {re_lo - s, re_hi + s, im_lo - s, im_hi + s}; }

  /// Smallest enclosing ball (real-typed for real segments).
  Ball to_ball() const {
    if (is_real()) return Ball::real_interval(re_lo, re_hi);
    Rat hw = width() * Rat(1, 2), hh = height() * Rat(1, 2);
    Rat rad = (hw * hw + hh * hh).sqrt_ub();
    return Ball(center(), rad, false);
  }

  std::string str() const {
    return re_lo.str() + " " + re_hi.str() + " " + im_lo.str() + " " + im_hi.str();
  }
};

/// Bounding box of a disk.
inline Box ball_to_box(const Ball& b) {
  if (b.real_typed()) return Box::real_segment(b.lo(), b.hi());
  return {b.center().re() - b.radius(), b.center().re() + b.radius(),
          b.center().im() - b.radius(), b.center().im() + b.radius()};
}

/// Coordinate gaps between boxes (0 when the projections overlap).
inline Rat box_gap_re(const Box& a, const Box& b) {
  Rat g = max(b.re_lo - a.re_hi, a.re_lo - b.re_hi);
  return g.sign() > 0 ? g : Rat(0);
}
inline Rat box_gap_im(const Box& a, const Box& b) {
  Rat g = max(b.im_lo - a.im_hi, a.im_lo - b.im_hi);
  return g.sign() > 0 ? g : Rat(0);
}

/// Certified lower bound on the distance between two disjoint boxes.
inline Rat box_dist_lb(const Box& a, const Box& b) {
  Rat gx = box_gap_re(a, b), gy = box_gap_im(a, b);
  return (gx * gx + gy * gy).sqrt_lb();
}

}  // namespace zeq

#endif
