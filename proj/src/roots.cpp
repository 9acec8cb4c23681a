#include "zeq/roots.hpp"

#include <mpfr.h>

#include <algorithm>

#include "zeq/error.hpp"

namespace zeq {

Rat sqrt_lb_positive(const Rat& s) {
  if (s.sign() <= 0) fail(errc::internal_contradiction, "sqrt_lb_positive of nonpositive value");
  for (unsigned p = 64;; p *= 2) {
    Rat r = s.sqrt_lb(p);
    if (r.sign() > 0) return r;
    if (p > (1u << 22)) fail(errc::precision_failure, "sqrt lower bound underflow");
  }
}

namespace {

// ---------------------------------------------------------------------------
// Complex arithmetic on mpfr pairs; only used to produce root approximations,
// all certification below is exact rational.

struct CF {
  mpfr_t re, im;

  explicit CF(mpfr_prec_t p) {
    mpfr_init2(re, p);
    mpfr_init2(im, p);
    mpfr_set_ui(re, 0, MPFR_RNDN);
    mpfr_set_ui(im, 0, MPFR_RNDN);
  }
  CF(const CF& o) {
    mpfr_init2(re, mpfr_get_prec(o.re));
    mpfr_init2(im, mpfr_get_prec(o.im));
    mpfr_set(re, o.re, MPFR_RNDN);
    mpfr_set(im, o.im, MPFR_RNDN);
  }
  CF& operator=(const CF& o) {
    if (this != &o) {
      mpfr_set_prec(re, mpfr_get_prec(o.re));
      mpfr_set_prec(im, mpfr_get_prec(o.im));
      mpfr_set(re, o.re, MPFR_RNDN);
      mpfr_set(im, o.im, MPFR_RNDN);
    }
    return *this;
  }
  ~CF() {
    mpfr_clear(re);
    mpfr_clear(im);
  }

  mpfr_prec_t prec() const { return mpfr_get_prec(re); }
  bool is_zero() const { return mpfr_zero_p(re) && mpfr_zero_p(im); }

  static CF from(const GaussRat& v, mpfr_prec_t p) {
    CF c(p);
    mpfr_set_q(c.re, v.re().mpq().get_mpq_t(), MPFR_RNDN);
    mpfr_set_q(c.im, v.im().mpq().get_mpq_t(), MPFR_RNDN);
    return c;
  }
  GaussRat to_gauss() const {
    if (!mpfr_number_p(re) || !mpfr_number_p(im))
      fail(errc::precision_failure, "non-finite value in root approximation");
    mpq_class qr, qi;
    mpfr_get_q(qr.get_mpq_t(), re);
    mpfr_get_q(qi.get_mpq_t(), im);
    return {Rat(std::move(qr)), Rat(std::move(qi))};
  }
};

CF cf_add(const CF& a, const CF& b) {
  CF r(a.prec());
  mpfr_add(r.re, a.re, b.re, MPFR_RNDN);
  mpfr_add(r.im, a.im, b.im, MPFR_RNDN);
  return r;
}
CF cf_sub(const CF& a, const CF& b) {
  CF r(a.prec());
  mpfr_sub(r.re, a.re, b.re, MPFR_RNDN);
  mpfr_sub(r.im, a.im, b.im, MPFR_RNDN);
  return r;
}
CF cf_mul(const CF& a, const CF& b) {
  CF r(a.prec());
  mpfr_t t1, t2;
  mpfr_init2(t1, a.prec());
  mpfr_init2(t2, a.prec());
  mpfr_mul(t1, a.re, b.re, MPFR_RNDN);
  mpfr_mul(t2, a.im, b.im, MPFR_RNDN);
  mpfr_sub(r.re, t1, t2, MPFR_RNDN);
  mpfr_mul(t1, a.re, b.im, MPFR_RNDN);
  mpfr_mul(t2, a.im, b.re, MPFR_RNDN);
  mpfr_add(r.im, t1, t2, MPFR_RNDN);
  mpfr_clear(t1);
  mpfr_clear(t2);
  return r;
}
CF cf_div(const CF& a, const CF& b) {
  CF r(a.prec());
  mpfr_t n2, t1, t2;
  mpfr_init2(n2, a.prec());
  mpfr_init2(t1, a.prec());
  mpfr_init2(t2, a.prec());
  mpfr_mul(t1, b.re, b.re, MPFR_RNDN);
  mpfr_mul(t2, b.im, b.im, MPFR_RNDN);
  mpfr_add(n2, t1, t2, MPFR_RNDN);
  mpfr_mul(t1, a.re, b.re, MPFR_RNDN);
  mpfr_mul(t2, a.im, b.im, MPFR_RNDN);
  mpfr_add(t1, t1, t2, MPFR_RNDN);
  mpfr_div(r.re, t1, n2, MPFR_RNDN);
  mpfr_mul(t1, a.im, b.re, MPFR_RNDN);
  mpfr_mul(t2, a.re, b.im, MPFR_RNDN);
  mpfr_sub(t1, t1, t2, MPFR_RNDN);
  mpfr_div(r.im, t1, n2, MPFR_RNDN);
  mpfr_clear(n2);
  mpfr_clear(t1);
  mpfr_clear(t2);
  return r;
}

// |a|^2 in t (caller provides storage of matching precision)
void cf_abs2(mpfr_t t, const CF& a) {
  mpfr_t u;
  mpfr_init2(u, a.prec());
  mpfr_mul(t, a.re, a.re, MPFR_RNDN);
  mpfr_mul(u, a.im, a.im, MPFR_RNDN);
  mpfr_add(t, t, u, MPFR_RNDN);
  mpfr_clear(u);
}

CF horner(const std::vector<CF>& f, const CF& x) {
  CF acc = f.back();
  for (size_t k = f.size() - 1; k-- > 0;) acc = cf_add(cf_mul(acc, x), f[k]);
  return acc;
}

/// Deterministic Aberth-Ehrlich approximations to the roots of a monic
/// polynomial; the output is NOT certified.
std::vector<GaussRat> aberth(const Upoly<GaussRat>& fq, mpfr_prec_t w) {
  size_t d = fq.size() - 1;
  std::vector<CF> f;
  f.reserve(fq.size());
  for (const auto& c : fq) f.push_back(CF::from(c, w));
  std::vector<CF> df;
  df.reserve(d);
  for (size_t k = 1; k < fq.size(); ++k)
    df.push_back(cf_mul(CF::from(GaussRat(Rat(static_cast<long>(k))), w), f[k]));

  double radius = 1.0;
  for (size_t k = 0; k + 1 < fq.size(); ++k)
    radius = std::max(radius, 1.0 + std::abs(fq[k].re().to_double()) + std::abs(fq[k].im().to_double()));

  std::vector<CF> pts;
  pts.reserve(d);
  {
    mpfr_t ang, s, c, rr;
    mpfr_init2(ang, w);
    mpfr_init2(s, w);
    mpfr_init2(c, w);
    mpfr_init2(rr, w);
    for (size_t i = 0; i < d; ++i) {
      mpfr_const_pi(ang, MPFR_RNDN);
      mpfr_mul_ui(ang, ang, 2 * static_cast<unsigned long>(i) + 1, MPFR_RNDN);
      mpfr_div_ui(ang, ang, static_cast<unsigned long>(d), MPFR_RNDN);
      mpfr_add_d(ang, ang, 0.4, MPFR_RNDN);
      mpfr_sin_cos(s, c, ang, MPFR_RNDN);
      mpfr_set_d(rr, radius * (1.0 + 0.07 * static_cast<double>(i + 1) / static_cast<double>(d)), MPFR_RNDN);
      CF z(w);
      mpfr_mul(z.re, rr, c, MPFR_RNDN);
      mpfr_mul(z.im, rr, s, MPFR_RNDN);
      pts.push_back(z);
    }
    mpfr_clear(ang);
    mpfr_clear(s);
    mpfr_clear(c);
    mpfr_clear(rr);
  }

  mpfr_t step2, w2, thr, one_t;
  mpfr_init2(step2, w);
  mpfr_init2(w2, w);
  mpfr_init2(thr, w);
  mpfr_init2(one_t, w);
  mpfr_set_ui(one_t, 1, MPFR_RNDN);
  size_t max_iter = 80 + 12 * d;
  for (size_t iter = 0; iter < max_iter; ++iter) {
    bool converged = true;
    for (size_t i = 0; i < d; ++i) {
      CF p = horner(f, pts[i]);
      if (p.is_zero()) continue;
      CF dp = horner(df, pts[i]);
      if (dp.is_zero()) {
        mpfr_add_d(pts[i].re, pts[i].re, 0.125, MPFR_RNDN);
        converged = false;
        continue;
      }
      CF newton = cf_div(p, dp);
      CF sum(w);
      bool collision = false;
      for (size_t j = 0; j < d; ++j) {
        if (j == i) continue;
        CF diff = cf_sub(pts[i], pts[j]);
        if (diff.is_zero()) {
          collision = true;
          break;
        }
        CF one_cf = CF::from(GaussRat(Rat(1)), w);
        sum = cf_add(sum, cf_div(one_cf, diff));
      }
      if (collision) {
        mpfr_add_d(pts[i].re, pts[i].re, 0.0625, MPFR_RNDN);
        converged = false;
        continue;
      }
      CF den = cf_sub(CF::from(GaussRat(Rat(1)), w), cf_mul(newton, sum));
      CF step = den.is_zero() ? newton : cf_div(newton, den);
      pts[i] = cf_sub(pts[i], step);
      cf_abs2(step2, step);
      cf_abs2(w2, pts[i]);
      if (mpfr_cmp(w2, one_t) < 0) mpfr_set(w2, one_t, MPFR_RNDN);
      // threshold: |step|^2 <= 2^-(w-6) * max(1,|w|^2)
      mpfr_mul_2si(thr, w2, -static_cast<long>(w - 6), MPFR_RNDN);
      if (mpfr_cmp(step2, thr) > 0) converged = false;
    }
    if (converged) break;
  }
  mpfr_clear(step2);
  mpfr_clear(w2);
  mpfr_clear(thr);
  mpfr_clear(one_t);

  std::vector<GaussRat> out;
  out.reserve(d);
  for (const auto& z : pts) out.push_back(z.to_gauss());
  return out;
}

// ---------------------------------------------------------------------------
// Exact certification: interpolation disks around approximations.

bool strictly_disjoint(const Box& a, const Box& b) {
  return (b.re_lo > a.re_hi) || (a.re_lo > b.re_hi) || (b.im_lo > a.im_hi) || (a.im_lo > b.im_hi);
}

bool all_disjoint(const std::vector<Box>& boxes) {
  for (size_t i = 0; i < boxes.size(); ++i)
    for (size_t j = i + 1; j < boxes.size(); ++j)
      if (!strictly_disjoint(boxes[i], boxes[j])) return false;
  return true;
}

void sort_boxes(std::vector<Box>& boxes) {
  std::sort(boxes.begin(), boxes.end(), [](const Box& a, const Box& b) {
    if (a.re_lo != b.re_lo) return a.re_lo < b.re_lo;
    if (a.im_lo != b.im_lo) return a.im_lo < b.im_lo;
    if (a.re_hi != b.re_hi) return a.re_hi < b.re_hi;
    return a.im_hi < b.im_hi;
  });
}

std::optional<Rat> separation_from_boxes(const std::vector<Box>& boxes) {
  if (boxes.size() < 2) return std::nullopt;
  std::optional<Rat> sep;
  for (size_t i = 0; i < boxes.size(); ++i)
    for (size_t j = i + 1; j < boxes.size(); ++j) {
      Rat gx = box_gap_re(boxes[i], boxes[j]);
      Rat gy = box_gap_im(boxes[i], boxes[j]);
      Rat s2 = gx * gx + gy * gy;
      if (s2.sign() <= 0) fail(errc::internal_contradiction, "separation of touching boxes");
      Rat dist = sqrt_lb_positive(s2);
      sep = sep ? min(*sep, dist) : dist;
    }
  return sep;
}

/// Disks D(w_i, R_i) with R_i strictly above d*|f(w_i)| / prod|w_i - w_j|
/// cover all roots of f, and disjoint disks isolate one root each; with ball
/// coefficients the bound holds for every member of the family.
std::optional<std::vector<Box>> certify_disks(const std::vector<GaussRat>& pts,
                                              const std::vector<Rat>& fval_ub, size_t degree,
                                              bool allow_exact_points) {
  size_t n = pts.size();
  std::vector<Box> boxes;
  boxes.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    Rat prod_n2(1);
    for (size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      Rat n2 = (pts[i] - pts[j]).norm2();
      if (n2.is_zero()) return std::nullopt;
      prod_n2 = prod_n2 * n2;
    }
    Rat radius;
    if (fval_ub[i].is_zero()) {
      if (!allow_exact_points) return std::nullopt;
      radius = Rat(0);
    } else {
      Rat denom_lb = sqrt_lb_positive(prod_n2);
      radius = (fval_ub[i] * Rat(static_cast<long>(degree)) / denom_lb) * Rat(257, 256);
    }
    boxes.push_back(Box{pts[i].re() - radius, pts[i].re() + radius, pts[i].im() - radius,
                        pts[i].im() + radius});
  }
  if (!all_disjoint(boxes)) return std::nullopt;
  return boxes;
}

// ---------------------------------------------------------------------------
// Sturm machinery for typing real roots of real polynomials.

std::vector<Upoly<Rat>> sturm_chain(const Upoly<Rat>& f) {
  std::vector<Upoly<Rat>> chain;
  Upoly<Rat> p0 = f, p1 = up_derivative(f);
  up_trim(p0);
  up_trim(p1);
  chain.push_back(p0);
  while (!p1.empty()) {
    Upoly<Rat> r = up_neg(up_mod(p0, p1));
    chain.push_back(p1);
    p0 = std::move(p1);
    p1 = std::move(r);
  }
  return chain;
}

int sign_variations(const std::vector<Upoly<Rat>>& chain, const Rat& x) {
  int last = 0, var = 0;
  for (const auto& p : chain) {
    Rat v = up_eval(p, x, Rat(1));
    int s = v.sign();
    if (s == 0) continue;
    if (last != 0 && s != last) ++var;
    last = s;
  }
  return var;
}

int sturm_count_chain(const std::vector<Upoly<Rat>>& chain, const Rat& a, const Rat& b) {
  return sign_variations(chain, a) - sign_variations(chain, b);
}

/// A split point of (a,b) at which f does not vanish (deterministic search).
Rat nonroot_split(const Upoly<Rat>& f, const Rat& a, const Rat& b) {
  static const long nums[] = {1, 1, 2, 1, 3, 2, 3, 1, 5};
  static const long dens[] = {2, 3, 3, 4, 4, 5, 5, 8, 8};
  for (size_t k = 0; k < sizeof(nums) / sizeof(nums[0]); ++k) {
    Rat m = a + (b - a) * Rat(nums[k], dens[k]);
    if (!up_eval(f, m, Rat(1)).is_zero()) return m;
  }
  // more than 9 roots clustered is impossible at desk degrees; scan dyadics
  for (long q = 16; q <= 1 << 20; q *= 2)
    for (long p = 1; p < q; p += 2) {
      Rat m = a + (b - a) * Rat(p, q);
      if (!up_eval(f, m, Rat(1)).is_zero()) return m;
    }
  fail(errc::internal_contradiction, "no nonroot split point found");
}

struct RealIsolation {
  Rat lo, hi;  // closed interval containing exactly one real root
};

std::vector<RealIsolation> isolate_real_sturm(const Upoly<Rat>& f) {
  std::vector<Upoly<Rat>> chain = sturm_chain(f);
  Rat bound(1);
  for (size_t k = 0; k + 1 < f.size(); ++k) bound = max(bound, Rat(1) + (f[k] / f.back()).abs());
  std::vector<std::pair<Rat, Rat>> work{{-bound, bound}};
  std::vector<RealIsolation> out;
  while (!work.empty()) {
    auto [a, b] = work.back();
    work.pop_back();
    int cnt = sturm_count_chain(chain, a, b);
    if (cnt == 0) continue;
    if (cnt == 1) {
      out.push_back({a, b});
      continue;
    }
    Rat m = nonroot_split(f, a, b);
    work.emplace_back(m, b);
    work.emplace_back(a, m);
  }
  std::sort(out.begin(), out.end(), [](const RealIsolation& x, const RealIsolation& y) { return x.lo < y.lo; });
  return out;
}

/// Shrink a one-root interval below the width target.
RealIsolation shrink_interval(const std::vector<Upoly<Rat>>& chain, const Upoly<Rat>& f,
                              RealIsolation iv, const Rat& target) {
  int guard = 0;
  while (iv.hi - iv.lo > target) {
    Rat m = nonroot_split(f, iv.lo, iv.hi);
    if (sturm_count_chain(chain, iv.lo, m) == 1)
      iv.hi = m;
    else
      iv.lo = m;
    if (++guard > 100000) fail(errc::precision_failure, "interval shrink stalled");
  }
  return iv;
}

bool poly_is_real(const Upoly<GaussRat>& f) {
  for (const auto& c : f)
    if (!c.is_real()) return false;
  return true;
}

Upoly<Rat> to_real_poly(const Upoly<GaussRat>& f) {
  Upoly<Rat> r;
  r.reserve(f.size());
  for (const auto& c : f) r.push_back(c.re());
  return r;
}

/// Replace boxes of real roots by genuine real segments (real coefficients
/// only); the Sturm intervals are refined until each sits inside exactly one
/// certified box.
void retype_real_roots(const Upoly<GaussRat>& monic, std::vector<Box>& boxes) {
  if (!poly_is_real(monic)) return;
  Upoly<Rat> fr = to_real_poly(monic);
  auto chain = sturm_chain(fr);
  auto reals = isolate_real_sturm(fr);
  std::vector<bool> matched(boxes.size(), false);
  for (auto iv : reals) {
    // an exact real point box inside the interval is the isolated root itself
    bool done = false;
    for (size_t i = 0; i < boxes.size() && !done; ++i) {
      const Box& bx = boxes[i];
      if (bx.is_real() && bx.re_lo == bx.re_hi && iv.lo <= bx.re_lo && bx.re_lo <= iv.hi) {
        if (matched[i]) fail(errc::internal_contradiction, "two real roots matched one box");
        matched[i] = true;
        done = true;
      }
    }
    if (done) continue;
    int guard = 0;
    for (;;) {
      size_t hit = boxes.size();
      size_t hits = 0;
      for (size_t i = 0; i < boxes.size(); ++i) {
        const Box& bx = boxes[i];
        if (bx.re_lo <= iv.lo && iv.hi <= bx.re_hi && bx.im_lo.sign() <= 0 && bx.im_hi.sign() >= 0) {
          hit = i;
          ++hits;
        }
      }
      if (hits == 1) {
        if (matched[hit]) fail(errc::internal_contradiction, "two real roots matched one box");
        matched[hit] = true;
        boxes[hit] = Box::real_segment(iv.lo, iv.hi);
        break;
      }
      iv = shrink_interval(chain, fr, iv, (iv.hi - iv.lo) * Rat(1, 4));
      if (++guard > 4096) fail(errc::precision_failure, "real root typing stalled");
    }
  }
}

struct ExactInput {
  Upoly<GaussRat> monic;
};

std::optional<IsolationResult> isolate_exact_attempt(const ExactInput& in, mpfr_prec_t w) {
  size_t d = in.monic.size() - 1;
  if (d == 1) {
    IsolationResult res;
    res.boxes.push_back(Box::point(-in.monic[0]));
    if (poly_is_real(in.monic)) res.boxes[0] = Box::real_segment(-in.monic[0].re(), -in.monic[0].re());
    return res;
  }
  std::vector<GaussRat> pts = aberth(in.monic, w);
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j)
      if (pts[i] == pts[j]) return std::nullopt;

  // exact rational roots among the approximations are deflated and kept as
  // point boxes; the disk bounds then use the deflated polynomial
  std::vector<GaussRat> exact_pts, open_pts;
  GaussRat one{Rat(1)};
  Upoly<GaussRat> deflated = in.monic;
  for (const auto& p : pts) {
    if (up_eval(in.monic, p, one).is_zero())
      exact_pts.push_back(p);
    else
      open_pts.push_back(p);
  }
  for (const auto& p : exact_pts) {
    Upoly<GaussRat> lin{-p, one};
    auto [q, r] = up_divrem(deflated, lin);
    if (!up_is_zero(r)) fail(errc::internal_contradiction, "exact root deflation left a remainder");
    deflated = q;
  }
  if (static_cast<int64_t>(open_pts.size()) != up_deg(deflated)) return std::nullopt;

  std::vector<Rat> fub;
  fub.reserve(open_pts.size());
  for (const auto& p : open_pts) {
    GaussRat v = up_eval(deflated, p, one);
    fub.push_back(v.norm2().sqrt_ub());
  }
  auto certified = certify_disks(open_pts, fub, deflated.size() - 1, false);
  if (!certified) return std::nullopt;

  std::vector<Box> boxes = *certified;
  for (const auto& p : exact_pts)
    boxes.push_back(p.is_real() ? Box::real_segment(p.re(), p.re()) : Box::point(p));
  if (!all_disjoint(boxes)) return std::nullopt;
  retype_real_roots(in.monic, boxes);
  sort_boxes(boxes);
  IsolationResult res;
  res.boxes = std::move(boxes);
  res.separation = separation_from_boxes(res.boxes);
  return res;
}

}  // namespace

int sturm_count(const Upoly<Rat>& f, const Rat& a, const Rat& b) {
  auto chain = sturm_chain(f);
  return sturm_count_chain(chain, a, b);
}

IsolationResult isolate_roots(const Upoly<GaussRat>& f, unsigned prec_cap) {
  Upoly<GaussRat> g = f;
  up_trim(g);
  if (up_deg(g) < 1) fail(errc::validation_error, "root isolation needs positive degree");
  Upoly<GaussRat> gp = up_derivative(g);
  Upoly<GaussRat> gcd = up_gcd(g, gp);
  if (up_deg(gcd) != 0) fail(errc::not_squarefree, "polynomial has repeated roots");
  ExactInput in{up_make_monic(g)};
  for (unsigned w = 64; w <= prec_cap; w *= 2) {
    auto res = isolate_exact_attempt(in, static_cast<mpfr_prec_t>(w));
    if (res) return *res;
  }
  fail(errc::precision_failure, "root isolation exceeded the precision cap");
}

std::optional<IsolationResult> try_isolate_enclosure(const Upoly<Ball>& f, unsigned prec) {
  if (f.empty()) fail(errc::validation_error, "enclosure isolation of zero polynomial");
  if (!(f.back().is_exact() && f.back().center() == GaussRat(Rat(1))))
    fail(errc::validation_error, "enclosure isolation expects a monic family");
  size_t d = f.size() - 1;
  if (d < 1) fail(errc::validation_error, "enclosure isolation needs positive degree");
  if (d == 1) {
    IsolationResult res;
    Ball root = -f[0];
    res.boxes.push_back(ball_to_box(root));
    return res;
  }
  bool exact = true;
  for (const auto& c : f) exact = exact && c.is_exact();
  if (exact) {
    // single-member family: exact certification handles rational roots
    Upoly<GaussRat> g;
    g.reserve(f.size());
    for (const auto& c : f) g.push_back(c.center());
    Upoly<GaussRat> gcd = up_gcd(g, up_derivative(g));
    if (up_deg(gcd) != 0) return std::nullopt;
    return isolate_exact_attempt(ExactInput{g}, static_cast<mpfr_prec_t>(prec));
  }
  Upoly<GaussRat> centers;
  centers.reserve(f.size());
  for (const auto& c : f) centers.push_back(c.center());
  std::vector<GaussRat> pts = aberth(centers, static_cast<mpfr_prec_t>(prec));
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j)
      if (pts[i] == pts[j]) return std::nullopt;
  std::vector<Rat> fub;
  fub.reserve(d);
  Ball one = Ball::exact(GaussRat(Rat(1)));
  for (const auto& p : pts) {
    Ball v = up_eval(f, Ball::exact(p), one);
    fub.push_back(v.mag_ub());
  }
  auto certified = certify_disks(pts, fub, d, false);
  if (!certified) return std::nullopt;
  IsolationResult res;
  res.boxes = *certified;
  sort_boxes(res.boxes);
  res.separation = separation_from_boxes(res.boxes);
  return res;
}

std::vector<Box> refine_boxes(const Upoly<GaussRat>& f, const std::vector<Box>& base,
                              const Rat& target, unsigned prec_cap) {
  Upoly<GaussRat> g = f;
  up_trim(g);
  ExactInput in{up_make_monic(g)};
  for (unsigned w = 128; w <= prec_cap; w *= 2) {
    auto res = isolate_exact_attempt(in, static_cast<mpfr_prec_t>(w));
    if (!res) continue;
    if (res->boxes.size() != base.size()) fail(errc::internal_contradiction, "root count changed under refinement");
    bool small_enough = true;
    for (const auto& bx : res->boxes)
      small_enough = small_enough && bx.width() <= target && bx.height() <= target;
    if (!small_enough) continue;
    // match new boxes to the base indexing: each must intersect exactly one
    std::vector<Box> mapped(base.size());
    std::vector<bool> used(base.size(), false);
    bool ok = true;
    for (const auto& nb : res->boxes) {
      size_t hit = base.size(), hits = 0;
      for (size_t i = 0; i < base.size(); ++i)
        if (nb.intersects(base[i])) {
          hit = i;
          ++hits;
        }
      if (hits != 1 || used[hit]) {
        ok = false;
        break;
      }
      used[hit] = true;
      mapped[hit] = nb;
    }
    if (ok) return mapped;
  }
  fail(errc::precision_failure, "box refinement exceeded the precision cap");
}

}  // namespace zeq
