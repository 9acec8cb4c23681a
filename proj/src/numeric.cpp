#include "zeq/numeric.hpp"

#include <algorithm>

namespace zeq {

Ball eval_qpoly_ball(const QPoly& f, const std::vector<Ball>& pt) {
  return eval_mpoly(f, pt, Ball::exact(GaussRat(Rat(1))));
}

std::optional<Ball> try_eval_ratfunc_ball(const RatFunc& f, const std::vector<Ball>& pt) {
  if (f.is_zero()) return Ball::exact(GaussRat(Rat(0)));
  std::vector<Ball> use(pt.begin(), pt.begin() + f.nvars());
  Ball num = eval_qpoly_ball(f.num(), use);
  Ball den = eval_qpoly_ball(f.den(), use);
  if (!den.excludes_zero()) return std::nullopt;
  return num / den;
}

GaussRat eval_qpoly_at(const QPoly& f, const std::vector<GaussRat>& pt) {
  return eval_mpoly(f, pt, GaussRat(Rat(1)));
}

GaussRat eval_ratfunc_at(const RatFunc& f, const std::vector<GaussRat>& pt) {
  if (f.is_zero()) return GaussRat(Rat(0));
  std::vector<GaussRat> use(pt.begin(), pt.begin() + f.nvars());
  GaussRat den = eval_qpoly_at(f.den(), use);
  if (den.is_zero()) fail(errc::pole_at_point, "denominator vanishes at the point");
  return eval_qpoly_at(f.num(), use) / den;
}

Upoly<GaussRat> specialize_P(const FieldPresentation& F, const std::vector<GaussRat>& q) {
  if (q.size() != F.r) fail(errc::validation_error, "point arity mismatch");
  Upoly<GaussRat> out;
  out.reserve(F.P.size());
  for (const auto& c : F.P) out.push_back(eval_ratfunc_at(c, q));
  if (!(out.back() == GaussRat(Rat(1))))
    fail(errc::internal_contradiction, "specialized minimal polynomial is not monic");
  return out;
}

std::optional<Upoly<Ball>> try_enclose_P(const FieldPresentation& F, const std::vector<Ball>& t) {
  Upoly<Ball> out;
  out.reserve(F.P.size());
  for (const auto& c : F.P) {
    auto b = try_eval_ratfunc_ball(c, t);
    if (!b) return std::nullopt;
    out.push_back(*b);
  }
  return out;
}

// ---------------------------------------------------------------------------
// certify_ball_nonvanishing

namespace {

struct Cell {
  std::vector<Box> coords;
  int depth = 0;
};

std::vector<Ball> cell_balls(const Cell& c) {
  std::vector<Ball> b;
  b.reserve(c.coords.size());
  for (const auto& bx : c.coords) b.push_back(bx.to_ball());
  return b;
}

/// Squared distance lower bound between a cell and the center box product.
Rat cell_center_dist2(const Cell& c, const std::vector<Box>& center) {
  Rat d2(0);
  for (size_t k = 0; k < c.coords.size(); ++k) {
    Rat gx = box_gap_re(c.coords[k], center[k]);
    Rat gy = box_gap_im(c.coords[k], center[k]);
    d2 = d2 + gx * gx + gy * gy;
  }
  return d2;
}

/// Split along the widest dimension (ties: lowest coordinate, re before im).
std::pair<Cell, Cell> split_cell(const Cell& c) {
  size_t best_k = 0;
  bool best_im = false;
  Rat best_w(-1);
  for (size_t k = 0; k < c.coords.size(); ++k) {
    if (c.coords[k].width() > best_w) {
      best_w = c.coords[k].width();
      best_k = k;
      best_im = false;
    }
    if (c.coords[k].height() > best_w) {
      best_w = c.coords[k].height();
      best_k = k;
      best_im = true;
    }
  }
  Cell a = c, b = c;
  a.depth = b.depth = c.depth + 1;
  Box& ba = a.coords[best_k];
  Box& bb = b.coords[best_k];
  if (!best_im) {
    Rat mid = (ba.re_lo + ba.re_hi) * Rat(1, 2);
    ba.re_hi = mid;
    bb.re_lo = mid;
  } else {
    Rat mid = (ba.im_lo + ba.im_hi) * Rat(1, 2);
    ba.im_hi = mid;
    bb.im_lo = mid;
  }
  return {a, b};
}

}  // namespace

NonvanishingCertificate certify_ball_nonvanishing(const std::vector<QPoly>& polys,
                                                  const std::vector<ComputableScalar>& center,
                                                  const Rat& rho, Ground ground,
                                                  const Limits& lim) {
  if (rho.sign() <= 0) fail(errc::validation_error, "nonvanishing radius must be positive");
  for (const auto& p : polys)
    if (p.is_zero()) fail(errc::validation_error, "zero polynomial can never be certified nonvanishing");
  NonvanishingCertificate cert;
  cert.rho = rho;

  // center enclosure: refine bindings until comfortably below rho
  Rat target = rho * Rat(1, 1024);
  std::vector<Box> cbox;
  for (const auto& c : center) {
    unsigned p = lim.prec_start;
    Ball b = c.refine(p);
    while (b.radius() > target) {
      p *= 2;
      if (p > lim.prec_cap) fail(errc::precision_failure, "cannot refine center below rho");
      b = c.refine(p);
    }
    if (ground == Ground::R && !b.real_typed())
      fail(errc::validation_error, "real ground with a non-real binding");
    cbox.push_back(ball_to_box(b));
  }

  cert.per_poly.resize(polys.size());
  for (size_t pi = 0; pi < polys.size(); ++pi) {
    const QPoly& f = polys[pi];
    Cell root;
    for (size_t k = 0; k < center.size(); ++k) {
      Box b = cbox[k];
      b.re_lo = b.re_lo - rho;
      b.re_hi = b.re_hi + rho;
      if (ground == Ground::C) {
        b.im_lo = b.im_lo - rho;
        b.im_hi = b.im_hi + rho;
      }
      root.coords.push_back(b);
    }
    std::vector<Cell> stack{root};
    long cells = 0;
    while (!stack.empty()) {
      Cell cell = stack.back();
      stack.pop_back();
      Rat rho2 = rho * rho;
      if (cell_center_dist2(cell, cbox) > rho2) continue;  // outside the Euclidean ball
      Ball v = eval_qpoly_ball(f, cell_balls(cell));
      if (v.excludes_zero()) {
        cert.per_poly[pi].push_back({cell.coords, v.mag_lb()});
        if (++cells > lim.max_cells_per_poly) {
          cert.ok = false;
          cert.failed_poly = static_cast<int>(pi);
          cert.witness_cell = cell.coords;
          return cert;
        }
        continue;
      }
      cert.max_depth_seen = std::max(cert.max_depth_seen, cell.depth);
      if (cell.depth >= lim.subdivision_depth) {
        cert.ok = false;
        cert.failed_poly = static_cast<int>(pi);
        cert.witness_cell = cell.coords;
        return cert;
      }
      auto [a, b] = split_cell(cell);
      stack.push_back(b);
      stack.push_back(a);
    }
  }
  cert.ok = true;
  return cert;
}

// ---------------------------------------------------------------------------
// tail_constants

namespace {

/// Certified sup bound of |f| over the product of coordinate balls, by
/// subdividing wherever the denominator cannot be excluded from zero.
Rat sup_ratfunc_on_cells(const RatFunc& f, const std::vector<Box>& start, const Limits& lim) {
  struct Item {
    std::vector<Box> coords;
    int depth;
  };
  std::vector<Item> stack{{start, 0}};
  Rat best(0);
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    std::vector<Ball> pt;
    pt.reserve(it.coords.size());
    for (const auto& b : it.coords) pt.push_back(b.to_ball());
    auto v = try_eval_ratfunc_ball(f, pt);
    if (v) {
      best = max(best, v->mag_ub());
      continue;
    }
    if (it.depth >= lim.subdivision_depth)
      fail(errc::precision_failure, "coefficient sup bound: denominator not separable from zero");
    Cell c{it.coords, it.depth};
    auto [a, b] = split_cell(c);
    stack.push_back({b.coords, b.depth});
    stack.push_back({a.coords, a.depth});
  }
  return best;
}

}  // namespace

TailBounds tail_constants(const FieldPresentation& F, const Rat& eps, const Limits& lim) {
  if (F.r == 0) fail(errc::validation_error, "tail constants need r >= 1");
  if (eps.sign() <= 0) fail(errc::validation_error, "eps must be positive");
  TailBounds tb;
  tb.epsilon = eps;

  // coordinate boxes covering B(t, 2 eps)
  Rat two_eps = eps * Rat(2);
  std::vector<Box> cover;
  for (const auto& c : F.bindings) {
    unsigned p = lim.prec_start;
    Ball b = c.refine(p);
    while (b.radius() > eps * Rat(1, 64)) {
      p *= 2;
      if (p > lim.prec_cap) fail(errc::precision_failure, "cannot refine bindings below eps");
      b = c.refine(p);
    }
    Box bx = ball_to_box(b);
    bx.re_lo = bx.re_lo - two_eps;
    bx.re_hi = bx.re_hi + two_eps;
    if (F.ground == Ground::C) {
      bx.im_lo = bx.im_lo - two_eps;
      bx.im_hi = bx.im_hi + two_eps;
    }
    cover.push_back(bx);
  }

  Rat sup(0);
  for (size_t k = 0; k + 1 < F.P.size(); ++k) sup = max(sup, sup_ratfunc_on_cells(F.P[k], cover, lim));
  tb.M = Rat(1) + sup;

  // least K >= r with k^r / sqrt(2)^k <= 1 for all k >= K; the sequence
  // decreases beyond 2r/ln2 (ln 2 > 6931/10000), so checking up to that
  // threshold suffices
  unsigned long r = F.r;
  mpz_class t_num = mpz_class(2) * static_cast<long>(r) * 10000;
  mpz_class t_den = 6931;
  mpz_class T = (t_num + t_den - 1) / t_den + 1;
  auto holds_at = [&](unsigned long k) {
    mpz_class lhs;
    mpz_ui_pow_ui(lhs.get_mpz_t(), k, 2 * r);  // k^{2r} vs 2^k
    mpz_class rhs;
    mpz_ui_pow_ui(rhs.get_mpz_t(), 2, k);
    return lhs <= rhs;
  };
  unsigned long Tl = T.get_ui();
  for (unsigned long K = r;; ++K) {
    bool ok = true;
    for (unsigned long k = K; k <= std::max(Tl, K); ++k) ok = ok && holds_at(k);
    if (ok) {
      tb.K_tail = static_cast<unsigned>(K);
      break;
    }
    if (K > Tl + 64) fail(errc::internal_contradiction, "tail index search ran away");
  }

  // C >= M 2^r/(r-1)! * (2+sqrt2); 2+sqrt2 <= 342/100
  mpz_class fact = 1;
  for (unsigned long i = 2; i < r; ++i) fact *= i;
  mpz_class two_r;
  mpz_ui_pow_ui(two_r.get_mpz_t(), 2, r);
  tb.C_upper = tb.M * Rat(two_r) / Rat(fact) * Rat(342, 100);

  // eta: separation of the roots of P(t, .)
  if (F.d >= 2) {
    for (unsigned p = std::max(lim.prec_start, 32u);; p *= 2) {
      if (p > lim.prec_cap) fail(errc::precision_failure, "eta: isolation failed at the precision cap");
      std::vector<Ball> t;
      t.reserve(F.r);
      for (size_t i = 0; i < F.r; ++i) t.push_back(F.bindings[i].refine(p));
      auto Pb = try_enclose_P(F, t);
      if (!Pb) continue;
      auto iso = try_isolate_enclosure(*Pb, std::max(64u, p));
      if (!iso || !iso->separation) continue;
      tb.eta = iso->separation;
      break;
    }
  }
  return tb;
}

// ---------------------------------------------------------------------------
// TowerEvaluator

TowerEvaluator::TowerEvaluator(PresentationPtr F, const Limits& lim) : F_(std::move(F)), lim_(lim) {}

Ball TowerEvaluator::binding(size_t i, unsigned p) const {
  Ball b = F_->bindings.at(i).refine(p);
  if (F_->ground == Ground::R && !b.real_typed())
    fail(errc::validation_error, "real ground with a non-real binding");
  return b;
}

std::vector<Ball> TowerEvaluator::bindings(unsigned p) const {
  std::vector<Ball> out;
  out.reserve(F_->r);
  for (size_t i = 0; i < F_->r; ++i) out.push_back(binding(i, p));
  return out;
}

Ball TowerEvaluator::z_ball(unsigned p) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = z_memo_.find(p);
    if (it != z_memo_.end()) return it->second;
  }
  Rat target = Rat::pow2(-static_cast<long>(p));
  Ball result = Ball::exact(GaussRat(Rat(0)));
  bool found = false;
  for (unsigned q = std::max(p + 4, std::max(lim_.prec_start, 32u)); q <= lim_.prec_cap; q *= 2) {
    std::vector<Ball> t = bindings(q);
    if (F_->d == 1) {
      auto v = try_eval_ratfunc_ball(-F_->P[0], t);
      if (!v) continue;
      if (v->radius() <= target) {
        result = *v;
        found = true;
        break;
      }
      continue;
    }
    auto Pb = try_enclose_P(*F_, t);
    if (!Pb) continue;
    auto iso = try_isolate_enclosure(*Pb, std::max(64u, q));
    if (!iso) continue;
    Box sel = ball_to_box(F_->z_selector);
    size_t hits = 0, hit = 0;
    for (size_t i = 0; i < iso->boxes.size(); ++i)
      if (iso->boxes[i].intersects(sel)) {
        ++hits;
        hit = i;
      }
    if (hits != 1) continue;  // selector not yet separated; refine further
    Ball b = iso->boxes[hit].to_ball();
    if (b.radius() <= target) {
      result = b;
      found = true;
      break;
    }
  }
  if (!found) fail(errc::precision_failure, "z enclosure did not reach the requested radius");
  std::lock_guard<std::mutex> lock(mu_);
  z_memo_.emplace(p, result);
  return result;
}

Ball TowerEvaluator::eval(const TowerElem& a, unsigned p) const {
  for (unsigned q = std::max(p, lim_.prec_start); q <= lim_.prec_cap; q *= 2) {
    std::vector<Ball> t = bindings(q);
    Ball z = F_->d == 1 ? Ball::exact(GaussRat(Rat(0))) : z_ball(q);
    bool ok = true;
    std::optional<Ball> acc;
    for (size_t k = 0; k < a.coords().size() && ok; ++k) {
      const RatFunc& c = a.coords()[k];
      if (c.is_zero()) continue;
      auto cb = try_eval_ratfunc_ball(c, t);
      if (!cb) {
        ok = false;
        break;
      }
      Ball term = F_->d == 1 ? *cb : *cb * z.pow(static_cast<unsigned>(k));
      acc = acc ? *acc + term : term;
    }
    if (ok) return acc ? *acc : Ball::exact(GaussRat(Rat(0)));
  }
  fail(errc::precision_failure, "tower element evaluation failed at the precision cap");
}

Ball TowerEvaluator::eval_to_radius(const TowerElem& a, const Rat& target) const {
  for (unsigned p = lim_.prec_start; p <= lim_.prec_cap; p *= 2) {
    Ball b = eval(a, p);
    if (b.radius() <= target) return b;
  }
  fail(errc::precision_failure, "tower element enclosure did not reach the target radius");
}

Rat TowerEvaluator::lower_bound_nonzero(const TowerElem& a) const {
  if (tw_is_zero(a)) fail(errc::internal_contradiction, "lower bound of the zero element");
  for (unsigned p = lim_.prec_start; p <= lim_.prec_cap; p *= 2) {
    Ball b = eval(a, p);
    if (b.excludes_zero()) return b.mag_lb();
  }
  fail(errc::precision_failure, "nonzero element: 0 not excluded at the precision cap");
}

// ---------------------------------------------------------------------------
// track_root

namespace {

/// d = 1 never branches: the single root is followed trivially.
TrackOutcome track_trivial(const Upoly<GaussRat>& Pq) {
  IsolationResult iso = isolate_roots(Pq);
  TrackOutcome out;
  out.root_index = 0;
  out.box = iso.boxes[0];
  out.roots_at_q = std::move(iso);
  return out;
}

}  // namespace

TrackOutcome track_root(const FieldPresentation& F, const std::vector<GaussRat>& q,
                        const Limits& lim) {
  if (q.size() != F.r) fail(errc::validation_error, "point arity mismatch");
  for (const auto& qi : q)
    if (F.ground == Ground::R && !qi.is_real())
      fail(errc::validation_error, "complex point over real ground");
  // endpoint checks: poles and the discriminant locus (precondition (8)(i))
  std::vector<GaussRat> qv = q;
  for (const auto& den : F.denominators)
    if (eval_qpoly_at(den, qv).is_zero()) fail(errc::pole_at_point, "q is a pole of P's coefficients");
  if (F.d >= 2 && eval_qpoly_at(F.disc_numerator, qv).is_zero())
    fail(errc::path_uncertifiable, "q lies in the discriminant locus");

  Upoly<GaussRat> Pq = specialize_P(F, q);
  if (F.d == 1) return track_trivial(Pq);

  IsolationResult iso_q = isolate_roots(Pq, lim.isolate_prec_cap);

  TowerEvaluator ev(std::make_shared<FieldPresentation>(F), lim);
  Box selector = ball_to_box(F.z_selector);

  // degenerate path: all bindings rational and equal to q
  bool degenerate = true;
  for (size_t i = 0; i < F.r && degenerate; ++i)
    degenerate = F.bindings[i].is_rational() && F.bindings[i].rational_value() == q[i];
  if (F.r == 0) degenerate = true;

  unsigned p_path = std::max(lim.prec_start, 32u);
  long steps = 0;

  auto enclosures_at = [&](const Rat& la, const Rat& lb,
                           unsigned p) -> std::optional<IsolationResult> {
    std::vector<Ball> t = ev.bindings(p);
    Ball lam = Ball::real_interval(la, lb);
    std::vector<Ball> coords;
    coords.reserve(F.r);
    for (size_t k = 0; k < F.r; ++k) {
      Ball qk = Ball::exact(q[k]);
      coords.push_back(t[k] + lam * (qk - t[k]));
    }
    auto Pb = try_enclose_P(F, coords);
    if (!Pb) return std::nullopt;
    return try_isolate_enclosure(*Pb, std::max(64u, p));
  };

  auto unique_hit = [](const std::vector<Box>& boxes, const Box& probe) -> std::optional<size_t> {
    size_t hits = 0, hit = 0;
    for (size_t i = 0; i < boxes.size(); ++i)
      if (boxes[i].intersects(probe)) {
        ++hits;
        hit = i;
      }
    if (hits != 1) return std::nullopt;
    return hit;
  };

  // current certified box around the tracked branch at parameter la
  Box cur = selector;
  if (!degenerate) {
    bool anchored = false;
    for (unsigned p = p_path; p <= lim.prec_cap && !anchored; p *= 2) {
      auto iso0 = enclosures_at(Rat(0), Rat(0), p);
      if (!iso0) continue;
      auto hit = unique_hit(iso0->boxes, selector);
      if (!hit) continue;
      cur = iso0->boxes[*hit];
      p_path = p;
      anchored = true;
    }
    if (!anchored) fail(errc::path_uncertifiable, "selector does not isolate a root at the bindings");

    Rat la(0);
    while (la < Rat(1)) {
      if (++steps > lim.track_max_steps) fail(errc::path_uncertifiable, "step budget exhausted");
      Rat len = Rat(1) - la;
      bool advanced = false;
      while (!advanced) {
        auto piece = enclosures_at(la, la + len, p_path);
        std::optional<size_t> sel_piece = piece ? unique_hit(piece->boxes, cur) : std::nullopt;
        if (piece && sel_piece) {
          Rat lb = la + len;
          // tight frontier boxes at the endpoint
          auto frontier = enclosures_at(lb, lb, p_path);
          std::optional<size_t> sel_f =
              frontier ? unique_hit(frontier->boxes, piece->boxes[*sel_piece]) : std::nullopt;
          if (sel_f) {
            cur = frontier->boxes[*sel_f];
            la = lb;
            advanced = true;
            break;
          }
        }
        len = len * Rat(1, 2);
        if (len < Rat::pow2(-48)) {
          len = Rat(1) - la;
          p_path *= 2;
          if (p_path > lim.prec_cap)
            fail(errc::path_uncertifiable, "continuation failed at the precision cap");
        }
      }
    }
  } else {
    // match the selector against the enclosures at the (exact) bindings
    bool anchored = false;
    for (unsigned p = p_path; p <= lim.prec_cap && !anchored; p *= 2) {
      auto iso0 = enclosures_at(Rat(1), Rat(1), p);
      if (!iso0) continue;
      auto hit = unique_hit(iso0->boxes, selector);
      if (!hit) continue;
      cur = iso0->boxes[*hit];
      anchored = true;
    }
    if (!anchored) fail(errc::path_uncertifiable, "selector does not isolate a root at q");
  }

  // hand off to the exact isolation of P(q,.)
  std::vector<Box> refined = iso_q.boxes;
  Rat target = min(cur.width(), Rat(1)) * Rat(1, 4);
  for (;;) {
    size_t hits = 0, hit = 0;
    for (size_t i = 0; i < refined.size(); ++i)
      if (refined[i].intersects(cur)) {
        ++hits;
        hit = i;
      }
    if (hits == 1) {
      TrackOutcome out;
      out.root_index = hit;
      out.box = refined[hit];
      out.roots_at_q = iso_q;
      out.roots_at_q.boxes = refined;
      out.steps = steps;
      return out;
    }
    if (hits == 0) fail(errc::internal_contradiction, "tracked branch lost between isolations");
    refined = refine_boxes(Pq, refined, target, lim.isolate_prec_cap);
    target = target * Rat(1, 4);
  }
}

}  // namespace zeq
