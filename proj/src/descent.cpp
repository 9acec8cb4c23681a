#include "zeq/descent.hpp"

#include <algorithm>
#include <set>

namespace zeq {

namespace {

/// Distinct denominator polynomials (in t) of a set of tower elements.
void collect_denominators(const TowerElem& a, std::vector<QPoly>& out, std::set<std::string>& seen) {
  uint32_t r = a.presentation()->r;
  for (const auto& c : a.coords()) {
    if (c.is_zero()) continue;
    QPoly den = extend_vars(c.den(), r);
    if (den.is_constant()) continue;
    std::string key = to_canonical_string(den, default_names("t", r));
    if (seen.insert(key).second) out.push_back(den);
  }
}

/// Nearest dyadic lattice point to x with denominator 2^m.
Rat dyadic_round(const Rat& x, int m) {
  mpz_class twom;
  mpz_ui_pow_ui(twom.get_mpz_t(), 2, static_cast<unsigned long>(m));
  mpq_class scaled = x.mpq() * mpq_class(twom);
  // floor(scaled + 1/2)
  mpq_class half(1, 2);
  mpq_class shifted = scaled + half;
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
  return Rat(mpq_class(fl, twom));
}

struct Candidate {
  std::vector<GaussRat> q;
  Rat dist2_estimate;
  std::vector<long> offsets;
};

}  // namespace

std::vector<TowerElem> certificate_units(const Cascade<TowerElem>& cert) {
  std::vector<TowerElem> units = cert.input_constants;
  for (size_t k = 1; k < cert.levels.size(); ++k) units.push_back(cert.levels[k].e);
  units.push_back(cert.final_unit);
  return units;
}

PointChoice choose_rational_point(const DescentProblem& prob, const Cascade<TowerElem>& cert,
                                  const std::optional<TailBounds>& bounds, const Rat& eps_used) {
  (void)bounds;  // the continuation engine certifies the tracking on its own
  const FieldPresentation& F = *prob.F;
  const Limits& lim = prob.limits;
  TowerEvaluator ev(prob.F, lim);

  std::vector<TowerElem> units = certificate_units(cert);
  std::vector<QPoly> dens;
  {
    std::set<std::string> seen;
    for (const auto& g : prob.inputs)
      for (const auto& [e, c] : g.terms()) collect_denominators(c, dens, seen);
    for (const auto& u : units) collect_denominators(u, dens, seen);
  }

  Rat half_eps = eps_used * Rat(1, 2);
  Rat close_target = eps_used * Rat(1, 16);

  auto try_candidate = [&](const std::vector<GaussRat>& q, PointChoice& out) -> bool {
    std::vector<ConditionWitness> log;
    // (ii) certified ||q - t|| <= eps/2
    {
      Rat bound2 = half_eps * half_eps;
      bool decided = false, pass = false;
      for (unsigned p = std::max(lim.prec_start, 32u); p <= lim.prec_cap && !decided; p *= 2) {
        Rat ub2(0), lb2(0);
        for (size_t k = 0; k < q.size(); ++k) {
          Ball diff = Ball::exact(q[k]) - ev.binding(k, p);
          Rat u = diff.mag_ub();
          Rat l = diff.mag_lb();
          ub2 = ub2 + u * u;
          lb2 = lb2 + l * l;
        }
        if (ub2 <= bound2) {
          decided = true;
          pass = true;
          log.push_back({"distance", "||q-t||^2 <= " + ub2.str() + " <= (eps/2)^2", true});
        } else if (lb2 > bound2) {
          decided = true;
          pass = false;
        }
      }
      if (!decided || !pass) return false;
    }
    // (i) exact nonvanishing at q
    for (const auto& den : F.denominators) {
      GaussRat v = eval_qpoly_at(den, q);
      if (v.is_zero()) return false;
      log.push_back({"pole-check P", v.str(), true});
    }
    {
      GaussRat v = eval_qpoly_at(F.disc_numerator, q);
      if (v.is_zero()) return false;
      log.push_back({"discriminant numerator", v.str(), true});
    }
    for (const auto& den : dens) {
      GaussRat v = eval_qpoly_at(den, q);
      if (v.is_zero()) return false;
      log.push_back({"pole-check coefficient", v.str(), true});
    }
    // (iii) track the root, build the algebra, test every unit at the embedding
    TrackOutcome track;
    AlgebraPtr algebra;
    try {
      track = track_root(F, q, lim);
      algebra = specialize_modulus(F, q, track.root_index, lim);
    } catch (const Error&) {
      return false;
    }
    try {
      for (size_t k = 0; k < units.size(); ++k) {
        AlgNum img = eval_tower_at_point(units[k], algebra);
        if (alg_is_zero_embedded(img)) return false;
        log.push_back({"unit e_" + std::to_string(k), up_str(img.rep(), "z"), true});
      }
      // support and closeness precheck on every coefficient
      for (const auto& g : prob.inputs)
        for (const auto& [e, c] : g.terms()) {
          AlgNum img = eval_tower_at_point(c, algebra);
          if (alg_is_zero_embedded(img)) return false;
          Ball in_b = ev.eval_to_radius(c, close_target);
          Ball out_b = img.enclosure(close_target);
          Ball diff = in_b - out_b;
          if (!(diff.mag_ub() < half_eps)) return false;
        }
    } catch (const Error&) {
      return false;
    }
    out.q = q;
    out.algebra = algebra;
    out.track = track;
    out.log = std::move(log);
    return true;
  };

  if (F.r == 0) {
    PointChoice out;
    if (!try_candidate({}, out))
      fail(errc::search_exhausted, "degenerate point rejected (r = 0)");
    return out;
  }

  bool complex_ground = F.ground == Ground::C;
  size_t dims = F.r * (complex_ground ? 2 : 1);
  for (int m = 4; m <= lim.grid_cap; ++m) {
    // base point: componentwise nearest dyadic to a fresh center approximation
    std::vector<GaussRat> base;
    for (size_t k = 0; k < F.r; ++k) {
      Ball b = ev.binding(k, static_cast<unsigned>(m + 8));
      Rat re = dyadic_round(b.center().re(), m);
      Rat im = complex_ground ? dyadic_round(b.center().im(), m) : Rat(0);
      base.emplace_back(re, im);
    }
    // offsets ordered by squared norm, lexicographic tie-break
    std::vector<Candidate> cands;
    std::vector<long> off(dims, -lim.grid_span);
    for (;;) {
      Candidate c;
      c.offsets = off;
      Rat mesh = Rat::pow2(-m);
      Rat n2(0);
      c.q = base;
      for (size_t d = 0; d < dims; ++d) {
        n2 = n2 + Rat(off[d]) * Rat(off[d]);
        size_t k = d % F.r;
        Rat delta = mesh * Rat(off[d]);
        if (d < F.r)
          c.q[k] = GaussRat(c.q[k].re() + delta, c.q[k].im());
        else
          c.q[k] = GaussRat(c.q[k].re(), c.q[k].im() + delta);
      }
      c.dist2_estimate = n2;
      cands.push_back(std::move(c));
      size_t d = dims;
      while (d-- > 0) {
        if (off[d] < lim.grid_span) {
          ++off[d];
          break;
        }
        off[d] = -lim.grid_span;
        if (d == 0) goto enumerated;
      }
    }
  enumerated:
    std::stable_sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
      if (a.dist2_estimate != b.dist2_estimate) return a.dist2_estimate < b.dist2_estimate;
      return a.offsets < b.offsets;
    });
    for (const auto& c : cands) {
      PointChoice out;
      if (try_candidate(c.q, out)) return out;
    }
  }
  fail(errc::search_exhausted, "no rational point accepted up to the grid cap");
}

DescentOutput descend(const DescentProblem& prob) {
  const FieldPresentation& F = *prob.F;
  const Limits& lim = prob.limits;
  if (prob.inputs.empty()) fail(errc::all_zero_input, "no input polynomials");
  if (prob.epsilon.sign() <= 0) fail(errc::validation_error, "epsilon must be positive");
  TowerElem one_k = TowerElem::one(prob.F);
  TowerEvaluator ev(prob.F, lim);

  Cascade<TowerElem> cert = build_cascade(prob.inputs, one_k, prob.homogeneous);

  // eps shrink: half the smallest certified coefficient magnitude keeps the
  // support of the outputs equal to the support of the inputs by arithmetic
  Rat eps = prob.epsilon;
  for (const auto& g : prob.inputs)
    for (const auto& [e, c] : g.terms()) {
      Rat lb = ev.lower_bound_nonzero(c);
      eps = min(eps, lb * Rat(1, 2));
    }

  // ball certification at radius 2*eps, shrinking geometrically
  std::vector<QPoly> cert_polys = F.denominators;
  cert_polys.push_back(F.disc_numerator);
  NonvanishingCertificate ball;
  for (;;) {
    ball = certify_ball_nonvanishing(cert_polys, F.bindings, eps * Rat(2), F.ground, lim);
    if (ball.ok) break;
    eps = eps * Rat(1, 2);
    if (eps < Rat::pow2(-64)) fail(errc::precision_failure, "ball certification failed down to 2^-64");
  }

  std::optional<TailBounds> bounds;
  if (F.r >= 1) bounds = tail_constants(F, eps, lim);

  PointChoice pc = choose_rational_point(prob, cert, bounds, eps);

  // outputs: image of every coefficient under the specialization homomorphism
  std::vector<MPoly<AlgNum>> outputs;
  outputs.reserve(prob.inputs.size());
  for (const auto& g : prob.inputs) {
    MPoly<AlgNum> h(g.nvars());
    for (const auto& [e, c] : g.terms()) {
      AlgNum img = eval_tower_at_point(c, pc.algebra);
      if (img.is_zero()) fail(errc::internal_contradiction, "support lost despite the eps shrink rule");
      h.add_term(e, img);
    }
    if (h.term_count() != g.term_count())
      fail(errc::internal_contradiction, "support mismatch in output assembly");
    outputs.push_back(std::move(h));
  }

  // certified achieved epsilon
  Rat achieved(0);
  Rat target = eps * Rat(1, 8);
  for (size_t i = 0; i < prob.inputs.size(); ++i) {
    auto it_out = outputs[i].terms().begin();
    for (const auto& [e, c] : prob.inputs[i].terms()) {
      Ball in_b = ev.eval_to_radius(c, target);
      Ball out_b = it_out->second.enclosure(target);
      achieved = max(achieved, (in_b - out_b).mag_ub());
      ++it_out;
    }
  }
  if (!(achieved < eps)) fail(errc::internal_contradiction, "achieved epsilon not below the target");

  DescentOutput out;
  out.q = pc.q;
  out.algebra = pc.algebra;
  out.outputs = std::move(outputs);
  out.certificate = std::move(cert);
  out.eps_used = eps;
  out.achieved_eps = achieved;
  out.bounds = bounds;
  out.ball_certificate = std::move(ball);
  out.conditions_log = std::move(pc.log);
  out.track = std::move(pc.track);
  return out;
}

}  // namespace zeq
