#include "zeq/verify.hpp"

#include <algorithm>

#include "zeq/expr.hpp"

namespace zeq {

std::vector<TowerElem> coefficient_list(const DescentProblem& prob) {
  std::vector<TowerElem> out;
  for (const auto& g : prob.inputs) {
    const auto& t = g.terms();
    for (auto it = t.rbegin(); it != t.rend(); ++it) out.push_back(it->second);
  }
  return out;
}

std::vector<AlgNum> output_coefficient_list(const DescentProblem& prob, const DescentOutput& out) {
  std::vector<AlgNum> vals;
  if (out.outputs.size() != prob.inputs.size())
    fail(errc::validation_error, "output polynomial count mismatch");
  for (size_t i = 0; i < prob.inputs.size(); ++i) {
    const auto& in_t = prob.inputs[i].terms();
    for (auto it = in_t.rbegin(); it != in_t.rend(); ++it) {
      auto jt = out.outputs[i].terms().find(it->first);
      if (jt == out.outputs[i].terms().end())
        fail(errc::validation_error, "output coefficient missing for an input monomial");
      vals.push_back(jt->second);
    }
  }
  return vals;
}

std::vector<MPoly<Rat>> auto_relations(const DescentProblem& prob) {
  std::vector<MPoly<Rat>> rels;
  std::vector<TowerElem> cs = coefficient_list(prob);
  uint32_t m = static_cast<uint32_t>(cs.size());
  for (size_t a = 0; a < cs.size(); ++a)
    for (size_t b = a + 1; b < cs.size(); ++b)
      if (cs[a] == cs[b]) {
        MPoly<Rat> rel(m);
        rel.add_term([&] { Exp e(m, 0); e[a] = 1; return e; }(), Rat(1));
        rel.add_term([&] { Exp e(m, 0); e[b] = 1; return e; }(), Rat(-1));
        rels.push_back(std::move(rel));
      }
  const FieldPresentation& F = *prob.F;
  if (F.d >= 2) {
    // defining relation of z, denominators cleared, when z and all t_i occur
    size_t iz = cs.size();
    std::vector<size_t> it_idx(F.r, cs.size());
    TowerElem zg = TowerElem::z_gen(prob.F);
    for (size_t k = 0; k < cs.size(); ++k) {
      if (cs[k] == zg && iz == cs.size()) iz = k;
      for (uint32_t i = 0; i < F.r; ++i)
        if (cs[k] == TowerElem::t_var(prob.F, i) && it_idx[i] == cs.size()) it_idx[i] = k;
    }
    bool all = iz < cs.size();
    for (uint32_t i = 0; i < F.r; ++i) all = all && it_idx[i] < cs.size();
    if (all) {
      MPoly<Rat> rel(m);
      for (const auto& [e, c] : F.cleared_P.terms()) {
        Exp ey(m, 0);
        for (uint32_t i = 0; i < F.r; ++i) ey[it_idx[i]] += e[i];
        ey[iz] += e[F.r];
        rel.add_term(std::move(ey), c);
      }
      rels.push_back(std::move(rel));
    }
  }
  return rels;
}

std::vector<CheckEntry> check_support_and_closeness(const DescentProblem& prob,
                                                    const DescentOutput& out) {
  std::vector<CheckEntry> entries;
  TowerEvaluator ev(prob.F, prob.limits);

  // support: exact equality of exponent sets, with embedded-nonzero outputs
  {
    CheckEntry e{"support", "pass", ""};
    if (out.outputs.size() != prob.inputs.size()) {
      e.status = "fail";
      e.witness = "polynomial count differs";
    } else {
      for (size_t i = 0; i < prob.inputs.size() && e.status == "pass"; ++i) {
        const auto& in_t = prob.inputs[i].terms();
        const auto& out_t = out.outputs[i].terms();
        if (in_t.size() != out_t.size()) {
          e.status = "fail";
          e.witness = "support size differs in polynomial " + std::to_string(i + 1);
          break;
        }
        auto a = in_t.begin();
        auto b = out_t.begin();
        for (; a != in_t.end(); ++a, ++b) {
          if (a->first != b->first) {
            e.status = "fail";
            e.witness = "supports differ in polynomial " + std::to_string(i + 1);
            break;
          }
          if (b->second.is_zero()) {
            e.status = "fail";
            e.witness = "output coefficient is zero at the embedding";
            break;
          }
        }
      }
      if (e.status == "pass")
        e.witness = "Supp(g'_i) = Supp(g_i) for all i; all output coefficients nonzero";
    }
    entries.push_back(std::move(e));
  }

  // closeness: |g_ia - g'_ia| < epsilon, certified by shrinking enclosures
  {
    CheckEntry e{"closeness", "pass", ""};
    Rat epsv = prob.epsilon;
    Rat worst(0);
    try {
      for (size_t i = 0; i < prob.inputs.size() && e.status == "pass"; ++i) {
        for (const auto& [mono, c] : prob.inputs[i].terms()) {
          auto jt = out.outputs[i].terms().find(mono);
          if (jt == out.outputs[i].terms().end()) continue;  // support check reports this
          Rat target = epsv * Rat(1, 8);
          bool decided = false;
          for (int round = 0; round < 8 && !decided; ++round) {
            Ball in_b = ev.eval_to_radius(c, target);
            Ball out_b = jt->second.enclosure(target);
            Ball diff = in_b - out_b;
            if (diff.mag_ub() < epsv) {
              worst = max(worst, diff.mag_ub());
              decided = true;
            } else if (diff.mag_lb() > epsv) {
              e.status = "fail";
              e.witness = "certified |g-g'| >= " + diff.mag_lb().str() + " > eps at polynomial " +
                          std::to_string(i + 1);
              decided = true;
            }
            target = target * Rat(1, 16);
          }
          if (!decided) {
            e.status = "inconclusive";
            e.witness = "closeness undecided at the precision cap";
          }
          if (e.status != "pass") break;
        }
      }
    } catch (const Error& err) {
      e.status = "inconclusive";
      e.witness = err.what();
    }
    if (e.status == "pass")
      e.witness = "max certified |g_ia - g'_ia| <= " + worst.str() + " < " + epsv.str();
    entries.push_back(std::move(e));
  }
  return entries;
}

std::vector<CheckEntry> check_relations(const DescentProblem& prob, const DescentOutput& out,
                                        const std::vector<MPoly<Rat>>& relations, bool strict) {
  std::vector<CheckEntry> entries;
  std::vector<TowerElem> in_c = coefficient_list(prob);
  std::vector<AlgNum> out_c = output_coefficient_list(prob, out);
  TowerElem one_k = TowerElem::one(prob.F);
  AlgNum one_a = AlgNum::one(out.algebra);
  for (size_t ri = 0; ri < relations.size(); ++ri) {
    CheckEntry e{"relation-" + std::to_string(ri + 1), "pass", ""};
    const MPoly<Rat>& rel = relations[ri];
    if (rel.nvars() > in_c.size()) {
      if (strict) fail(errc::validation_error, "relation uses more variables than coefficients");
      e.status = "fail";
      e.witness = "relation uses more variables than there are coefficients";
      entries.push_back(std::move(e));
      continue;
    }
    std::vector<TowerElem> in_pt(in_c.begin(), in_c.begin() + rel.nvars());
    TowerElem lhs = eval_mpoly(rel, in_pt, one_k);
    if (!tw_is_zero(lhs)) {
      if (strict)
        fail(errc::relation_not_satisfied, "relation does not vanish on the input coefficients");
      e.status = "fail";
      e.witness = "RelationNotSatisfiedByInput: relation does not vanish on the inputs";
      entries.push_back(std::move(e));
      continue;
    }
    std::vector<AlgNum> out_pt(out_c.begin(), out_c.begin() + rel.nvars());
    AlgNum rhs = eval_mpoly(rel, out_pt, one_a);
    if (alg_is_zero_embedded(rhs)) {
      e.witness = "holds exactly on the outputs (rep = " + up_str(rhs.rep(), "z") + ")";
    } else {
      e.status = "fail";
      e.witness = "relation image nonzero at the embedding: rep = " + up_str(rhs.rep(), "z");
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

namespace {

template <class C>
std::string levels_str(const Cascade<C>& c) {
  std::string s = "(";
  for (size_t k = 0; k < c.levels.size(); ++k) {
    if (k) s += ",";
    s += "(" + std::to_string(c.levels[k].d) + "," + std::to_string(c.levels[k].l) + ")";
  }
  return s + ")";
}

}  // namespace

CheckEntry check_cascade_match(const DescentProblem& prob, const DescentOutput& out) {
  CheckEntry e{"cascade-match", "pass", ""};
  TowerElem one_k = TowerElem::one(prob.F);
  try {
    // the certificate is literally sound (Eqs. (2)/(3) re-evaluated)
    check_certificate(out.certificate, one_k);
    // and reproduces from the problem inputs with the recorded changes
    CascadeReplay rep = replay_of(out.certificate);
    Cascade<TowerElem> re = build_cascade(prob.inputs, one_k, prob.homogeneous, &rep);
    if (re.levels.size() != out.certificate.levels.size())
      fail(errc::validation_error, "certificate level count does not match the problem");
    for (size_t k = 0; k < re.levels.size(); ++k) {
      const auto& a = re.levels[k];
      const auto& b = out.certificate.levels[k];
      if (a.j != b.j || a.d != b.d || a.l != b.l || !(a.e == b.e) || !(a.f == b.f))
        fail(errc::validation_error, "certificate level " + std::to_string(k) + " does not match");
    }
    if (!(re.final_unit == out.certificate.final_unit))
      fail(errc::validation_error, "certificate final unit does not match");

    // every recorded unit specializes to a nonzero value at the embedding
    for (const auto& u : certificate_units(out.certificate)) {
      AlgNum img = eval_tower_at_point(u, out.algebra);
      if (alg_is_zero_embedded(img))
        fail(errc::validation_error, "a cascade unit specializes to zero at q");
    }

    // replay the cascade over the output algebra with the recorded changes
    AlgNum one_a = AlgNum::one(out.algebra);
    Cascade<AlgNum> spec = build_cascade(out.outputs, one_a, prob.homogeneous, &rep);
    if (spec.levels.size() != out.certificate.levels.size())
      fail(errc::validation_error, "specialized cascade has a different level count");
    for (size_t k = 0; k < spec.levels.size(); ++k) {
      const auto& a = out.certificate.levels[k];
      const auto& b = spec.levels[k];
      if (a.j != b.j || a.d != b.d || a.l != b.l)
        fail(errc::validation_error, "specialized level " + std::to_string(k) + ": (d,l) = (" +
                                         std::to_string(b.d) + "," + std::to_string(b.l) +
                                         ") differs from (" + std::to_string(a.d) + "," +
                                         std::to_string(a.l) + ")");
      if (b.e.is_zero()) fail(errc::validation_error, "specialized unit vanishes at the embedding");
    }
    if (spec.final_unit.is_zero())
      fail(errc::validation_error, "specialized final unit vanishes at the embedding");
    e.witness = "levels " + levels_str(out.certificate) + " match on both sides; units nonzero";
  } catch (const Error& err) {
    e.status = "fail";
    e.witness = err.what();
  }
  return e;
}

CheckEntry groebner_trace_compare(const DescentProblem& prob, const DescentOutput& out,
                                  MonomialOrder order) {
  CheckEntry e{"groebner-trace", "pass", ""};
  TowerElem one_k = TowerElem::one(prob.F);
  AlgNum one_a = AlgNum::one(out.algebra);
  try {
    GroebnerRun a = buchberger_trace(prob.inputs, order, one_k);
    GroebnerRun b = buchberger_trace(out.outputs, order, one_a);
    if (a.steps.size() != b.steps.size()) {
      e.status = "fail";
      e.witness = "TraceDivergence: step counts differ (" + std::to_string(a.steps.size()) + " vs " +
                  std::to_string(b.steps.size()) + ")";
      return e;
    }
    for (size_t k = 0; k < a.steps.size(); ++k)
      if (!(a.steps[k] == b.steps[k])) {
        e.status = "fail";
        e.witness = "TraceDivergence at step " + std::to_string(k + 1);
        return e;
      }
    if (a.basis_lts != b.basis_lts) {
      e.status = "fail";
      e.witness = "leading-term ideals differ";
      return e;
    }
    std::string lts;
    auto names = default_names("x", prob.inputs[0].nvars());
    for (size_t k = 0; k < a.basis_lts.size(); ++k) {
      if (k) lts += ", ";
      lts += exp_str(a.basis_lts[k], names);
    }
    e.witness = "identical traces (" + std::to_string(a.steps.size()) +
                " steps); leading-term ideal { " + lts + " }";
  } catch (const Error& err) {
    if (err.code() == errc::guard_exceeded) {
      e.status = "inconclusive";
      e.witness = err.what();
    } else {
      e.status = "fail";
      e.witness = err.what();
    }
  }
  return e;
}

VerificationReport verify_output(const DescentProblem& prob, const DescentOutput& out) {
  VerificationReport rep;
  for (auto& e : check_support_and_closeness(prob, out)) rep.entries.push_back(std::move(e));

  std::vector<MPoly<Rat>> rels = auto_relations(prob);
  size_t autos = rels.size();
  uint32_t m = 0;
  for (const auto& g : prob.inputs) m += static_cast<uint32_t>(g.term_count());
  for (const auto& text : prob.relations) {
    struct YCtx {
      uint32_t m;
      using V = MPoly<Rat>;
      V from_rat(const Rat& r) { return V::constant(m, r); }
      V from_gauss(const GaussRat& g) {
        if (!g.is_real()) fail(errc::parse_error, "complex constant in a rational relation");
        return V::constant(m, g.re());
      }
      V variable(const std::string& n) {
        if (n.size() >= 2 && n[0] == 'y') {
          unsigned long idx = std::stoul(n.substr(1));
          if (idx >= 1 && idx <= m) return V::variable(m, static_cast<uint32_t>(idx - 1), Rat(1));
        }
        fail(errc::parse_error, "unknown relation variable: " + n);
      }
      V divide(const V& a, const V& b) {
        if (!b.is_constant() || b.is_zero()) fail(errc::parse_error, "division by nonconstant in relation");
        return scale_rat(a, b.constant_value().inv());
      }
    } ctx{m};
    rels.push_back(eval_expr<MPoly<Rat>>(parse_expression(text), ctx));
  }
  auto entries = check_relations(prob, out, rels, false);
  for (size_t k = 0; k < entries.size(); ++k) {
    entries[k].name = (k < autos ? "relation-auto-" : "relation-user-") +
                      std::to_string(k < autos ? k + 1 : k - autos + 1);
    rep.entries.push_back(std::move(entries[k]));
  }

  rep.entries.push_back(check_cascade_match(prob, out));
  rep.entries.push_back(groebner_trace_compare(prob, out, prob.order));
  return rep;
}

}  // namespace zeq
