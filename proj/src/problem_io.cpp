#include "zeq/problem_io.hpp"

#include <map>

#include "zeq/expr.hpp"

namespace zeq {

namespace {

// ---------------------------------------------------------------------------
// expression evaluation contexts

struct RatFuncCtx {
  uint32_t r;
  using V = RatFunc;
  V from_rat(const Rat& x) { return RatFunc(x); }
  V from_gauss(const GaussRat& g) {
    if (!g.is_real()) fail(errc::parse_error, "complex constant in a rational function");
    return RatFunc(g.re());
  }
  V variable(const std::string& n) {
    if (n.size() >= 2 && n[0] == 't') {
      unsigned long i = std::stoul(n.substr(1));
      if (i >= 1 && i <= r) return RatFunc::var(r, static_cast<uint32_t>(i - 1));
    }
    fail(errc::parse_error, "unknown variable in rational function: " + n);
  }
  V divide(const V& a, const V& b) { return a / b; }
};

struct TowerPolyCtx {
  PresentationPtr F;
  uint32_t n;
  using V = MPoly<TowerElem>;
  V from_rat(const Rat& x) { return V::constant(n, TowerElem::from_rat(F, x)); }
  V from_gauss(const GaussRat& g) {
    if (!g.is_real()) fail(errc::parse_error, "complex constant in a tower coefficient");
    return from_rat(g.re());
  }
  V variable(const std::string& nm) {
    if (nm == "z") return V::constant(n, TowerElem::z_gen(F));
    if (nm.size() >= 2 && nm[0] == 'x') {
      unsigned long i = std::stoul(nm.substr(1));
      if (i >= 1 && i <= n) return V::variable(n, static_cast<uint32_t>(i - 1), TowerElem::one(F));
    }
    if (nm.size() >= 2 && nm[0] == 't') {
      unsigned long i = std::stoul(nm.substr(1));
      if (i >= 1 && i <= F->r) return V::constant(n, TowerElem::t_var(F, static_cast<uint32_t>(i - 1)));
    }
    fail(errc::parse_error, "unknown variable in polynomial: " + nm);
  }
  V divide(const V& a, const V& b) {
    if (b.is_zero()) fail(errc::division_by_zero, "division by zero in polynomial expression");
    if (!b.is_constant()) fail(errc::parse_error, "division by a nonconstant polynomial");
    return a.scaled(b.constant_value().inv());
  }
};

struct PCtx {
  uint32_t r;
  using V = MPoly<RatFunc>;  // univariate in z
  V from_rat(const Rat& x) { return V::constant(1, RatFunc(x)); }
  V from_gauss(const GaussRat& g) {
    if (!g.is_real()) fail(errc::parse_error, "complex constant in P");
    return from_rat(g.re());
  }
  V variable(const std::string& nm) {
    if (nm == "z") return V::variable(1, 0, RatFunc(Rat(1)));
    if (nm.size() >= 2 && nm[0] == 't') {
      unsigned long i = std::stoul(nm.substr(1));
      if (i >= 1 && i <= r) return V::constant(1, RatFunc::var(r, static_cast<uint32_t>(i - 1)));
    }
    fail(errc::parse_error, "unknown variable in P: " + nm);
  }
  V divide(const V& a, const V& b) {
    if (b.is_zero()) fail(errc::division_by_zero, "division by zero in P");
    if (!b.is_constant()) fail(errc::parse_error, "division by a z-dependent value in P");
    return a.scaled(b.constant_value().inv());
  }
};

struct GaussPolyCtx {
  using V = MPoly<GaussRat>;  // univariate in z
  V from_rat(const Rat& x) { return V::constant(1, GaussRat(x)); }
  V from_gauss(const GaussRat& g) { return V::constant(1, g); }
  V variable(const std::string& nm) {
    if (nm == "z") return V::variable(1, 0, GaussRat(Rat(1)));
    fail(errc::parse_error, "unknown variable (expected z): " + nm);
  }
  V divide(const V& a, const V& b) {
    if (b.is_zero()) fail(errc::division_by_zero, "division by zero");
    if (!b.is_constant()) fail(errc::parse_error, "division by a z-dependent value");
    GaussRat c = b.constant_value();
    return a.scaled(GaussRat(Rat(1)) / c);
  }
};

struct QVarCtx {
  std::string var;
  using V = MPoly<Rat>;
  V from_rat(const Rat& x) { return V::constant(1, x); }
  V from_gauss(const GaussRat& g) {
    if (!g.is_real()) fail(errc::parse_error, "complex constant in a rational polynomial");
    return from_rat(g.re());
  }
  V variable(const std::string& nm) {
    if (nm == var) return V::variable(1, 0, Rat(1));
    fail(errc::parse_error, "unknown variable (expected " + var + "): " + nm);
  }
  V divide(const V& a, const V& b) {
    if (!b.is_constant() || b.is_zero()) fail(errc::parse_error, "division by a nonconstant");
    return scale_rat(a, b.constant_value().inv());
  }
};

std::vector<std::string> split_top_commas(const std::string& s) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

Rat jrat(const Json& j) { return Rat::from_string(j.get<std::string>()); }
GaussRat jgauss(const Json& j) { return GaussRat::from_string(j.get<std::string>()); }

Json box_to_json(const Box& b) {
  return Json::array({b.re_lo.str(), b.re_hi.str(), b.im_lo.str(), b.im_hi.str()});
}
Box box_from_json(const Json& j) {
  return Box{jrat(j.at(0)), jrat(j.at(1)), jrat(j.at(2)), jrat(j.at(3))};
}

Json tower_mpoly_to_json(const MPoly<TowerElem>& f) {
  Json terms = Json::array();
  for (const auto& [e, c] : f.terms()) {
    Json t;
    t["exps"] = e;
    t["coeff"] = c.str();
    terms.push_back(std::move(t));
  }
  Json out;
  out["nvars"] = f.nvars();
  out["terms"] = std::move(terms);
  return out;
}

MPoly<TowerElem> tower_mpoly_from_json(const Json& j, const PresentationPtr& F) {
  MPoly<TowerElem> f(j.at("nvars").get<uint32_t>());
  for (const auto& t : j.at("terms")) {
    Exp e = t.at("exps").get<Exp>();
    f.add_term(std::move(e), parse_tower_elem(t.at("coeff").get<std::string>(), F));
  }
  return f;
}

Json change_to_json(const LinearChange& ch) {
  Json mu = Json::array();
  for (const auto& m : ch.mu) mu.push_back(m.str());
  Json out;
  out["level"] = ch.level;
  out["mu"] = std::move(mu);
  return out;
}
LinearChange change_from_json(const Json& j) {
  LinearChange ch;
  ch.level = j.at("level").get<uint32_t>();
  for (const auto& m : j.at("mu")) ch.mu.push_back(jrat(m));
  return ch;
}

Json binding_to_json(const ComputableScalar& c) {
  Json out;
  switch (c.kind()) {
    case ComputableScalar::Kind::rational:
      out["kind"] = "rational";
      out["value"] = c.rational_value().str();
      break;
    case ComputableScalar::Kind::pi: out["kind"] = "pi"; break;
    case ComputableScalar::Kind::e: out["kind"] = "e"; break;
    case ComputableScalar::Kind::log_rat:
      out["kind"] = "log";
      out["arg"] = c.argument().str();
      break;
    case ComputableScalar::Kind::exp_rat:
      out["kind"] = "exp";
      out["arg"] = c.argument().str();
      break;
    case ComputableScalar::Kind::oracle:
      out["kind"] = "oracle";
      out["command"] = c.oracle_session()->command();
      out["index"] = c.oracle_index();
      break;
  }
  return out;
}

ComputableScalar binding_from_json(const Json& j,
                                   std::map<std::string, std::shared_ptr<OracleSession>>& sessions) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "rational") return ComputableScalar::rational(jgauss(j.at("value")));
  if (kind == "pi") return ComputableScalar::pi();
  if (kind == "e") return ComputableScalar::euler();
  if (kind == "log") return ComputableScalar::log_of(jrat(j.at("arg")));
  if (kind == "exp") return ComputableScalar::exp_of(jrat(j.at("arg")));
  if (kind == "oracle") {
    std::string cmd = j.at("command").get<std::string>();
    auto& s = sessions[cmd];
    if (!s) s = std::make_shared<OracleSession>(cmd);
    return ComputableScalar::oracle(s, j.value("index", 0));
  }
  fail(errc::validation_error, "unknown binding kind: " + kind);
}

}  // namespace

// ---------------------------------------------------------------------------

MPoly<TowerElem> parse_tower_poly(const std::string& expr, const PresentationPtr& F, uint32_t n) {
  TowerPolyCtx ctx{F, n};
  return eval_expr<MPoly<TowerElem>>(parse_expression(expr), ctx);
}

TowerElem parse_tower_elem(const std::string& canonical, const PresentationPtr& F) {
  std::vector<std::string> parts = split_top_commas(canonical);
  if (parts.size() > F->d) fail(errc::parse_error, "tower element with too many coordinates");
  RatFuncCtx ctx{F->r};
  std::vector<RatFunc> coords;
  coords.reserve(parts.size());
  for (const auto& p : parts) coords.push_back(eval_expr<RatFunc>(parse_expression(p), ctx));
  return TowerElem(F, std::move(coords));
}

Upoly<RatFunc> parse_P(const std::string& expr, uint32_t r) {
  PCtx ctx{r};
  MPoly<RatFunc> p = eval_expr<MPoly<RatFunc>>(parse_expression(expr), ctx);
  Upoly<RatFunc> out;
  int64_t d = p.degree_in(0);
  for (int64_t k = 0; k <= d; ++k) {
    MPoly<RatFunc> c = p.coeff_in(0, static_cast<uint32_t>(k));
    out.push_back(c.is_zero() ? RatFunc() : c.constant_value());
  }
  up_trim(out);
  return out;
}

Upoly<GaussRat> parse_gauss_upoly(const std::string& expr) {
  GaussPolyCtx ctx;
  MPoly<GaussRat> p = eval_expr<MPoly<GaussRat>>(parse_expression(expr), ctx);
  Upoly<GaussRat> out;
  int64_t d = p.degree_in(0);
  for (int64_t k = 0; k <= d; ++k) {
    MPoly<GaussRat> c = p.coeff_in(0, static_cast<uint32_t>(k));
    out.push_back(c.is_zero() ? GaussRat(Rat(0)) : c.constant_value());
  }
  up_trim(out);
  return out;
}

Upoly<Rat> parse_q_upoly(const std::string& expr, const std::string& var) {
  QVarCtx ctx{var};
  MPoly<Rat> p = eval_expr<MPoly<Rat>>(parse_expression(expr), ctx);
  Upoly<Rat> out;
  int64_t d = p.degree_in(0);
  for (int64_t k = 0; k <= d; ++k) {
    MPoly<Rat> c = p.coeff_in(0, static_cast<uint32_t>(k));
    out.push_back(c.is_zero() ? Rat(0) : c.constant_value());
  }
  up_trim(out);
  return out;
}

std::vector<GaussRat> parse_point(const std::string& commas) {
  std::vector<GaussRat> out;
  if (commas.empty()) return out;
  for (const auto& p : split_top_commas(commas)) out.push_back(GaussRat::from_string(p));
  return out;
}

std::string tower_poly_str(const MPoly<TowerElem>& f) {
  if (f.is_zero()) return "0";
  std::string out;
  const auto& t = f.terms();
  auto names = default_names("x", f.nvars());
  for (auto it = t.rbegin(); it != t.rend(); ++it) {
    if (!out.empty()) out += " + ";
    std::string term = "[" + it->second.str() + "]";
    for (uint32_t k = 0; k < it->first.size(); ++k)
      if (it->first[k] != 0) term += "*" + names[k] + "^" + std::to_string(it->first[k]);
    out += term;
  }
  return out;
}

// ---------------------------------------------------------------------------
// problem files

DescentProblem parse_problem(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(errc::parse_error, std::string("problem file is not valid JSON: ") + e.what());
  }
  try {
    DescentProblem prob;
    std::string ground_s = j.at("ground").get<std::string>();
    if (ground_s != "R" && ground_s != "C") fail(errc::validation_error, "ground must be R or C");
    Ground ground = ground_s == "R" ? Ground::R : Ground::C;
    uint32_t r = j.at("r").get<uint32_t>();
    uint32_t d = j.at("d").get<uint32_t>();
    Upoly<RatFunc> P = parse_P(j.at("P").get<std::string>(), r);
    if (up_deg(P) != static_cast<int64_t>(d))
      fail(errc::validation_error, "deg_z P does not match the declared d");

    std::map<std::string, std::shared_ptr<OracleSession>> sessions;
    std::vector<ComputableScalar> bindings;
    for (const auto& b : j.at("bindings")) bindings.push_back(binding_from_json(b, sessions));

    Ball selector = Ball::exact(GaussRat(Rat(0)));
    if (j.contains("z_selector")) {
      const Json& s = j.at("z_selector");
      selector = Ball(GaussRat(jrat(s.at("re")), jrat(s.at("im"))), jrat(s.at("radius")),
                      ground == Ground::R);
    }
    prob.F = make_presentation(r, d, std::move(P), std::move(bindings), selector, ground);

    uint32_t n = j.at("n").get<uint32_t>();
    for (const auto& g : j.at("polynomials")) {
      MPoly<TowerElem> p = g.is_string() ? parse_tower_poly(g.get<std::string>(), prob.F, n)
                                         : tower_mpoly_from_json(g, prob.F);
      if (p.nvars() != n) fail(errc::validation_error, "polynomial variable count mismatch");
      prob.inputs.push_back(std::move(p));
    }
    if (prob.inputs.empty()) fail(errc::validation_error, "no polynomials given");

    prob.epsilon = jrat(j.at("epsilon"));
    if (prob.epsilon.sign() <= 0) fail(errc::validation_error, "epsilon must be positive");
    prob.homogeneous = j.value("homogeneous", false);
    if (j.contains("relations"))
      for (const auto& rl : j.at("relations")) prob.relations.push_back(rl.get<std::string>());
    std::string ord = j.value("order", std::string("grlex"));
    if (ord != "grlex" && ord != "lex") fail(errc::validation_error, "order must be grlex or lex");
    prob.order = ord == "grlex" ? MonomialOrder::grlex : MonomialOrder::lex;
    if (j.contains("limits")) {
      const Json& l = j.at("limits");
      prob.limits.prec_cap = l.value("precision_cap", prob.limits.prec_cap);
      prob.limits.grid_cap = l.value("grid_cap", prob.limits.grid_cap);
    }
    return prob;
  } catch (const nlohmann::json::exception& e) {
    fail(errc::parse_error, std::string("problem file: ") + e.what());
  }
}

std::string serialize_problem(const DescentProblem& prob) {
  const FieldPresentation& F = *prob.F;
  Json j;
  j["ground"] = F.ground == Ground::R ? "R" : "C";
  j["r"] = F.r;
  j["d"] = F.d;
  std::string pstr;
  for (size_t k = F.P.size(); k-- > 0;) {
    if (!pstr.empty()) pstr += " + ";
    pstr += "(" + F.P[k].str() + ")*z^" + std::to_string(k);
  }
  j["P"] = pstr;
  Json bindings = Json::array();
  for (const auto& b : F.bindings) bindings.push_back(binding_to_json(b));
  j["bindings"] = std::move(bindings);
  Json sel;
  sel["re"] = F.z_selector.center().re().str();
  sel["im"] = F.z_selector.center().im().str();
  sel["radius"] = F.z_selector.radius().str();
  j["z_selector"] = std::move(sel);
  j["n"] = prob.inputs.empty() ? 0 : prob.inputs[0].nvars();
  Json polys = Json::array();
  for (const auto& g : prob.inputs) polys.push_back(tower_mpoly_to_json(g));
  j["polynomials"] = std::move(polys);
  j["epsilon"] = prob.epsilon.str();
  j["homogeneous"] = prob.homogeneous;
  Json rels = Json::array();
  for (const auto& r : prob.relations) rels.push_back(r);
  j["relations"] = std::move(rels);
  j["order"] = prob.order == MonomialOrder::grlex ? "grlex" : "lex";
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// certificates

namespace {

Json cascade_to_json(const Cascade<TowerElem>& c) {
  Json j;
  j["n"] = c.n;
  j["s"] = c.s;
  j["k0"] = c.k0;
  j["homogeneous"] = c.homogeneous;
  j["input_change"] = change_to_json(c.input_change);
  Json ics = Json::array();
  for (const auto& u : c.input_constants) ics.push_back(u.str());
  j["input_constants"] = std::move(ics);
  Json fs = Json::array();
  for (const auto& f : c.factors) fs.push_back(tower_mpoly_to_json(f));
  j["factors"] = std::move(fs);
  Json lv = Json::array();
  for (const auto& l : c.levels) {
    Json e;
    e["j"] = l.j;
    e["d"] = l.d;
    e["l"] = l.l;
    e["change"] = change_to_json(l.change);
    e["e"] = l.e.str();
    e["f"] = tower_mpoly_to_json(l.f);
    lv.push_back(std::move(e));
  }
  j["levels"] = std::move(lv);
  j["final_unit"] = c.final_unit.str();
  j["stripped_zero_inputs"] = c.stripped_zero_inputs;
  j["stripped_constant_inputs"] = c.stripped_constant_inputs;
  return j;
}

Cascade<TowerElem> cascade_from_json(const Json& j, const PresentationPtr& F) {
  Cascade<TowerElem> c;
  c.n = j.at("n").get<uint32_t>();
  c.s = j.at("s").get<size_t>();
  c.k0 = j.at("k0").get<uint32_t>();
  c.homogeneous = j.at("homogeneous").get<bool>();
  c.input_change = change_from_json(j.at("input_change"));
  for (const auto& u : j.at("input_constants"))
    c.input_constants.push_back(parse_tower_elem(u.get<std::string>(), F));
  for (const auto& f : j.at("factors")) c.factors.push_back(tower_mpoly_from_json(f, F));
  for (const auto& e : j.at("levels")) {
    CascadeLevel<TowerElem> l{e.at("j").get<uint32_t>(), e.at("d").get<int64_t>(),
                              e.at("l").get<size_t>(), change_from_json(e.at("change")),
                              parse_tower_elem(e.at("e").get<std::string>(), F),
                              tower_mpoly_from_json(e.at("f"), F)};
    c.levels.push_back(std::move(l));
  }
  c.final_unit = parse_tower_elem(j.at("final_unit").get<std::string>(), F);
  c.stripped_zero_inputs = j.at("stripped_zero_inputs").get<std::vector<size_t>>();
  c.stripped_constant_inputs = j.at("stripped_constant_inputs").get<std::vector<size_t>>();
  return c;
}

}  // namespace

std::string serialize_certificate(const Cascade<TowerElem>& cert) {
  return cascade_to_json(cert).dump(2) + "\n";
}

Cascade<TowerElem> parse_certificate(const std::string& text, const PresentationPtr& F) {
  try {
    return cascade_from_json(Json::parse(text), F);
  } catch (const nlohmann::json::exception& e) {
    fail(errc::parse_error, std::string("certificate file: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// outputs

std::string serialize_output(const DescentOutput& out) {
  Json j;
  Json q = Json::array();
  for (const auto& x : out.q) q.push_back(x.str());
  j["q"] = std::move(q);
  j["ground"] = out.algebra->ground() == Ground::R ? "R" : "C";
  Json alg;
  alg["modulus"] = up_str(out.algebra->modulus(), "z");
  alg["selected"] = out.algebra->selected();
  Json boxes = Json::array();
  for (const auto& b : out.algebra->boxes()) boxes.push_back(box_to_json(b));
  alg["boxes"] = std::move(boxes);
  alg["delta"] = out.algebra->delta() ? Json(out.algebra->delta()->str()) : Json(nullptr);
  j["algebra"] = std::move(alg);
  Json outs = Json::array();
  for (const auto& g : out.outputs) {
    Json terms = Json::array();
    for (const auto& [e, c] : g.terms()) {
      Json t;
      t["exps"] = e;
      t["rep"] = up_str(c.rep(), "z");
      terms.push_back(std::move(t));
    }
    Json og;
    og["nvars"] = g.nvars();
    og["terms"] = std::move(terms);
    outs.push_back(std::move(og));
  }
  j["outputs"] = std::move(outs);
  j["epsilon_used"] = out.eps_used.str();
  j["achieved_epsilon"] = out.achieved_eps.str();
  if (out.bounds) {
    Json b;
    b["epsilon"] = out.bounds->epsilon.str();
    b["M"] = out.bounds->M.str();
    b["C_upper"] = out.bounds->C_upper.str();
    b["K_tail"] = out.bounds->K_tail;
    b["eta"] = out.bounds->eta ? Json(out.bounds->eta->str()) : Json(nullptr);
    b["delta"] = out.algebra->delta() ? Json(out.algebra->delta()->str()) : Json(nullptr);
    j["bounds"] = std::move(b);
  } else {
    j["bounds"] = nullptr;
  }
  Json ball;
  ball["ok"] = out.ball_certificate.ok;
  ball["rho"] = out.ball_certificate.rho.str();
  ball["max_depth"] = out.ball_certificate.max_depth_seen;
  Json cells = Json::array();
  for (const auto& per : out.ball_certificate.per_poly) {
    Json list = Json::array();
    for (const auto& cw : per) {
      Json c;
      Json coords = Json::array();
      for (const auto& b : cw.cell) coords.push_back(box_to_json(b));
      c["cell"] = std::move(coords);
      c["mag_lb"] = cw.value_mag_lb.str();
      list.push_back(std::move(c));
    }
    cells.push_back(std::move(list));
  }
  ball["cells"] = std::move(cells);
  j["ball_certificate"] = std::move(ball);
  Json log = Json::array();
  for (const auto& w : out.conditions_log) {
    Json e;
    e["what"] = w.what;
    e["value"] = w.value;
    e["ok"] = w.ok;
    log.push_back(std::move(e));
  }
  j["conditions_log"] = std::move(log);
  Json track;
  track["root_index"] = out.track.root_index;
  track["box"] = box_to_json(out.track.box);
  track["steps"] = out.track.steps;
  j["track"] = std::move(track);
  j["certificate"] = cascade_to_json(out.certificate);
  return j.dump(2) + "\n";
}

DescentOutput parse_output(const std::string& text, const DescentProblem& prob) {
  try {
    Json j = Json::parse(text);
    DescentOutput out;
    for (const auto& x : j.at("q")) out.q.push_back(GaussRat::from_string(x.get<std::string>()));
    Ground ground = j.at("ground").get<std::string>() == "R" ? Ground::R : Ground::C;
    Upoly<GaussRat> modulus = parse_gauss_upoly(j.at("algebra").at("modulus").get<std::string>());
    size_t selected = j.at("algebra").at("selected").get<size_t>();
    out.algebra = EtaleAlgebra::make(std::move(modulus), ground, out.q, selected,
                                     prob.limits.isolate_prec_cap);
    for (const auto& og : j.at("outputs")) {
      MPoly<AlgNum> g(og.at("nvars").get<uint32_t>());
      for (const auto& t : og.at("terms")) {
        Exp e = t.at("exps").get<Exp>();
        Upoly<GaussRat> rep = parse_gauss_upoly(t.at("rep").get<std::string>());
        g.add_term(std::move(e), AlgNum(out.algebra, std::move(rep)));
      }
      out.outputs.push_back(std::move(g));
    }
    out.eps_used = jrat(j.at("epsilon_used"));
    out.achieved_eps = jrat(j.at("achieved_epsilon"));
    if (!j.at("bounds").is_null()) {
      TailBounds b;
      const Json& jb = j.at("bounds");
      b.epsilon = jrat(jb.at("epsilon"));
      b.M = jrat(jb.at("M"));
      b.C_upper = jrat(jb.at("C_upper"));
      b.K_tail = jb.at("K_tail").get<unsigned>();
      if (!jb.at("eta").is_null()) b.eta = jrat(jb.at("eta"));
      if (!jb.at("delta").is_null()) b.delta = jrat(jb.at("delta"));
      out.bounds = b;
    }
    const Json& ball = j.at("ball_certificate");
    out.ball_certificate.ok = ball.at("ok").get<bool>();
    out.ball_certificate.rho = jrat(ball.at("rho"));
    out.ball_certificate.max_depth_seen = ball.at("max_depth").get<int>();
    for (const auto& per : ball.at("cells")) {
      std::vector<CellWitness> list;
      for (const auto& c : per) {
        CellWitness cw;
        for (const auto& b : c.at("cell")) cw.cell.push_back(box_from_json(b));
        cw.value_mag_lb = jrat(c.at("mag_lb"));
        list.push_back(std::move(cw));
      }
      out.ball_certificate.per_poly.push_back(std::move(list));
    }
    for (const auto& w : j.at("conditions_log"))
      out.conditions_log.push_back(
          {w.at("what").get<std::string>(), w.at("value").get<std::string>(), w.at("ok").get<bool>()});
    out.track.root_index = j.at("track").at("root_index").get<size_t>();
    out.track.box = box_from_json(j.at("track").at("box"));
    out.track.steps = j.at("track").at("steps").get<long>();
    out.certificate = cascade_from_json(j.at("certificate"), prob.F);
    return out;
  } catch (const nlohmann::json::exception& e) {
    fail(errc::parse_error, std::string("output file: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// reports

std::string serialize_report(const VerificationReport& rep) {
  Json j;
  Json checks = Json::array();
  for (const auto& e : rep.entries) {
    Json c;
    c["name"] = e.name;
    c["status"] = e.status;
    c["witness"] = e.witness;
    checks.push_back(std::move(c));
  }
  j["checks"] = std::move(checks);
  j["summary"] = rep.any_fail() ? "fail" : (rep.any_inconclusive() ? "inconclusive" : "pass");
  return j.dump(2) + "\n";
}

VerificationReport parse_report(const std::string& text) {
  try {
    Json j = Json::parse(text);
    VerificationReport rep;
    for (const auto& c : j.at("checks"))
      rep.entries.push_back({c.at("name").get<std::string>(), c.at("status").get<std::string>(),
                             c.at("witness").get<std::string>()});
    return rep;
  } catch (const nlohmann::json::exception& e) {
    fail(errc::parse_error, std::string("report file: ") + e.what());
  }
}

}  // namespace zeq
