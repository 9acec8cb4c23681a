#ifndef ZEQ_PROBLEM_IO_HPP
#define ZEQ_PROBLEM_IO_HPP

#include <string>

#include <json.hpp>

#include "zeq/descent.hpp"
#include "zeq/verify.hpp"

namespace zeq {

using Json = nlohmann::ordered_json;

// Problem files are JSON with every number carried as an exact rational
// string; polynomials are accepted either as expression strings or as the
// canonical term-list objects that serialization emits.

DescentProblem parse_problem(const std::string& text);
std::string serialize_problem(const DescentProblem& prob);

std::string serialize_output(const DescentOutput& out);
DescentOutput parse_output(const std::string& text, const DescentProblem& prob);

std::string serialize_certificate(const Cascade<TowerElem>& cert);
Cascade<TowerElem> parse_certificate(const std::string& text, const PresentationPtr& F);

std::string serialize_report(const VerificationReport& rep);
VerificationReport parse_report(const std::string& text);

// building blocks shared with the CLI and tests
MPoly<TowerElem> parse_tower_poly(const std::string& expr, const PresentationPtr& F, uint32_t n);
TowerElem parse_tower_elem(const std::string& canonical, const PresentationPtr& F);
Upoly<RatFunc> parse_P(const std::string& expr, uint32_t r);
Upoly<GaussRat> parse_gauss_upoly(const std::string& expr);
Upoly<Rat> parse_q_upoly(const std::string& expr, const std::string& var);
std::vector<GaussRat> parse_point(const std::string& commas);
std::string tower_poly_str(const MPoly<TowerElem>& f);

}  // namespace zeq

#endif
