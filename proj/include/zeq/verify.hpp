#ifndef ZEQ_VERIFY_HPP
#define ZEQ_VERIFY_HPP

#include <string>
#include <vector>

#include "zeq/descent.hpp"

namespace zeq {

struct CheckEntry {
  std::string name;
  std::string status;  // "pass" | "fail" | "inconclusive"
  std::string witness;
};

struct VerificationReport {
  std::vector<CheckEntry> entries;

  bool any_fail() const {
    for (const auto& e : entries)
      if (e.status == "fail") return true;
    return false;
  }
  bool any_inconclusive() const {
    for (const auto& e : entries)
      if (e.status == "inconclusive") return true;
    return false;
  }
  bool all_pass() const { return !any_fail() && !any_inconclusive(); }
};

/// Relation variables y1..ym enumerate the input coefficients: polynomial
/// index ascending, terms in descending graded-lex order (leading first).
std::vector<TowerElem> coefficient_list(const DescentProblem& prob);
std::vector<AlgNum> output_coefficient_list(const DescentProblem& prob, const DescentOutput& out);

/// Relations generated from the presentation: equalities between syntactically
/// equal coefficients, and the defining relation of z (denominators cleared)
/// when z and every t_i appear among the coefficients.
std::vector<MPoly<Rat>> auto_relations(const DescentProblem& prob);

std::vector<CheckEntry> check_support_and_closeness(const DescentProblem& prob,
                                                    const DescentOutput& out);

/// Each relation must vanish on the input coefficients (exact tower test);
/// with strict=true a violated precondition throws RelationNotSatisfiedByInput,
/// otherwise it is reported as a failing entry.
std::vector<CheckEntry> check_relations(const DescentProblem& prob, const DescentOutput& out,
                                        const std::vector<MPoly<Rat>>& relations,
                                        bool strict = true);

CheckEntry check_cascade_match(const DescentProblem& prob, const DescentOutput& out);

CheckEntry groebner_trace_compare(const DescentProblem& prob, const DescentOutput& out,
                                  MonomialOrder order);

/// The full report: support, closeness, relations (auto + user-supplied),
/// cascade match, Groebner trace.
VerificationReport verify_output(const DescentProblem& prob, const DescentOutput& out);

}  // namespace zeq

#endif
