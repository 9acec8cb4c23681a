#ifndef ZEQ_DESCENT_HPP
#define ZEQ_DESCENT_HPP

#include <optional>
#include <string>
#include <vector>

#include "zeq/algnum.hpp"
#include "zeq/cascade.hpp"
#include "zeq/groebner.hpp"

namespace zeq {

struct DescentProblem {
  PresentationPtr F;
  std::vector<MPoly<TowerElem>> inputs;  // in x1..xn
  Rat epsilon;
  bool homogeneous = false;
  std::vector<std::string> relations;    // optional, expressions in y1..ym
  MonomialOrder order = MonomialOrder::grlex;
  Limits limits;
};

struct ConditionWitness {
  std::string what;
  std::string value;
  bool ok = true;
};

struct PointChoice {
  std::vector<GaussRat> q;
  AlgebraPtr algebra;
  TrackOutcome track;
  std::vector<ConditionWitness> log;
};

struct DescentOutput {
  std::vector<GaussRat> q;
  AlgebraPtr algebra;
  std::vector<MPoly<AlgNum>> outputs;
  Cascade<TowerElem> certificate;
  Rat eps_used;      // epsilon after the shrink rule and ball certification
  Rat achieved_eps;  // certified upper bound on max |g_ia - g'_ia|, < eps
  std::optional<TailBounds> bounds;  // empty when r = 0
  NonvanishingCertificate ball_certificate;
  std::vector<ConditionWitness> conditions_log;
  TrackOutcome track;
};

/// All cascade units whose nonvanishing condition (8)(iii) quantifies over:
/// input monicization constants, the level units, and the final unit.
std::vector<TowerElem> certificate_units(const Cascade<TowerElem>& cert);

/// Deterministic dyadic grid search for a rational point satisfying the
/// step (8) conditions; every accepted condition carries an exact witness.
PointChoice choose_rational_point(const DescentProblem& prob, const Cascade<TowerElem>& cert,
                                  const std::optional<TailBounds>& bounds, const Rat& eps_used);

/// The full pipeline: eps shrink, ball certification, cascade, tail bounds,
/// point choice, root tracking, specialization of every coefficient.
DescentOutput descend(const DescentProblem& prob);

}  // namespace zeq

#endif
