#ifndef ZEQ_ROOTS_HPP
#define ZEQ_ROOTS_HPP

#include <optional>
#include <vector>

#include "zeq/ball.hpp"
#include "zeq/upoly.hpp"

namespace zeq {

struct IsolationResult {
  std::vector<Box> boxes;          // pairwise disjoint, one per distinct root, sorted
  std::optional<Rat> separation;   // certified strict lower bound on pairwise root
                                   // distances; empty for degree 1
};

/// Certified isolation of all complex roots of a squarefree polynomial with
/// exact Gaussian-rational coefficients.  Real roots of real polynomials are
/// returned as real segments.  Throws NotSquarefree / PrecisionFailure.
IsolationResult isolate_roots(const Upoly<GaussRat>& f, unsigned prec_cap = 1u << 16);

/// Isolation for a monic polynomial with ball coefficients: on success each
/// box encloses the corresponding root of EVERY member of the family, so root
/// branches cannot leave their box while the coefficients stay inside the
/// balls.  Returns nothing when certification fails at this precision.
std::optional<IsolationResult> try_isolate_enclosure(const Upoly<Ball>& f, unsigned prec);

/// Refine isolating boxes of f until each has width and height <= target,
/// keeping the base indexing.  base must come from isolate_roots(f).
std::vector<Box> refine_boxes(const Upoly<GaussRat>& f, const std::vector<Box>& base,
                              const Rat& target, unsigned prec_cap = 1u << 16);

/// Number of real roots of f in (a, b] by Sturm's theorem (f squarefree not
/// required; multiple roots counted once).
int sturm_count(const Upoly<Rat>& f, const Rat& a, const Rat& b);

/// Certified positive rational strictly below sqrt(s); s must be positive.
Rat sqrt_lb_positive(const Rat& s);

}  // namespace zeq

#endif
