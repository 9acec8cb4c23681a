#ifndef ZEQ_NUMERIC_HPP
#define ZEQ_NUMERIC_HPP

#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "zeq/roots.hpp"
#include "zeq/tower.hpp"

namespace zeq {

/// Precision and search schedules; every refinement loop doubles precision
/// and stops at the cap.
struct Limits {
  unsigned prec_start = 16;
  unsigned prec_cap = 1u << 20;
  unsigned isolate_prec_cap = 1u << 16;
  int subdivision_depth = 48;
  long max_cells_per_poly = 1 << 16;
  int grid_cap = 24;        // finest dyadic mesh exponent of the q search
  int grid_span = 4;        // lattice offsets per coordinate and mesh level
  long track_max_steps = 4096;
};

// ---------------------------------------------------------------------------
// Interval evaluation

Ball eval_qpoly_ball(const QPoly& f, const std::vector<Ball>& pt);
std::optional<Ball> try_eval_ratfunc_ball(const RatFunc& f, const std::vector<Ball>& pt);
GaussRat eval_qpoly_at(const QPoly& f, const std::vector<GaussRat>& pt);
/// Exact evaluation; PoleAtPoint when the denominator vanishes.
GaussRat eval_ratfunc_at(const RatFunc& f, const std::vector<GaussRat>& pt);

/// Exact specialization P(q, .) — monic of degree d; PoleAtPoint on poles.
Upoly<GaussRat> specialize_P(const FieldPresentation& F, const std::vector<GaussRat>& q);
/// Interval coefficients of P over per-coordinate enclosures.
std::optional<Upoly<Ball>> try_enclose_P(const FieldPresentation& F, const std::vector<Ball>& t);

// ---------------------------------------------------------------------------
// Step (5): zero-free certification on a ball around the bindings

struct CellWitness {
  std::vector<Box> cell;   // one complex box per coordinate
  Rat value_mag_lb;        // certified lower bound on |poly| over the cell
};

struct NonvanishingCertificate {
  bool ok = false;
  Rat rho;
  std::vector<std::vector<CellWitness>> per_poly;  // leaf subdivision per polynomial
  int failed_poly = -1;
  std::vector<Box> witness_cell;                    // cell where 0 was not excluded
  int max_depth_seen = 0;
};

/// Rigorously certify that none of the polynomials vanishes on the closed
/// Euclidean ball of radius rho around the bound point.  True answers carry a
/// subdivision certificate; false answers carry the offending cell
/// (DepthExceeded is reported through the false branch).
NonvanishingCertificate certify_ball_nonvanishing(const std::vector<QPoly>& polys,
                                                  const std::vector<ComputableScalar>& center,
                                                  const Rat& rho, Ground ground,
                                                  const Limits& lim = {});

// ---------------------------------------------------------------------------
// Step (6): Cauchy/tail bound constants

struct TailBounds {
  Rat epsilon;
  Rat M;        // 1 + sup of coefficient magnitudes on the 2*eps ball
  Rat C_upper;  // >= M 2^r/(r-1)! * (2+sqrt(2))
  unsigned K_tail = 0;
  std::optional<Rat> eta;    // root separation of P(t,.); empty when d = 1
  std::optional<Rat> delta;  // root separation of P(q,.); filled at specialization
};

/// M, C_upper, K_tail (and eta) for the presentation at radius eps.
/// certify_ball_nonvanishing must have succeeded at radius 2*eps.
TailBounds tail_constants(const FieldPresentation& F, const Rat& eps, const Limits& lim = {});

// ---------------------------------------------------------------------------
// Numeric views of tower elements

class TowerEvaluator {
 public:
  explicit TowerEvaluator(PresentationPtr F, const Limits& lim = {});

  Ball binding(size_t i, unsigned p) const;
  std::vector<Ball> bindings(unsigned p) const;
  /// Enclosure of the selected root z(t) with radius <= 2^-p.
  Ball z_ball(unsigned p) const;
  /// Enclosure of the value of a at the bindings; effort parameter p.
  Ball eval(const TowerElem& a, unsigned p) const;
  Ball eval_to_radius(const TowerElem& a, const Rat& target) const;
  /// Certified positive lower bound on |value| for a symbolically nonzero a.
  Rat lower_bound_nonzero(const TowerElem& a) const;

 private:
  PresentationPtr F_;
  Limits lim_;
  mutable std::map<unsigned, Ball> z_memo_;
  mutable std::mutex mu_;
};

// ---------------------------------------------------------------------------
// Step (7): certified continuation of the selected root to z(q)

struct TrackOutcome {
  size_t root_index = 0;        // index into roots_at_q.boxes
  Box box;                      // isolating box of z(q)
  IsolationResult roots_at_q;   // exact isolation of P(q,.)
  long steps = 0;
};

/// Analytic continuation of the selected root along the straight segment from
/// the bindings to q, certified by parametric interval isolation on each
/// piece.  Throws PathUncertifiable when certification fails (e.g. the path
/// meets the discriminant locus).
TrackOutcome track_root(const FieldPresentation& F, const std::vector<GaussRat>& q,
                        const Limits& lim = {});

}  // namespace zeq

#endif
