#ifndef ZEQ_ALGNUM_HPP
#define ZEQ_ALGNUM_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "zeq/numeric.hpp"

namespace zeq {

class EtaleAlgebra;
using AlgebraPtr = std::shared_ptr<const EtaleAlgebra>;

/// The specialized algebra Q_K[z]/(P~) for squarefree monic P~, with isolating
/// boxes for all roots and a selected embedding.  Box refinement snapshots are
/// cached internally (synchronized); the algebra itself is immutable.
class EtaleAlgebra {
 public:
  EtaleAlgebra(Upoly<GaussRat> modulus, Ground ground, std::vector<GaussRat> point,
               size_t selected, unsigned isolate_cap = 1u << 16);

  size_t degree() const { return modulus_.size() - 1; }
  const Upoly<GaussRat>& modulus() const { return modulus_; }
  Ground ground() const { return ground_; }
  const std::vector<GaussRat>& point() const { return point_; }
  size_t selected() const { return selected_; }
  const std::vector<Box>& boxes() const { return boxes_; }
  const std::optional<Rat>& delta() const { return delta_; }

  /// Boxes refined until width and height <= target, base indexing kept.
  const std::vector<Box>& refined_boxes(const Rat& target) const;

  static AlgebraPtr make(Upoly<GaussRat> modulus, Ground ground, std::vector<GaussRat> point,
                         size_t selected, unsigned isolate_cap = 1u << 16) {
    return std::make_shared<EtaleAlgebra>(std::move(modulus), ground, std::move(point), selected,
                                          isolate_cap);
  }

 private:
  Upoly<GaussRat> modulus_;
  Ground ground_;
  std::vector<GaussRat> point_;
  size_t selected_;
  unsigned isolate_cap_;
  std::vector<Box> boxes_;
  std::optional<Rat> delta_;
  mutable std::map<Rat, std::vector<Box>, std::less<Rat>> refine_memo_;
  mutable std::mutex mu_;
};

/// Exact algebraic number: a residue mod P~ plus the selected embedding.
/// is_zero() decides vanishing AT THE EMBEDDING (gcd + box refinement);
/// division inverts at the embedding component, which is what every
/// computation over the specialized family needs.  inv_algebra() is the
/// plain algebra inverse that refuses zero divisors.
class AlgNum {
 public:
  /// Detached zero; usable only as a placeholder until assigned.
  AlgNum() = default;
  AlgNum(AlgebraPtr A, Upoly<GaussRat> rep);
  AlgNum(AlgebraPtr A, Upoly<GaussRat> rep, size_t embedding);

  static AlgNum zero(const AlgebraPtr& A) { return AlgNum(A, {}); }
  static AlgNum one(const AlgebraPtr& A) { return from_gauss(A, GaussRat(Rat(1))); }
  static AlgNum from_rat(const AlgebraPtr& A, const Rat& v) { return from_gauss(A, GaussRat(v)); }
  static AlgNum from_gauss(const AlgebraPtr& A, const GaussRat& v);
  /// The class of z itself.
  static AlgNum z_of(const AlgebraPtr& A);

  const AlgebraPtr& algebra() const { return A_; }
  const Upoly<GaussRat>& rep() const { return rep_; }
  size_t embedding() const { return emb_; }

  bool rep_is_zero() const { return rep_.empty(); }
  bool is_zero() const;  // embedded zero test
  bool is_one() const;
  /// Exact rational value when the rep is a constant.
  std::optional<GaussRat> as_constant() const {
    if (rep_.empty()) return GaussRat(Rat(0));
    if (rep_.size() == 1) return rep_[0];
    return std::nullopt;
  }

  AlgNum operator-() const { return AlgNum(A_, up_neg(rep_), emb_); }
  AlgNum operator+(const AlgNum& o) const;
  AlgNum operator-(const AlgNum& o) const;
  AlgNum operator*(const AlgNum& o) const;
  AlgNum operator*(const Rat& s) const;
  AlgNum operator/(const AlgNum& o) const { return *this * o.inv_embedded(); }

  /// Inverse at the embedding; DivisionByZero when embedded zero.  For zero
  /// divisors this inverts the component containing the embedding.
  AlgNum inv_embedded() const;
  /// Algebra inverse; NotInvertible when gcd(rep, modulus) is nonconstant.
  AlgNum inv_algebra() const;

  bool operator==(const AlgNum& o) const;
  bool operator!=(const AlgNum& o) const { return !(*this == o); }

  /// Enclosure of the embedded value.
  Ball enclosure(const Rat& target_radius) const;

  /// `ALGNUM deg=<d'> modulus=<poly> rep=<poly> box=<re_lo re_hi im_lo im_hi>`
  std::string str() const;

 private:
  AlgebraPtr A_;
  Upoly<GaussRat> rep_;
  size_t emb_ = 0;
};

inline AlgNum operator*(const Rat& s, const AlgNum& a) { return a * s; }
inline bool is_zero(const AlgNum& a) { return a.is_zero(); }

/// Spec-level zero test at the embedding.
inline bool alg_is_zero_embedded(const AlgNum& x) { return x.is_zero(); }

/// Specialize the presentation at an exact point: checks poles and the
/// discriminant exactly, isolates the roots of P(q,.), and records the
/// separation bound.  The selected embedding is set by the caller (track).
AlgebraPtr specialize_modulus(const FieldPresentation& F, const std::vector<GaussRat>& q,
                              size_t selected = 0, const Limits& lim = {});

/// Image of a tower element under t -> q, z -> z mod P~ (the specialization
/// homomorphism; PoleAtPoint when a coordinate denominator vanishes at q).
AlgNum eval_tower_at_point(const TowerElem& a, const AlgebraPtr& A);

}  // namespace zeq

#endif
