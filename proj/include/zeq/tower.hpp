#ifndef ZEQ_TOWER_HPP
#define ZEQ_TOWER_HPP

#include <memory>
#include <string>
#include <vector>

#include "zeq/computable.hpp"
#include "zeq/ratfunc.hpp"
#include "zeq/upoly.hpp"

namespace zeq {

enum class Ground { R, C };

/// Presentation of the coefficient field k = Q(t1..tr)[z]/(P) together with
/// the numeric meaning of its generators.  The algebraic independence of the
/// bindings over Q is an input contract and is not verifiable here; P is
/// checked monic and squarefree at construction, irreducibility is detected
/// lazily (tw_inv hits a nontrivial gcd).
struct FieldPresentation {
  uint32_t r = 0;
  uint32_t d = 1;
  Upoly<RatFunc> P;  // monic of degree d in z
  std::vector<ComputableScalar> bindings;
  Ball z_selector;
  Ground ground = Ground::R;

  // derived at construction
  QPoly cleared_P = QPoly(1);          // denominator-cleared P in Q[t1..tr,z]
  QPoly disc_numerator = QPoly(0);     // Res_z(cleared_P, d/dz cleared_P), z dropped
  std::vector<QPoly> denominators;     // distinct coefficient denominators of P
};

using PresentationPtr = std::shared_ptr<const FieldPresentation>;

inline PresentationPtr make_presentation(uint32_t r, uint32_t d, Upoly<RatFunc> P,
                                         std::vector<ComputableScalar> bindings,
                                         Ball z_selector, Ground ground) {
  auto F = std::make_shared<FieldPresentation>();
  F->r = r;
  F->d = d;
  F->ground = ground;
  if (d < 1) fail(errc::validation_error, "degree d must be >= 1 (use d=1, P=z for no algebraic part)");
  up_trim(P);
  if (up_deg(P) != static_cast<int64_t>(d))
    fail(errc::validation_error, "deg_z P does not match the declared degree d");
  if (!P.back().is_one()) fail(errc::validation_error, "P must be monic in z");
  for (auto& c : P) {
    if (c.nvars() > r) fail(errc::validation_error, "P coefficient uses more than r variables");
    c = c.extended(r);
  }
  if (d >= 2) {
    Upoly<RatFunc> g = up_gcd(P, up_derivative(P));
    if (up_deg(g) != 0) fail(errc::not_squarefree, "P has a repeated root over Q(t)");
  }
  if (bindings.size() != r) fail(errc::validation_error, "binding count must equal r");
  F->P = std::move(P);
  F->bindings = std::move(bindings);
  F->z_selector = z_selector;

  // clear denominators: D * P in Q[t1..tr, z], z is the last variable
  QPoly D = QPoly::constant(r, Rat(1));
  for (const auto& c : F->P) {
    QPoly den = extend_vars(c.den(), r);
    QPoly g = mv_gcd(D, den);
    D = exact_div(D * den, g);
  }
  QPoly cleared(r + 1);
  for (size_t k = 0; k < F->P.size(); ++k) {
    const RatFunc& c = F->P[k];
    QPoly num = extend_vars(c.num(), r);
    QPoly den = extend_vars(c.den(), r);
    QPoly coef = exact_div(D, den) * num;
    for (const auto& [e, v] : coef.terms()) {
      Exp e2 = e;
      e2.push_back(static_cast<uint32_t>(k));
      cleared.add_term(std::move(e2), v);
    }
  }
  F->cleared_P = cleared;
  for (const auto& c : F->P) {
    QPoly den = extend_vars(c.den(), r);
    if (den.is_constant()) continue;
    bool seen = false;
    for (const auto& known : F->denominators) seen = seen || known == den;
    if (!seen) F->denominators.push_back(den);
  }
  if (d >= 2) {
    QPoly dz(r + 1);
    for (const auto& [e, v] : cleared.terms()) {
      if (e.back() == 0) continue;
      Exp e2 = e;
      e2.back() -= 1;
      dz.add_term(std::move(e2), v * Rat(static_cast<long>(e.back())));
    }
    QPoly res = resultant(cleared, dz, r);
    F->disc_numerator = normalize_poly(drop_var(res, r));
  } else {
    F->disc_numerator = QPoly::constant(r, Rat(1));
  }
  return F;
}

/// Element of k in canonical form: sum c_k(t) z^k with deg < d.
class TowerElem {
 public:
  /// Detached zero; usable only as a placeholder until assigned.
  TowerElem() = default;
  TowerElem(PresentationPtr F, std::vector<RatFunc> coords) : F_(std::move(F)), c_(std::move(coords)) {
    if (c_.size() > F_->d) fail(errc::internal_contradiction, "TowerElem coordinate overflow");
    c_.resize(F_->d, RatFunc());
  }

  static TowerElem zero(const PresentationPtr& F) { return TowerElem(F, {}); }
  static TowerElem one(const PresentationPtr& F) { return from_rat(F, Rat(1)); }
  static TowerElem from_rat(const PresentationPtr& F, const Rat& v) {
    return TowerElem(F, {RatFunc(v)});
  }
  static TowerElem from_ratfunc(const PresentationPtr& F, const RatFunc& v) {
    return TowerElem(F, {v});
  }
  /// The transcendental generator t_i (0-based).
  static TowerElem t_var(const PresentationPtr& F, uint32_t i) {
    if (i >= F->r) fail(errc::validation_error, "t index out of range");
    return TowerElem(F, {RatFunc::var(F->r, i)});
  }
  /// The algebraic generator z (reduced when d = 1).
  static TowerElem z_gen(const PresentationPtr& F) {
    if (F->d == 1) return TowerElem(F, {-F->P[0]});
    std::vector<RatFunc> c{RatFunc(Rat(0)), RatFunc(Rat(1))};
    return TowerElem(F, std::move(c));
  }

  const PresentationPtr& presentation() const { return F_; }
  const std::vector<RatFunc>& coords() const { return c_; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (!x.is_zero()) return false;
    return true;
  }
  bool is_one() const {
    if (c_.empty() || !c_[0].is_one()) return false;
    for (size_t k = 1; k < c_.size(); ++k)
      if (!c_[k].is_zero()) return false;
    return true;
  }

  TowerElem operator-() const {
    std::vector<RatFunc> r;
    r.reserve(c_.size());
    for (const auto& x : c_) r.push_back(-x);
    return TowerElem(F_, std::move(r));
  }
  TowerElem operator+(const TowerElem& o) const {
    check(o);
    std::vector<RatFunc> r;
    r.reserve(c_.size());
    for (size_t k = 0; k < c_.size(); ++k) r.push_back(c_[k] + o.c_[k]);
    return TowerElem(F_, std::move(r));
  }
  TowerElem operator-(const TowerElem& o) const { return *this + (-o); }
  TowerElem operator*(const TowerElem& o) const {
    check(o);
    Upoly<RatFunc> a = trimmed(), b = o.trimmed();
    Upoly<RatFunc> prod = up_mul(a, b);
    Upoly<RatFunc> red = up_mod(prod, F_->P);
    return TowerElem(F_, std::move(red));
  }
  TowerElem operator*(const Rat& s) const {
    std::vector<RatFunc> r;
    r.reserve(c_.size());
    for (const auto& x : c_) r.push_back(x * s);
    return TowerElem(F_, std::move(r));
  }

  /// Inverse by extended Euclid against P.  NotInvertible signals a reducible
  /// presentation (gcd(a, P) nonconstant).
  TowerElem inv() const {
    if (is_zero()) fail(errc::division_by_zero, "tower inverse of zero");
    Upoly<RatFunc> a = trimmed();
    auto [g, u, v] = up_ext_gcd(a, F_->P);
    if (up_deg(g) != 0)
      fail(errc::not_invertible, "gcd(a, P) nonconstant: presentation is reducible");
    Upoly<RatFunc> red = up_mod(u, F_->P);
    return TowerElem(F_, std::move(red));
  }
  TowerElem operator/(const TowerElem& o) const { return *this * o.inv(); }

  bool operator==(const TowerElem& o) const {
    check(o);
    for (size_t k = 0; k < c_.size(); ++k)
      if (c_[k] != o.c_[k]) return false;
    return true;
  }
  bool operator!=(const TowerElem& o) const { return !(*this == o); }

  /// Canonical text: exactly d comma-separated RatFunc strings.
  std::string str() const {
    std::string out;
    for (size_t k = 0; k < c_.size(); ++k) {
      if (k) out += ",";
      out += c_[k].str();
    }
    return out;
  }

 private:
  Upoly<RatFunc> trimmed() const {
    Upoly<RatFunc> a = c_;
    up_trim(a);
    return a;
  }
  void check(const TowerElem& o) const {
    if (!F_ || F_.get() != o.F_.get())
      fail(errc::internal_contradiction, "TowerElem presentation mismatch or detached element");
  }

  PresentationPtr F_;
  std::vector<RatFunc> c_;
};

inline TowerElem operator*(const Rat& s, const TowerElem& a) { return a * s; }
inline bool is_zero(const TowerElem& a) { return a.is_zero(); }

/// Exact symbolic zero test; never consults the numeric bindings.
inline bool tw_is_zero(const TowerElem& a) { return a.is_zero(); }

}  // namespace zeq

#endif
