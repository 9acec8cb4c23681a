#include "zeq/algnum.hpp"

#include <algorithm>

namespace zeq {

EtaleAlgebra::EtaleAlgebra(Upoly<GaussRat> modulus, Ground ground, std::vector<GaussRat> point,
                           size_t selected, unsigned isolate_cap)
    : modulus_(std::move(modulus)), ground_(ground), point_(std::move(point)),
      selected_(selected), isolate_cap_(isolate_cap) {
  up_trim(modulus_);
  if (up_deg(modulus_) < 1) fail(errc::validation_error, "algebra modulus must have positive degree");
  if (!modulus_.back().is_one()) fail(errc::validation_error, "algebra modulus must be monic");
  if (up_deg(modulus_) >= 2) {
    Upoly<GaussRat> g = up_gcd(modulus_, up_derivative(modulus_));
    if (up_deg(g) != 0) fail(errc::not_squarefree, "algebra modulus has a repeated root");
  }
  IsolationResult iso = isolate_roots(modulus_, isolate_cap_);
  boxes_ = iso.boxes;
  delta_ = iso.separation;
  if (selected_ >= boxes_.size()) fail(errc::validation_error, "selected embedding out of range");
}

const std::vector<Box>& EtaleAlgebra::refined_boxes(const Rat& target) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = refine_memo_.find(target);
  if (it != refine_memo_.end()) return it->second;
  std::vector<Box> refined = refine_boxes(modulus_, boxes_, target, isolate_cap_);
  auto [pos, inserted] = refine_memo_.emplace(target, std::move(refined));
  return pos->second;
}

// ---------------------------------------------------------------------------

AlgNum::AlgNum(AlgebraPtr A, Upoly<GaussRat> rep) : A_(std::move(A)), rep_(std::move(rep)), emb_(A_->selected()) {
  up_trim(rep_);
  if (up_deg(rep_) >= static_cast<int64_t>(A_->degree())) rep_ = up_mod(rep_, A_->modulus());
}

AlgNum::AlgNum(AlgebraPtr A, Upoly<GaussRat> rep, size_t embedding)
    : A_(std::move(A)), rep_(std::move(rep)), emb_(embedding) {
  up_trim(rep_);
  if (up_deg(rep_) >= static_cast<int64_t>(A_->degree())) rep_ = up_mod(rep_, A_->modulus());
  if (emb_ >= A_->boxes().size()) fail(errc::validation_error, "embedding index out of range");
}

AlgNum AlgNum::from_gauss(const AlgebraPtr& A, const GaussRat& v) {
  Upoly<GaussRat> rep;
  if (!v.is_zero()) rep.push_back(v);
  return AlgNum(A, std::move(rep));
}

AlgNum AlgNum::z_of(const AlgebraPtr& A) {
  if (A->degree() == 1) return AlgNum(A, {-A->modulus()[0]});
  return AlgNum(A, {GaussRat(Rat(0)), GaussRat(Rat(1))});
}

namespace {

void check_same(const AlgNum& a, const AlgNum& b) {
  if (a.algebra().get() != b.algebra().get() || a.embedding() != b.embedding())
    fail(errc::internal_contradiction, "AlgNum algebra/embedding mismatch");
}

/// Indices of the algebra roots that are roots of g (a squarefree divisor of
/// the modulus), by refining both isolations until the matching is unique.
std::vector<size_t> roots_of_divisor(const EtaleAlgebra& A, const Upoly<GaussRat>& g) {
  IsolationResult giso = isolate_roots(g);
  std::vector<Box> gboxes = giso.boxes;
  Rat target(1, 16);
  for (int rounds = 0; rounds < 64; ++rounds) {
    const std::vector<Box>& aboxes = A.refined_boxes(target);
    std::vector<size_t> matched;
    bool ok = true;
    for (const auto& gb : gboxes) {
      size_t hits = 0, hit = 0;
      for (size_t i = 0; i < aboxes.size(); ++i)
        if (gb.intersects(aboxes[i])) {
          ++hits;
          hit = i;
        }
      if (hits != 1) {
        ok = false;
        break;
      }
      matched.push_back(hit);
    }
    if (ok) return matched;
    gboxes = refine_boxes(g, gboxes, target);
    target = target * Rat(1, 16);
  }
  fail(errc::precision_failure, "divisor root matching did not converge");
}

}  // namespace

bool AlgNum::is_zero() const {
  if (rep_.empty()) return true;
  Upoly<GaussRat> g = up_gcd(rep_, A_->modulus());
  if (up_deg(g) == 0) return false;
  std::vector<size_t> idx = roots_of_divisor(*A_, g);
  for (size_t i : idx)
    if (i == emb_) return true;
  return false;
}

bool AlgNum::is_one() const { return rep_.size() == 1 && rep_[0].is_one(); }

AlgNum AlgNum::operator+(const AlgNum& o) const {
  check_same(*this, o);
  return AlgNum(A_, up_add(rep_, o.rep_), emb_);
}
AlgNum AlgNum::operator-(const AlgNum& o) const {
  check_same(*this, o);
  return AlgNum(A_, up_sub(rep_, o.rep_), emb_);
}
AlgNum AlgNum::operator*(const AlgNum& o) const {
  check_same(*this, o);
  return AlgNum(A_, up_mod(up_mul(rep_, o.rep_), A_->modulus()), emb_);
}
AlgNum AlgNum::operator*(const Rat& s) const {
  return AlgNum(A_, up_scale(rep_, GaussRat(s)), emb_);
}

AlgNum AlgNum::inv_algebra() const {
  if (rep_.empty()) fail(errc::division_by_zero, "algebra inverse of zero");
  auto [g, u, v] = up_ext_gcd(rep_, A_->modulus());
  if (up_deg(g) != 0) fail(errc::not_invertible, "zero divisor: gcd(rep, modulus) nonconstant");
  return AlgNum(A_, up_mod(u, A_->modulus()), emb_);
}

AlgNum AlgNum::inv_embedded() const {
  if (rep_.empty()) fail(errc::division_by_zero, "inverse of zero");
  Upoly<GaussRat> g = up_gcd(rep_, A_->modulus());
  if (up_deg(g) == 0) {
    auto [g1, u, v] = up_ext_gcd(rep_, A_->modulus());
    return AlgNum(A_, up_mod(u, A_->modulus()), emb_);
  }
  if (is_zero()) fail(errc::division_by_zero, "inverse of an embedded zero");
  // the embedding lies in the component mod h = modulus/g; invert there and
  // lift through the idempotent that is 1 mod h, 0 mod g
  auto [h, rem] = up_divrem(A_->modulus(), g);
  if (!up_is_zero(rem)) fail(errc::internal_contradiction, "gcd does not divide the modulus");
  auto [one_gh, a, b] = up_ext_gcd(g, h);
  if (up_deg(one_gh) != 0) fail(errc::internal_contradiction, "squarefree modulus with non-coprime split");
  Upoly<GaussRat> e_h = up_mod(up_mul(a, g), A_->modulus());  // 1 mod h, 0 mod g
  auto [one_rh, u, w] = up_ext_gcd(up_mod(rep_, h), h);
  if (up_deg(one_rh) != 0)
    fail(errc::internal_contradiction, "nonzero embedded value shares a root with its component");
  Upoly<GaussRat> y = up_mod(up_mul(u, e_h), A_->modulus());
  return AlgNum(A_, std::move(y), emb_);
}

bool AlgNum::operator==(const AlgNum& o) const {
  check_same(*this, o);
  if (rep_.size() != o.rep_.size()) return false;
  for (size_t k = 0; k < rep_.size(); ++k)
    if (rep_[k] != o.rep_[k]) return false;
  return true;
}

Ball AlgNum::enclosure(const Rat& target_radius) const {
  if (rep_.empty()) return Ball::exact(GaussRat(Rat(0)));
  if (rep_.size() == 1) return Ball::exact(rep_[0]);
  Rat target = target_radius;
  for (int rounds = 0; rounds < 64; ++rounds) {
    const std::vector<Box>& boxes = A_->refined_boxes(target);
    Ball z = boxes[emb_].to_ball();
    Ball one = Ball::exact(GaussRat(Rat(1)));
    Ball v = up_eval(rep_, z, one);
    if (v.radius() <= target_radius) return v;
    target = target * Rat(1, 16);
  }
  fail(errc::precision_failure, "algebraic number enclosure did not converge");
}

std::string AlgNum::str() const {
  std::string s = "ALGNUM deg=" + std::to_string(A_->degree());
  s += " modulus=" + up_str(A_->modulus(), "z");
  s += " rep=" + up_str(rep_, "z");
  s += " box=" + A_->boxes()[emb_].str();
  return s;
}

// ---------------------------------------------------------------------------

AlgebraPtr specialize_modulus(const FieldPresentation& F, const std::vector<GaussRat>& q,
                              size_t selected, const Limits& lim) {
  if (q.size() != F.r) fail(errc::validation_error, "point arity mismatch");
  for (const auto& den : F.denominators)
    if (eval_qpoly_at(den, q).is_zero())
      fail(errc::pole_at_point, "q is a pole of a coefficient of P");
  if (F.d >= 2 && eval_qpoly_at(F.disc_numerator, q).is_zero())
    fail(errc::discriminant_vanishes, "P(q,.) has a repeated root");
  Upoly<GaussRat> Pq = specialize_P(F, q);
  return EtaleAlgebra::make(std::move(Pq), F.ground, q, selected, lim.isolate_prec_cap);
}

AlgNum eval_tower_at_point(const TowerElem& a, const AlgebraPtr& A) {
  const std::vector<GaussRat>& q = A->point();
  Upoly<GaussRat> rep;
  rep.reserve(a.coords().size());
  for (const auto& c : a.coords()) rep.push_back(eval_ratfunc_at(c, q));
  up_trim(rep);
  return AlgNum(A, std::move(rep));
}

}  // namespace zeq
