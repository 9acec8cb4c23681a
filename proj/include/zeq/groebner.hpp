#ifndef ZEQ_GROEBNER_HPP
#define ZEQ_GROEBNER_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "zeq/mpoly.hpp"

namespace zeq {

enum class MonomialOrder { grlex, lex };

inline bool order_less(const Exp& a, const Exp& b, MonomialOrder ord) {
  if (ord == MonomialOrder::grlex) return GrlexLess{}(a, b);
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

template <class C>
std::pair<Exp, C> leading_term(const MPoly<C>& f, MonomialOrder ord) {
  if (f.is_zero()) fail(errc::internal_contradiction, "leading term of zero polynomial");
  if (ord == MonomialOrder::grlex) {
    const auto& lt = f.leading();
    return {lt.first, lt.second};
  }
  auto best = f.terms().begin();
  for (auto it = std::next(f.terms().begin()); it != f.terms().end(); ++it)
    if (order_less(best->first, it->first, ord)) best = it;
  return {best->first, best->second};
}

inline bool exp_divides(const Exp& a, const Exp& b) {  // x^a | x^b
  for (size_t k = 0; k < a.size(); ++k)
    if (a[k] > b[k]) return false;
  return true;
}
inline Exp exp_lcm(const Exp& a, const Exp& b) {
  Exp r(a.size());
  for (size_t k = 0; k < a.size(); ++k) r[k] = std::max(a[k], b[k]);
  return r;
}
inline Exp exp_sub(const Exp& a, const Exp& b) {
  Exp r(a.size());
  for (size_t k = 0; k < a.size(); ++k) r[k] = a[k] - b[k];
  return r;
}

struct GroebnerGuard {
  size_t max_steps = 2000;
  size_t max_basis = 128;
  int64_t max_degree = 64;
  uint32_t max_vars = 8;
};

struct TraceStep {
  size_t i = 0, j = 0;          // pair processed
  bool reduced_to_zero = false;
  Exp new_lt;                   // leading monomial of the added element (when not zero)

  bool operator==(const TraceStep& o) const {
    return i == o.i && j == o.j && reduced_to_zero == o.reduced_to_zero && new_lt == o.new_lt;
  }
};

struct GroebnerRun {
  std::vector<TraceStep> steps;
  std::vector<Exp> basis_lts;  // minimal generating monomials of the leading-term ideal
};

/// Buchberger with a fully deterministic schedule: pairs by (order-least lcm,
/// i, j); the division step scans the basis sorted by ascending leading term
/// and picks the first divisor; remainders are inserted monic.
template <class C>
GroebnerRun buchberger_trace(const std::vector<MPoly<C>>& gens_in, MonomialOrder ord, const C& one,
                             const GroebnerGuard& guard = {}) {
  std::vector<MPoly<C>> basis;
  for (const auto& g : gens_in)
    if (!g.is_zero()) basis.push_back(g);
  if (basis.empty()) fail(errc::all_zero_input, "no nonzero generators");
  if (basis[0].nvars() > guard.max_vars) fail(errc::guard_exceeded, "too many variables");

  GroebnerRun run;
  std::vector<std::pair<size_t, size_t>> pending;
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = i + 1; j < basis.size(); ++j) pending.emplace_back(i, j);

  auto reduce = [&](MPoly<C> p) -> MPoly<C> {
    MPoly<C> r(p.nvars());
    // divisor order: ascending leading term, index tie-break
    while (!p.is_zero()) {
      auto [ep, cp] = leading_term(p, ord);
      std::vector<size_t> idx(basis.size());
      for (size_t k = 0; k < idx.size(); ++k) idx[k] = k;
      std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
        auto la = leading_term(basis[a], ord).first;
        auto lb = leading_term(basis[b], ord).first;
        if (la != lb) return order_less(la, lb, ord);
        return a < b;
      });
      bool divided = false;
      for (size_t k : idx) {
        auto [eg, cg] = leading_term(basis[k], ord);
        if (!exp_divides(eg, ep)) continue;
        MPoly<C> t = MPoly<C>::monomial(p.nvars(), exp_sub(ep, eg), cp / cg);
        p = p - t * basis[k];
        divided = true;
        break;
      }
      if (!divided) {
        MPoly<C> t = MPoly<C>::monomial(p.nvars(), ep, cp);
        r = r + t;
        p = p - t;
      }
    }
    return r;
  };

  while (!pending.empty()) {
    if (run.steps.size() >= guard.max_steps) fail(errc::guard_exceeded, "pair budget exhausted");
    // normal strategy: least lcm in the monomial order, then (i, j)
    size_t best = 0;
    Exp best_lcm;
    for (size_t k = 0; k < pending.size(); ++k) {
      auto [i, j] = pending[k];
      Exp l = exp_lcm(leading_term(basis[i], ord).first, leading_term(basis[j], ord).first);
      if (k == 0 || order_less(l, best_lcm, ord) ||
          (l == best_lcm && pending[k] < pending[best])) {
        best = k;
        best_lcm = l;
      }
    }
    auto [i, j] = pending[best];
    pending.erase(pending.begin() + static_cast<long>(best));

    auto [ei, ci] = leading_term(basis[i], ord);
    auto [ej, cj] = leading_term(basis[j], ord);
    Exp l = exp_lcm(ei, ej);
    MPoly<C> s = basis[i] * MPoly<C>::monomial(basis[i].nvars(), exp_sub(l, ei), one / ci) -
                 basis[j] * MPoly<C>::monomial(basis[j].nvars(), exp_sub(l, ej), one / cj);
    MPoly<C> rem = reduce(std::move(s));

    TraceStep step;
    step.i = i;
    step.j = j;
    if (rem.is_zero()) {
      step.reduced_to_zero = true;
      run.steps.push_back(std::move(step));
      continue;
    }
    auto [er, cr] = leading_term(rem, ord);
    if (static_cast<int64_t>(exp_total(er)) > guard.max_degree)
      fail(errc::guard_exceeded, "degree bound exceeded");
    step.new_lt = er;
    run.steps.push_back(step);
    MPoly<C> monic = rem.scaled(one / cr);
    basis.push_back(std::move(monic));
    if (basis.size() > guard.max_basis) fail(errc::guard_exceeded, "basis size exceeded");
    for (size_t k = 0; k + 1 < basis.size(); ++k) pending.emplace_back(k, basis.size() - 1);
  }

  // minimal generating set of the leading-term ideal
  std::vector<Exp> lts;
  for (const auto& b : basis) lts.push_back(leading_term(b, ord).first);
  std::vector<Exp> minimal;
  for (size_t a = 0; a < lts.size(); ++a) {
    bool redundant = false;
    for (size_t b = 0; b < lts.size() && !redundant; ++b) {
      if (a == b) continue;
      if (exp_divides(lts[b], lts[a]) && lts[a] != lts[b]) redundant = true;
      if (lts[a] == lts[b] && b < a) redundant = true;  // deduplicate
    }
    if (!redundant) minimal.push_back(lts[a]);
  }
  std::sort(minimal.begin(), minimal.end(), GrlexLess{});
  run.basis_lts = std::move(minimal);
  return run;
}

inline std::string exp_str(const Exp& e, const std::vector<std::string>& names) {
  std::string s;
  for (size_t k = 0; k < e.size(); ++k) {
    if (e[k] == 0) continue;
    if (!s.empty()) s += "*";
    s += names.at(k) + "^" + std::to_string(e[k]);
  }
  return s.empty() ? "1" : s;
}

}  // namespace zeq

#endif
