#ifndef ZEQ_CASCADE_HPP
#define ZEQ_CASCADE_HPP

#include <optional>
#include <vector>

#include "zeq/gendisc.hpp"

namespace zeq {

/// Q-linear change phi_mu on x_1..x_level: x_i <- x_i + mu_i x_level (i < level).
struct LinearChange {
  uint32_t level = 1;          // 1-based index of the pivot variable
  std::vector<Rat> mu;         // level-1 entries

  bool is_identity() const {
    for (const auto& m : mu)
      if (!m.is_zero()) return false;
    return true;
  }
};

template <class C>
MPoly<C> apply_affine_change(const MPoly<C>& f, const LinearChange& ch, bool invert = false) {
  if (ch.level > f.nvars()) fail(errc::validation_error, "change level exceeds variable count");
  if (ch.mu.size() + 1 != ch.level) fail(errc::validation_error, "change vector length mismatch");
  MPoly<C> g = f;
  uint32_t piv = ch.level - 1;
  for (uint32_t i = 0; i < ch.mu.size(); ++i) {
    Rat m = invert ? -ch.mu[i] : ch.mu[i];
    g = subst_var_linear(g, i, piv, m);
  }
  return g;
}

template <class C>
struct Monicized {
  LinearChange change;
  std::vector<MPoly<C>> polys;  // monic in x_level
  std::vector<C> constants;     // factored-out leading units c_i
};

namespace detail {

/// Deterministic enumeration of integer mu vectors: by max-height shells
/// 0,1,2,..., each shell in lexicographic order of the per-coordinate rank
/// 0,1,-1,2,-2,...
inline bool next_mu(std::vector<long>& rank, long shell) {
  size_t n = rank.size();
  for (size_t i = n; i-- > 0;) {
    if (rank[i] < 2 * shell) {
      ++rank[i];
      for (size_t j = i + 1; j < n; ++j) rank[j] = 0;
      return true;
    }
  }
  return false;
}

inline long rank_to_int(long r) { return r == 0 ? 0 : (r % 2 == 1 ? (r + 1) / 2 : -r / 2); }

inline bool shell_has_height(const std::vector<long>& rank, long shell) {
  if (shell == 0) return true;
  for (long r : rank)
    if (std::abs(rank_to_int(r)) == shell) return true;
  return false;
}

}  // namespace detail

/// Make every input monic in x_level, either by dividing out a constant
/// leading coefficient or by a generic linear change evaluated on leading
/// forms; the mu search is deterministic.  With `replay` the recorded change
/// is applied instead of searching.
template <class C>
Monicized<C> monicize(const std::vector<MPoly<C>>& gs, uint32_t level, const C& one,
                      const LinearChange* replay = nullptr) {
  if (gs.empty()) fail(errc::all_zero_input, "no polynomials to monicize");
  for (const auto& g : gs) {
    if (g.is_zero()) fail(errc::all_zero_input, "zero polynomial in monicize");
    if (g.total_degree() == 0)
      fail(errc::degree_zero_input, "nonzero constant input cannot be monicized");
    if (g.nvars() != level)
      fail(errc::internal_contradiction, "monicize expects polynomials in x1..x_level");
  }
  uint32_t v = level - 1;
  C zero = one - one;

  auto try_constant_leaders = [&]() -> std::optional<Monicized<C>> {
    Monicized<C> out;
    out.change.level = level;
    out.change.mu.assign(level - 1, Rat(0));
    for (const auto& g : gs) {
      int64_t dv = g.degree_in(v);
      if (dv < 1) return std::nullopt;
      MPoly<C> top = g.coeff_in(v, static_cast<uint32_t>(dv));
      if (!top.is_constant()) return std::nullopt;
      C c = top.constant_value();
      out.constants.push_back(c);
      out.polys.push_back(g.scaled(one / c));
    }
    return out;
  };

  auto apply_mu = [&](const LinearChange& ch) -> std::optional<Monicized<C>> {
    Monicized<C> out;
    out.change = ch;
    for (const auto& g : gs) {
      // the leading form evaluated at (mu,1) is the would-be leading constant
      std::vector<Rat> pt = ch.mu;
      pt.push_back(Rat(1));
      C c = eval_at_rats(g.leading_form(), pt, zero);
      if (c.is_zero()) return std::nullopt;
      MPoly<C> h = apply_affine_change(g, ch);
      int64_t dv = h.degree_in(v);
      MPoly<C> top = h.coeff_in(v, static_cast<uint32_t>(dv));
      if (!top.is_constant() || !(top.constant_value() == c) ||
          dv != g.total_degree())
        fail(errc::internal_contradiction, "leading-form bookkeeping failed in monicize");
      out.constants.push_back(c);
      out.polys.push_back(h.scaled(one / c));
    }
    return out;
  };

  if (replay) {
    if (replay->is_identity()) {
      auto r = try_constant_leaders();
      if (!r) fail(errc::validation_error, "recorded identity change no longer monicizes");
      return *r;
    }
    auto r = apply_mu(*replay);
    if (!r) fail(errc::validation_error, "recorded change no longer monicizes");
    return *r;
  }

  if (auto r = try_constant_leaders()) return *r;

  for (long shell = 0; shell <= 64; ++shell) {
    std::vector<long> rank(level - 1, 0);
    do {
      if (!detail::shell_has_height(rank, shell)) continue;
      LinearChange ch;
      ch.level = level;
      for (long r : rank) ch.mu.push_back(Rat(detail::rank_to_int(r)));
      if (auto res = apply_mu(ch)) return *res;
    } while (detail::next_mu(rank, shell));
  }
  fail(errc::internal_contradiction, "no monicizing change found (leading forms cannot all vanish)");
}

template <class C>
struct CascadeLevel {
  uint32_t j = 0;       // level index (variable count at this level)
  int64_t d = 0;        // degree of f_j in x_j
  size_t l = 0;         // first nonvanishing discriminant index of f_j
  LinearChange change;  // change used to produce f_j (input change at j = n)
  C e;                  // unit factored out when producing f_j (1 at j = n)
  MPoly<C> f;           // monic in x_j, variables x1..xj
};

template <class C>
struct Cascade {
  uint32_t n = 0;
  size_t s = 0;
  bool homogeneous = false;
  LinearChange input_change;
  std::vector<C> input_constants;   // c_1..c_s
  std::vector<MPoly<C>> factors;    // monicized inputs G_1..G_s
  std::vector<CascadeLevel<C>> levels;  // j = n down to k0
  uint32_t k0 = 0;
  C final_unit;                     // the x-free first nonvanishing discriminant at level k0
  std::vector<size_t> stripped_zero_inputs;
  std::vector<size_t> stripped_constant_inputs;

  const CascadeLevel<C>* level_at(uint32_t j) const {
    for (const auto& lv : levels)
      if (lv.j == j) return &lv;
    return nullptr;
  }
};

/// Recorded changes of an existing cascade, for deterministic replay.
struct CascadeReplay {
  LinearChange input_change;
  std::vector<LinearChange> level_changes;  // for levels n-1, n-2, ... in build order
};

template <class C>
CascadeReplay replay_of(const Cascade<C>& c) {
  CascadeReplay r;
  r.input_change = c.input_change;
  for (size_t k = 1; k < c.levels.size(); ++k) r.level_changes.push_back(c.levels[k].change);
  return r;
}

/// Build the full descent-of-discriminants certificate for the inputs.
/// Levels run from j = n down to the first level whose leading discriminant
/// is free of x; that constant is recorded as the final unit.
template <class C>
Cascade<C> build_cascade(const std::vector<MPoly<C>>& gs_in, const C& one, bool homogeneous = false,
                         const CascadeReplay* replay = nullptr) {
  Cascade<C> out;
  out.homogeneous = homogeneous;
  std::vector<MPoly<C>> gs;
  for (size_t i = 0; i < gs_in.size(); ++i) {
    if (gs_in[i].is_zero()) {
      out.stripped_zero_inputs.push_back(i);
    } else if (gs_in[i].total_degree() == 0) {
      out.stripped_constant_inputs.push_back(i);  // unit ideal: variety empty
    } else {
      gs.push_back(gs_in[i]);
    }
  }
  if (gs.empty()) fail(errc::all_zero_input, "no nonconstant inputs to process");
  uint32_t n = gs[0].nvars();
  for (const auto& g : gs) {
    if (g.nvars() != n) fail(errc::validation_error, "inputs disagree on variable count");
    if (homogeneous && !g.is_homogeneous())
      fail(errc::validation_error, "homogeneous flag set but an input is not homogeneous");
  }
  out.n = n;
  out.s = gs.size();

  Monicized<C> m0 = monicize(gs, n, one, replay ? &replay->input_change : nullptr);
  out.input_change = m0.change;
  out.input_constants = m0.constants;
  out.factors = m0.polys;

  MPoly<C> f = m0.polys[0];
  for (size_t i = 1; i < m0.polys.size(); ++i) f = f * m0.polys[i];

  C e_current = one;
  LinearChange ch_current = m0.change;
  size_t replay_pos = 0;
  uint32_t j = n;
  for (;;) {
    CascadeLevel<C> lv;
    lv.j = j;
    lv.d = f.degree_in(j - 1);
    lv.change = ch_current;
    lv.e = e_current;
    lv.f = f;
    DiscSeq<MPoly<C>> seq = generalized_discriminants(f, j - 1, one);
    if (seq.first_nonzero == 0)
      fail(errc::internal_contradiction, "all generalized discriminants vanish for a monic polynomial");
    lv.l = seq.first_nonzero;
    MPoly<C> D = seq.first_value();
    out.levels.push_back(std::move(lv));
    if (homogeneous && !D.is_homogeneous())
      fail(errc::internal_contradiction, "homogeneity lost in the discriminant cascade");

    if (D.total_degree() == 0) {
      out.k0 = j;
      out.final_unit = D.constant_value();
      break;
    }
    // descend: D lives in x1..x_{j-1}
    MPoly<C> Dlow = drop_var(D, j - 1);
    const LinearChange* rep = nullptr;
    if (replay) {
      if (replay_pos >= replay->level_changes.size())
        fail(errc::validation_error, "replay record shorter than the cascade");
      rep = &replay->level_changes[replay_pos++];
    }
    Monicized<C> m = monicize(std::vector<MPoly<C>>{Dlow}, j - 1, one, rep);
    e_current = m.constants[0];
    ch_current = m.change;
    f = m.polys[0];
    --j;
    if (j == 0) fail(errc::internal_contradiction, "cascade descended past the last variable");
  }
  return out;
}

/// Literal re-verification of Eqs. (2)/(3) for a certificate: every recorded
/// level's sub-leading discriminants vanish and the leading one factors as
/// e * f of the next level after the recorded change.
template <class C>
void check_certificate(const Cascade<C>& c, const C& one) {
  for (size_t idx = 0; idx < c.levels.size(); ++idx) {
    const auto& lv = c.levels[idx];
    DiscSeq<MPoly<C>> seq = generalized_discriminants(lv.f, lv.j - 1, one);
    if (seq.first_nonzero != lv.l)
      fail(errc::internal_contradiction, "certificate first-nonvanishing index mismatch");
    for (size_t l = 1; l < lv.l; ++l)
      if (!seq.values[l - 1].is_zero())
        fail(errc::internal_contradiction, "recorded vanishing discriminant is nonzero");
    MPoly<C> D = seq.first_value();
    if (idx + 1 < c.levels.size()) {
      const auto& nxt = c.levels[idx + 1];
      MPoly<C> moved = apply_affine_change(drop_var(D, lv.j - 1), nxt.change);
      if (!(moved == nxt.f.scaled(nxt.e)))
        fail(errc::internal_contradiction, "certificate level does not factor as e*f");
    } else {
      if (D.total_degree() != 0 || !(D.constant_value() == c.final_unit) || c.final_unit.is_zero())
        fail(errc::internal_contradiction, "final discriminant is not the recorded nonzero constant");
    }
  }
}

}  // namespace zeq

#endif
