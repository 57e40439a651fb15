#pragma once

#include <utility>

#include "bsnn/affine.hpp"
#include "bsnn/automorphism.hpp"

namespace bsnn {

namespace detail {

// Exponent context: concrete mode folds every d-multiple into the constant
// part; symbolic mode accumulates the d coefficient. `d` holds the concrete
// value, or the residue class representative c when symbolic (index
// arithmetic only ever needs d mod n, which the residue determines).
struct DCtx {
  bool symbolic = false;
  i64 d = 0;

  AffineExp add_d(AffineExp e, i64 mult) const {
    if (symbolic) return {e.c0, e.cd + mult};
    return {e.c0 + mult * d, 0};
  }
  int residue(const AffineExp& e, int n) const { return mod_n(e.c0 + e.cd * d, n); }
};

// True when the first/last letters expose a twisted cyclic reduction for the
// quotient residue c. Index arithmetic uses a.d mod n only.
inline bool crs_pattern(const Group& g, const OuterAuto& a, Letter first, Letter last,
                        int c) {
  int e = a.eps_x * first.sign;
  if (last.sign != -e) return false;
  i64 base = (e == 1) ? static_cast<i64>(a.eps_y) * first.index
                      : static_cast<i64>(a.eps_y) * (static_cast<i64>(first.index) - a.d);
  return last.index == mod_n(base - c, g.n);
}

// The conjugating letter for one cyclic reduction step.
inline Letter crs_witness_letter(const Group& g, const OuterAuto& a, Letter first) {
  int e = a.eps_x * first.sign;
  i64 base = (e == 1) ? static_cast<i64>(a.eps_y) * first.index
                      : static_cast<i64>(a.eps_y) * (static_cast<i64>(first.index) - a.d);
  return {mod_n(base, g.n), e};
}

struct ModExp {
  FreeWord free;
  AffineExp t;
};

struct ReductionCore {
  ModExp reduced;
  std::vector<Letter> witness_letters;  // one conjugating letter per step
};

// Strip matching first/last letter pairs until the pattern fails. Each step
// conjugates the interior by Phi_{-e d} and moves t by -e d; the pending
// shift is accumulated lazily.
inline ReductionCore cyclic_reduce_core(const Group& g, const OuterAuto& a,
                                        const DCtx& ctx, const FreeWord& w,
                                        AffineExp t) {
  const auto& ls = w.letters;
  std::size_t lo = 0, hi = ls.size();
  i64 shift = 0;
  ReductionCore out;
  while (hi - lo >= 2) {
    Letter first = phi_shift(g, shift, ls[lo]);
    Letter last = phi_shift(g, shift, ls[hi - 1]);
    int c = ctx.residue(t, g.n);
    if (!crs_pattern(g, a, first, last, c)) break;
    int e = a.eps_x * first.sign;
    out.witness_letters.push_back(crs_witness_letter(g, a, first));
    ++lo;
    --hi;
    shift -= static_cast<i64>(e) * a.d;
    t = ctx.add_d(t, -e);
  }
  FreeWord f;
  f.letters.reserve(hi - lo);
  for (std::size_t i = lo; i < hi; ++i) f.letters.push_back(phi_shift(g, shift, ls[i]));
  out.reduced = {std::move(f), t};
  return out;
}

// One backward-forward x-shift of the last letter. Requires a nonempty
// phi-cyclically-reduced word; preserves free length.
inline std::pair<ModExp, Letter> bf1_core(const Group& g, const OuterAuto& a,
                                          const DCtx& ctx, const ModExp& u) {
  Letter last = u.free.letters.back();
  int c = ctx.residue(u.t, g.n);
  Letter moved = phi_shift(g, -c, last);
  Letter img = phi_letter(g, a, moved);
  FreeWord f;
  f.letters.reserve(u.free.size());
  f.letters.push_back(img);
  i64 s = static_cast<i64>(last.sign) * a.d;
  for (std::size_t i = 0; i + 1 < u.free.size(); ++i)
    f.letters.push_back(phi_shift(g, s, u.free.letters[i]));
  if (f.size() >= 2 && f.letters[0].index == f.letters[1].index &&
      f.letters[0].sign == -f.letters[1].sign)
    throw std::logic_error("bf shift collapsed a phi-cyclically-reduced word");
  return {ModExp{std::move(f), ctx.add_d(u.t, last.sign)}, moved.inverse()};
}

}  // namespace detail

// phi(w)^{-1} u w, computed through the a1 a2 a3 decomposition and
// cross-checked against the generic multiply/apply_outer route.
inline ModularNF twisted_conjugate(const Group& g, const ModularNF& u,
                                   const GeodesicNF& w, const OuterAuto& a) {
  GeodesicNF ug = to_geodesic_nf(g, u);
  GeodesicNF generic =
      multiply(g, multiply(g, invert(g, apply_outer(g, a, w)), ug), w);

  GeodesicNF direct;
  i64 lam = w.t;
  if (w.free.empty()) {
    direct = {phi_shift(g, -static_cast<i64>(a.eps_y) * lam, u.free),
              ug.t + lam * (1 - a.eps_y)};
  } else {
    i64 sigma = exponent_sum(w.free);
    i64 gamma = -(sigma * a.d + static_cast<i64>(a.eps_y) * lam);
    FreeWord a1 = phi_shift(g, gamma, inverse(free_image(g, a, w.free)));
    FreeWord a2 = phi_shift(g, gamma, u.free);
    FreeWord a3 = phi_shift(g, gamma + u.c, w.free);
    FreeWord f = concat_reduce(g, concat_reduce(g, a1, a2), a3);
    direct = {std::move(f), ug.t + lam * (1 - a.eps_y) - sigma * a.d};
  }
  if (!(direct == generic))
    throw std::logic_error("twisted conjugation routes disagree");
  return to_modular(g, direct);
}

// phi-cyclically reduced: no first/last pattern permits shortening. Words of
// free length <= 1 are always reduced (free length parity is invariant under
// twisted conjugation, so length 1 is minimal).
inline bool is_phi_cr(const Group& g, const ModularNF& u, const OuterAuto& a) {
  if (u.free.size() <= 1) return true;
  return !detail::crs_pattern(g, a, u.free.letters.front(), u.free.letters.back(), u.c);
}

// A single applied shift, carrying the twisted-conjugacy witness.
struct ShiftMove {
  enum class Kind { YShift, BFShift, FBShift, CyclicStep };
  Kind kind;
  i64 param;  // lambda for YShift, letter count for x-shifts, step index otherwise
  GeodesicNF witness;
};

struct ReductionResult {
  ModularNF reduced;
  GeodesicNF witness;
  std::vector<ShiftMove> moves;
};

inline ReductionResult cyclic_reduce(const Group& g, const ModularNF& u,
                                     const OuterAuto& a) {
  detail::DCtx ctx{false, a.d};
  auto core = detail::cyclic_reduce_core(g, a, ctx, u.free, {total_y(g, u), 0});
  ReductionResult out;
  out.reduced = to_modular(g, {core.reduced.free, core.reduced.t.c0});
  i64 step = 0;
  for (Letter l : core.witness_letters) {
    GeodesicNF wl{FreeWord{{l}}, 0};
    out.moves.push_back({ShiftMove::Kind::CyclicStep, step++, wl});
    out.witness = multiply(g, out.witness, wl);
  }
  return out;
}

// Conjugation by y^lambda: u1 y^alpha -> Phi_{-eps_y lambda}(u1) y^{alpha +
// lambda (1 - eps_y)}.
inline ModularNF y_shift(const Group& g, const ModularNF& u, i64 lambda,
                         const OuterAuto& a) {
  return to_modular(g, {phi_shift(g, -static_cast<i64>(a.eps_y) * lambda, u.free),
                        total_y(g, u) + lambda * (1 - a.eps_y)});
}

inline GeodesicNF y_shift_witness(i64 lambda) { return {FreeWord{}, lambda}; }

namespace detail {
inline void require_phi_cr_split(const Group& g, const ModularNF& u, int count,
                                 const OuterAuto& a) {
  if (!is_phi_cr(g, u, a))
    throw std::invalid_argument("x-shift requires a phi-cyclically-reduced input");
  if (count < 1 || static_cast<std::size_t>(count) > u.free.size())
    throw std::invalid_argument("x-shift count must be in [1, free length]");
}
}  // namespace detail

// Backward-forward x-shift: send the last `count` letters u12 through phi and
// to the front. Result: [phi(Phi_{-c}(u12))]_F Phi_{s12 d}(u11) y^{t + s12 d}.
inline ModularNF bf_x_shift(const Group& g, const ModularNF& u, int count,
                            const OuterAuto& a) {
  detail::require_phi_cr_split(g, u, count, a);
  std::size_t cut = u.free.size() - static_cast<std::size_t>(count);
  FreeWord u11{{u.free.letters.begin(), u.free.letters.begin() + cut}};
  FreeWord u12{{u.free.letters.begin() + cut, u.free.letters.end()}};
  i64 s12 = exponent_sum(u12);
  FreeWord img = free_image(g, a, phi_shift(g, -u.c, u12));
  FreeWord f = concat_reduce(g, img, phi_shift(g, s12 * a.d, u11));
  if (f.size() != u.free.size())
    throw std::logic_error("bf shift changed free length of a reduced input");
  return to_modular(g, {std::move(f), total_y(g, u) + s12 * a.d});
}

inline GeodesicNF bf_x_shift_witness(const Group& g, const ModularNF& u, int count,
                                     const OuterAuto& a) {
  detail::require_phi_cr_split(g, u, count, a);
  std::size_t cut = u.free.size() - static_cast<std::size_t>(count);
  FreeWord u12{{u.free.letters.begin() + cut, u.free.letters.end()}};
  return {inverse(phi_shift(g, -u.c, u12)), 0};
}

// Forward-backward x-shift: send the first `count` letters u11 through
// phi^{-1} and to the back. Result: u12 Phi_c([phi^{-1}(u11)]_F)
// y^{t - eps_x eps_y s11 d}.
inline ModularNF fb_x_shift(const Group& g, const ModularNF& u, int count,
                            const OuterAuto& a) {
  detail::require_phi_cr_split(g, u, count, a);
  FreeWord u11{{u.free.letters.begin(), u.free.letters.begin() + count}};
  FreeWord u12{{u.free.letters.begin() + count, u.free.letters.end()}};
  i64 s11 = exponent_sum(u11);
  FreeWord img = free_image_inverse(g, a, u11);
  FreeWord f = concat_reduce(g, u12, phi_shift(g, u.c, img));
  if (f.size() != u.free.size())
    throw std::logic_error("fb shift changed free length of a reduced input");
  return to_modular(
      g, {std::move(f),
          total_y(g, u) - static_cast<i64>(a.eps_x) * a.eps_y * s11 * a.d});
}

inline GeodesicNF fb_x_shift_witness(const Group& g, const ModularNF& u, int count,
                                     const OuterAuto& a) {
  detail::require_phi_cr_split(g, u, count, a);
  FreeWord u11{{u.free.letters.begin(), u.free.letters.begin() + count}};
  return apply_outer_inverse(g, a, {u11, 0});
}

// Cyclic reduction with the twist parameter d kept symbolic in the residue
// class d = c (mod n). The strip pattern only sees d mod n, so the move
// sequence is the same for every admissible d; the exponent is affine in d.
struct SymReduction {
  FreeWord free;
  AffineExp t;
  std::vector<Letter> witness_letters;
};

inline SymReduction cyclic_reduce_symbolic(const Group& g, const FreeWord& w,
                                           AffineExp t, int eps_x, int eps_y, int c) {
  OuterAuto a_idx{eps_x, eps_y, c};
  detail::DCtx ctx{true, c};
  auto core = detail::cyclic_reduce_core(g, a_idx, ctx, w, t);
  return {core.reduced.free, core.reduced.t, std::move(core.witness_letters)};
}

}  // namespace bsnn
