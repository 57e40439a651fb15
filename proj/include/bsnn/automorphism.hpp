#pragma once

#include "bsnn/words.hpp"

namespace bsnn {

// Outer class representative phi = (eps_x, eps_y, d):
//   phi(x_0) = x_0^{eps_x} y^d,  phi(y) = y^{eps_y}.
struct OuterAuto {
  int eps_x = 1;
  int eps_y = 1;
  i64 d = 0;

  OuterAuto() = default;
  OuterAuto(int ex, int ey, i64 dd) : eps_x(ex), eps_y(ey), d(dd) {
    if ((ex != 1 && ex != -1) || (ey != 1 && ey != -1))
      throw std::invalid_argument("automorphism signs must be +1 or -1");
  }

  bool is_identity() const { return eps_x == 1 && eps_y == 1 && d == 0; }
  friend bool operator==(const OuterAuto&, const OuterAuto&) = default;
};

// Free part of phi(x_i^r); the discarded y part is y^{r d}.
inline Letter phi_letter(const Group& g, const OuterAuto& a, Letter l) {
  if (l.sign > 0) return {mod_n(static_cast<i64>(a.eps_y) * l.index, g.n), a.eps_x};
  return {mod_n(static_cast<i64>(a.eps_y) * l.index + a.d, g.n), -a.eps_x};
}

// Free part of phi^{-1}(x_i^r); the discarded y part is y^{-eps_x eps_y r d}.
inline Letter phi_inv_letter(const Group& g, const OuterAuto& a, Letter l) {
  int out_sign = a.eps_x * l.sign;
  if (out_sign > 0) return {mod_n(static_cast<i64>(a.eps_y) * l.index, g.n), out_sign};
  return {mod_n(static_cast<i64>(a.eps_y) * (l.index - a.d), g.n), out_sign};
}

// [phi(w)]_F: the letterwise image with each letter shifted by Phi_{s d},
// s the exponent sum of the preceding letters. Reduced input stays reduced.
inline FreeWord free_image(const Group& g, const OuterAuto& a, const FreeWord& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  i64 partial = 0;
  for (const Letter& l : w.letters) {
    detail::push_reduced(out, phi_shift(g, partial * a.d, phi_letter(g, a, l)));
    partial += l.sign;
  }
  return FreeWord{std::move(out)};
}

// [phi^{-1}(w)]_F with interleaving shifts Phi_{-eps_x eps_y s d}.
inline FreeWord free_image_inverse(const Group& g, const OuterAuto& a, const FreeWord& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  i64 partial = 0;
  i64 f = -static_cast<i64>(a.eps_x) * a.eps_y;
  for (const Letter& l : w.letters) {
    detail::push_reduced(out, phi_shift(g, f * partial * a.d, phi_inv_letter(g, a, l)));
    partial += l.sign;
  }
  return FreeWord{std::move(out)};
}

inline GeodesicNF apply_outer(const Group& g, const OuterAuto& a, const GeodesicNF& u) {
  i64 sigma = exponent_sum(u.free);
  return {free_image(g, a, u.free), sigma * a.d + static_cast<i64>(a.eps_y) * u.t};
}

inline GeodesicNF apply_outer_inverse(const Group& g, const OuterAuto& a,
                                      const GeodesicNF& u) {
  i64 sigma = exponent_sum(u.free);
  return {free_image_inverse(g, a, u.free),
          -static_cast<i64>(a.eps_x) * a.eps_y * sigma * a.d +
              static_cast<i64>(a.eps_y) * u.t};
}

// Full automorphism psi = inn_g . phi acting as w -> g^-1 phi(w) g.
struct FullAuto {
  OuterAuto outer;
  GeodesicNF inner;  // the conjugating element g

  friend bool operator==(const FullAuto&, const FullAuto&) = default;
};

inline GeodesicNF apply_full(const Group& g, const FullAuto& f, const GeodesicNF& u) {
  return multiply(g, multiply(g, invert(g, f.inner), apply_outer(g, f.outer, u)),
                  f.inner);
}

inline GeodesicNF apply_full_inverse(const Group& g, const FullAuto& f,
                                     const GeodesicNF& u) {
  // psi^{-1}(w) = phi^{-1}(g w g^{-1})
  return apply_outer_inverse(
      g, f.outer, multiply(g, multiply(g, f.inner, u), invert(g, f.inner)));
}

}  // namespace bsnn
