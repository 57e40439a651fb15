#pragma once

#include <cstdlib>
#include <optional>
#include <vector>

#include "bsnn/words.hpp"

namespace bsnn {

// Integer-affine expression c0 + cd * d in the symbolic parameter d.
// Concrete quantities are represented with cd = 0.
struct AffineExp {
  i64 c0 = 0;
  i64 cd = 0;

  i64 eval(i64 d) const { return c0 + cd * d; }
  bool is_constant() const { return cd == 0; }

  friend AffineExp operator+(AffineExp a, AffineExp b) { return {a.c0 + b.c0, a.cd + b.cd}; }
  friend AffineExp operator-(AffineExp a, AffineExp b) { return {a.c0 - b.c0, a.cd - b.cd}; }
  friend AffineExp operator+(AffineExp a, i64 v) { return {a.c0 + v, a.cd}; }
  friend AffineExp operator-(AffineExp a, i64 v) { return {a.c0 - v, a.cd}; }
  friend bool operator==(const AffineExp&, const AffineExp&) = default;
};

// Extended gcd: g = gcd(|a|,|b|) >= 0 with a*x + b*y = g.
struct ExtGcd {
  i64 g, x, y;
};

inline ExtGcd ext_gcd(i64 a, i64 b) {
  if (b == 0) {
    if (a == 0) return {0, 0, 0};
    return a > 0 ? ExtGcd{a, 1, 0} : ExtGcd{-a, -1, 0};
  }
  ExtGcd sub = ext_gcd(b, a % b);
  return {sub.g, sub.y, sub.x - (a / b) * sub.y};
}

// Integer solutions of A x + B y = C, parametrized as
//   x = x0 + xstep * t, y = y0 + ystep * t.
// When both steps are zero the solution is unique; nullopt when unsolvable.
struct LinearSolutions {
  i64 x0, y0, xstep, ystep;
};

inline std::optional<LinearSolutions> solve_linear(i64 A, i64 B, i64 C) {
  if (A == 0 && B == 0) {
    if (C != 0) return std::nullopt;
    return LinearSolutions{0, 0, 1, 0};  // x free; callers handle y via symmetry
  }
  ExtGcd e = ext_gcd(A, B);
  if (C % e.g != 0) return std::nullopt;
  i64 m = C / e.g;
  return LinearSolutions{e.x * m, e.y * m, B / e.g, -A / e.g};
}

// All divisors of |v| with both signs, v != 0.
inline std::vector<i64> signed_divisors(i64 v) {
  i64 a = std::llabs(v);
  std::vector<i64> out;
  for (i64 i = 1; i * i <= a; ++i) {
    if (a % i != 0) continue;
    out.push_back(i);
    out.push_back(-i);
    if (i != a / i) {
      out.push_back(a / i);
      out.push_back(-(a / i));
    }
  }
  return out;
}

}  // namespace bsnn
