#pragma once

#include <cstdint>
#include <cstdlib>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bsnn {

using i64 = std::int64_t;

// Rank parameter for BS(n,n) presented as F_n x| Z:
//   < x_0..x_{n-1}, y | y^-1 x_i y = x_{i+1 mod n} >.
// The even dihedral Artin group G(m) maps onto this via a -> x_0, b -> y
// with n = m/2.
struct Group {
  int n;

  explicit Group(int rank) : n(rank) {
    if (n < 2) throw std::invalid_argument("free rank n must be >= 2");
  }

  static Group from_artin(int m) {
    if (m < 4 || m % 2 != 0)
      throw std::invalid_argument("Artin parameter m must be even and >= 4");
    return Group(m / 2);
  }
};

// z mod n in {0..n-1} for every sign of z.
inline int mod_n(i64 z, int n) {
  i64 r = z % n;
  if (r < 0) r += n;
  return static_cast<int>(r);
}

struct Letter {
  int index;  // 0..n-1
  int sign;   // +1 or -1

  Letter inverse() const { return {index, -sign}; }
  friend bool operator==(const Letter&, const Letter&) = default;
};

// Freely reduced word over x_0..x_{n-1}. All constructors below maintain
// reducedness; equality is letterwise.
struct FreeWord {
  std::vector<Letter> letters;

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  friend bool operator==(const FreeWord&, const FreeWord&) = default;
};

namespace detail {
inline void push_reduced(std::vector<Letter>& acc, Letter l) {
  if (!acc.empty() && acc.back().index == l.index && acc.back().sign == -l.sign)
    acc.pop_back();
  else
    acc.push_back(l);
}
}  // namespace detail

inline FreeWord free_reduce(const Group& g, std::span<const Letter> seq) {
  FreeWord out;
  out.letters.reserve(seq.size());
  for (const Letter& l : seq) {
    if (l.index < 0 || l.index >= g.n)
      throw std::invalid_argument("letter index out of range for rank n=" +
                                  std::to_string(g.n));
    if (l.sign != 1 && l.sign != -1)
      throw std::invalid_argument("letter sign must be +1 or -1");
    detail::push_reduced(out.letters, l);
  }
  return out;
}

inline FreeWord free_reduce(const Group& g, const std::vector<Letter>& seq) {
  return free_reduce(g, std::span<const Letter>(seq));
}

inline FreeWord inverse(const FreeWord& w) {
  FreeWord out;
  out.letters.reserve(w.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    out.letters.push_back(it->inverse());
  return out;
}

inline FreeWord concat_reduce(const Group& g, const FreeWord& a, const FreeWord& b) {
  FreeWord out = a;
  out.letters.reserve(a.size() + b.size());
  for (const Letter& l : b.letters) detail::push_reduced(out.letters, l);
  (void)g;
  return out;
}

inline i64 exponent_sum(const FreeWord& w) {
  i64 s = 0;
  for (const Letter& l : w.letters) s += l.sign;
  return s;
}

// The index-shift automorphism Phi_s of F_n: x_i -> x_{[i-s]}, realizing the
// defining relation y^s x_i^e = Phi_s(x_i^e) y^s. Depends on s mod n only.
inline Letter phi_shift(const Group& g, i64 s, Letter l) {
  return {mod_n(l.index - s, g.n), l.sign};
}

inline FreeWord phi_shift(const Group& g, i64 s, const FreeWord& w) {
  FreeWord out;
  out.letters.reserve(w.size());
  for (const Letter& l : w.letters) out.letters.push_back(phi_shift(g, s, l));
  return out;
}

// Geodesic normal form u1 * y^t with u1 freely reduced; unique per element.
struct GeodesicNF {
  FreeWord free;
  i64 t = 0;

  bool is_identity() const { return free.empty() && t == 0; }
  friend bool operator==(const GeodesicNF&, const GeodesicNF&) = default;
};

inline GeodesicNF multiply(const Group& g, const GeodesicNF& u, const GeodesicNF& v) {
  // u1 y^t v1 y^s = u1 Phi_t(v1) y^{t+s}
  return {concat_reduce(g, u.free, phi_shift(g, u.t, v.free)), u.t + v.t};
}

inline GeodesicNF invert(const Group& g, const GeodesicNF& u) {
  // (u1 y^t)^-1 = y^-t u1^-1 = Phi_{-t}(u1^-1) y^-t
  return {phi_shift(g, -u.t, inverse(u.free)), -u.t};
}

// Modular normal form (h y^c, y^{kn}) with c in {0..n-1}; t = kn + c uses
// floor division for every sign of t. y^n is central, so the second
// component is a central "Garside" power.
struct ModularNF {
  FreeWord free;
  int c = 0;
  i64 k = 0;

  friend bool operator==(const ModularNF&, const ModularNF&) = default;
};

inline ModularNF to_modular(const Group& g, const GeodesicNF& u) {
  int c = mod_n(u.t, g.n);
  return {u.free, c, (u.t - c) / g.n};
}

inline GeodesicNF to_geodesic_nf(const Group& g, const ModularNF& m) {
  return {m.free, m.k * g.n + m.c};
}

inline i64 total_y(const Group& g, const ModularNF& m) { return m.k * g.n + m.c; }

inline i64 garside_exponent(const Group& g, const ModularNF& m) { return m.k * g.n; }

// One parsed input token: a generator with an exponent, plus the source
// position for diagnostics.
struct Token {
  bool is_y = false;
  int index = 0;
  i64 exponent = 1;
  std::size_t pos = 0;
};

struct ParseError : std::runtime_error {
  std::size_t position;
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg), position(pos) {}
};

// Normalization: push every y power to the right across x letters (shifting
// indices by the accumulated exponent) while freely reducing. A single pass
// with a reduction stack reaches the fixed point.
inline GeodesicNF to_geodesic(const Group& g, std::span<const Token> raw) {
  constexpr i64 kMaxExpand = 1'000'000;
  GeodesicNF out;
  for (const Token& tk : raw) {
    if (tk.is_y) {
      out.t += tk.exponent;
      continue;
    }
    if (tk.index < 0 || tk.index >= g.n)
      throw ParseError("generator index " + std::to_string(tk.index) +
                           " out of range for n=" + std::to_string(g.n),
                       tk.pos);
    i64 e = tk.exponent;
    if (e > kMaxExpand || e < -kMaxExpand)
      throw ParseError("exponent magnitude exceeds expansion limit", tk.pos);
    Letter l{mod_n(tk.index - out.t, g.n), e >= 0 ? 1 : -1};
    for (i64 r = std::llabs(e); r > 0; --r) detail::push_reduced(out.free.letters, l);
  }
  return out;
}

inline GeodesicNF to_geodesic(const Group& g, const std::vector<Token>& raw) {
  return to_geodesic(g, std::span<const Token>(raw));
}

}  // namespace bsnn
