#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "bsnn/words.hpp"

namespace bsnn {

// Word grammar:
//   word := term (sep term)*
//   term := gen ('^' signed-int)?
//   gen  := 'x' unsigned-int | 'y' | 'a' | 'b'
//   sep  := whitespace | '*'
// 'a' abbreviates x0 and 'b' abbreviates y. Empty input denotes the identity.
inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto skip_sep = [&]() {
    bool any = false;
    while (i < src.size() && (std::isspace(static_cast<unsigned char>(src[i])) || src[i] == '*')) {
      ++i;
      any = true;
    }
    return any;
  };
  skip_sep();
  bool first = true;
  while (i < src.size()) {
    if (!first) {
      if (!skip_sep())
        throw ParseError(std::string("expected separator before '") + src[i] + "'", i);
      if (i >= src.size()) break;
    }
    first = false;
    std::size_t start = i;
    Token tk;
    tk.pos = start;
    char c = src[i];
    if (c == 'x') {
      ++i;
      if (i >= src.size() || !std::isdigit(static_cast<unsigned char>(src[i])))
        throw ParseError("generator 'x' requires an index", start);
      i64 idx = 0;
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
        idx = idx * 10 + (src[i] - '0');
        if (idx > 1'000'000) throw ParseError("generator index too large", start);
        ++i;
      }
      tk.is_y = false;
      tk.index = static_cast<int>(idx);
    } else if (c == 'y' || c == 'b') {
      ++i;
      tk.is_y = true;
    } else if (c == 'a') {
      ++i;
      tk.is_y = false;
      tk.index = 0;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
    if (i < src.size() && src[i] == '^') {
      ++i;
      std::size_t expos = i;
      i64 sign = 1;
      if (i < src.size() && (src[i] == '-' || src[i] == '+')) {
        if (src[i] == '-') sign = -1;
        ++i;
      }
      if (i >= src.size() || !std::isdigit(static_cast<unsigned char>(src[i])))
        throw ParseError("'^' requires an integer exponent", expos);
      i64 mag = 0;
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
        mag = mag * 10 + (src[i] - '0');
        if (mag > 1'000'000'000) throw ParseError("exponent too large", expos);
        ++i;
      }
      tk.exponent = sign * mag;
    }
    out.push_back(tk);
  }
  return out;
}

inline GeodesicNF parse_geodesic(const Group& g, std::string_view src) {
  return to_geodesic(g, tokenize(src));
}

// Serialization: one-space-separated terms; adjacent equal letters coalesce
// into a power; exponents are printed only when != 1. The identity prints as
// the empty string, which parse accepts back.
inline std::string serialize(const FreeWord& w) {
  std::string out;
  std::size_t i = 0;
  while (i < w.size()) {
    std::size_t j = i;
    while (j < w.size() && w.letters[j] == w.letters[i]) ++j;
    i64 e = static_cast<i64>(j - i) * w.letters[i].sign;
    if (!out.empty()) out += ' ';
    out += 'x';
    out += std::to_string(w.letters[i].index);
    if (e != 1) {
      out += '^';
      out += std::to_string(e);
    }
    i = j;
  }
  return out;
}

inline std::string serialize(const GeodesicNF& u) {
  std::string out = serialize(u.free);
  if (u.t != 0) {
    if (!out.empty()) out += ' ';
    out += 'y';
    if (u.t != 1) {
      out += '^';
      out += std::to_string(u.t);
    }
  }
  return out;
}

inline std::string serialize(const Group& g, const ModularNF& m) {
  return serialize(to_geodesic_nf(g, m));
}

// Quotient element h y^c as a display string; "1" for the identity.
inline std::string quotient_str(const FreeWord& free, int c) {
  GeodesicNF q{free, c};
  std::string s = serialize(q);
  return s.empty() ? "1" : s;
}

// Central part y^{kn} as a display string; "1" when k = 0.
inline std::string garside_str(const Group& g, i64 k) {
  if (k == 0) return "1";
  GeodesicNF q{{}, k * g.n};
  return serialize(q);
}

}  // namespace bsnn
