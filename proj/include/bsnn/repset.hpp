#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "bsnn/shifts.hpp"

namespace bsnn {

namespace detail {

using u64 = std::uint64_t;

inline u64 hash_mix(u64 h, u64 v) {
  v *= 0x9e3779b97f4a7c15ULL;
  v ^= v >> 29;
  h ^= v + 0x517cc1b727220a95ULL + (h << 6) + (h >> 2);
  return h;
}

inline u64 quotient_hash(const FreeWord& f, int c) {
  u64 h = 0xcbf29ce484222325ULL;
  for (const Letter& l : f.letters)
    h = hash_mix(h, (static_cast<u64>(l.index) << 1) | (l.sign < 0 ? 1 : 0));
  return hash_mix(h, static_cast<u64>(c) + 0x100);
}

inline std::string quotient_key(const FreeWord& f, int c) {
  std::string s;
  s.reserve(f.size() * 4 + 4);
  for (const Letter& l : f.letters) {
    s += (l.sign > 0 ? '+' : '-');
    s += std::to_string(l.index);
    s += ',';
  }
  s += '|';
  s += std::to_string(c);
  return s;
}

// Canonical-solution preference: fewest shift applications, then smallest |d|.
inline std::array<i64, 4> match_key(i64 lam, i64 d) {
  return {static_cast<i64>(std::llabs(lam)), lam < 0 ? 1 : 0,
          static_cast<i64>(std::llabs(d)), d < 0 ? 1 : 0};
}

// lambda*delta + mu*P = diff over integers, canonical minimal |lambda|.
inline std::optional<std::pair<i64, i64>> solve_lattice(i64 delta, i64 P, i64 diff) {
  if (delta == 0 && P == 0) {
    if (diff != 0) return std::nullopt;
    return std::make_pair<i64, i64>(0, 0);
  }
  if (delta == 0) {
    if (diff % P != 0) return std::nullopt;
    return std::make_pair<i64, i64>(0, diff / P);
  }
  if (P == 0) {
    if (diff % delta != 0) return std::nullopt;
    return std::make_pair(diff / delta, i64{0});
  }
  ExtGcd e = ext_gcd(delta, P);
  if (diff % e.g != 0) return std::nullopt;
  i64 m = diff / e.g;
  i64 lam0 = e.x * m, mu0 = e.y * m;
  i64 lstep = P / e.g, mstep = -delta / e.g;
  i64 tc = -lam0 / lstep;
  std::optional<std::pair<i64, i64>> best;
  auto consider = [&](i64 t) {
    i64 lam = lam0 + lstep * t, mu = mu0 + mstep * t;
    if (!best || match_key(lam, mu) < match_key(best->first, best->second))
      best = std::make_pair(lam, mu);
  };
  for (i64 t = tc - 2; t <= tc + 2; ++t) consider(t);
  return best;
}

}  // namespace detail

struct RepSetMember {
  FreeWord free;
  int c = 0;
  AffineExp garside;  // Garside exponent k*n, affine in d when symbolic
  int chain_pos = 0;
  i64 y_k = 0;
};

struct MemberMatch {
  int chain_pos = 0;
  i64 y_k = 0;
  i64 lambda = 0;  // signed multiplier of the twisted shift z
  i64 loops = 0;   // signed number of full chain loops applied
  i64 mu = 0;      // central y^n conjugation count (eps_y = -1 only)
  i64 d = 0;       // twist parameter in effect (solved in symbolic mode)
  GeodesicNF witness;
};

// Representative family for the twisted conjugacy class of a
// phi-cyclically-reduced base point: the single-letter BF chain until the
// quotient element recurs, closed under y-shifts y^k for k in {0..n-1},
// together with the twisted shift z between the Garside parts at recurrence.
// Chain elements are stored compactly (one letter and one exponent per step)
// and rebuilt on demand, so a chain of length L over a free word of length q
// costs O(L) memory, not O(L q).
class RepSet {
 public:
  Group group;
  OuterAuto index_auto;  // d replaced by its residue c when symbolic
  bool symbolic = false;

  RepSet(Group g, OuterAuto a, bool sym) : group(g), index_auto(a), symbolic(sym) {}

  const FreeWord& base_free() const { return base_; }
  AffineExp base_t() const { return ts_.front(); }
  int chain_length() const { return static_cast<int>(ts_.size()); }
  AffineExp chain_t(int j) const { return ts_[static_cast<std::size_t>(j)]; }

  // Free part of chain element j, rebuilt from the step letters: position p
  // holds the letter introduced at step j-p (shift-adjusted), or a shifted
  // base letter once p walks past all steps.
  FreeWord chain_free(int j) const {
    std::size_t q = base_.size();
    FreeWord f;
    f.letters.reserve(q);
    for (std::size_t p = 0; p < q; ++p) {
      i64 i = static_cast<i64>(j) - static_cast<i64>(p);
      if (i >= 1) {
        Letter img = phi_letter(group, index_auto,
                                wit_[static_cast<std::size_t>(i - 1)].inverse());
        f.letters.push_back(phi_shift(
            group, sh_[static_cast<std::size_t>(j)] - sh_[static_cast<std::size_t>(i)],
            img));
      } else {
        f.letters.push_back(phi_shift(group, sh_[static_cast<std::size_t>(j)],
                                      base_.letters[static_cast<std::size_t>(-i)]));
      }
    }
    return f;
  }

  int chain_c(int j) const {
    detail::DCtx ctx{symbolic, index_auto.d};
    return ctx.residue(ts_[static_cast<std::size_t>(j)], group.n);
  }

  // Signed Garside change over one full chain loop.
  AffineExp loop_delta() const { return delta_; }

  i64 twisted_shift_at(i64 d) const { return std::llabs(delta_.eval(d)); }

  GeodesicNF chain_witness(int upto) const {
    FreeWord f;
    for (int s = 0; s < upto; ++s)
      detail::push_reduced(f.letters, wit_[static_cast<std::size_t>(s)]);
    return {std::move(f), 0};
  }

  GeodesicNF loop_witness() const { return chain_witness(chain_length()); }

  GeodesicNF member_witness(int chain_pos, i64 y_k) const {
    GeodesicNF w = chain_witness(chain_pos);
    w.t += y_k;
    return w;
  }

  // Total y-exponent of the member (chain_pos, y_k).
  AffineExp member_t(int chain_pos, i64 y_k) const {
    return ts_[static_cast<std::size_t>(chain_pos)] +
           y_k * static_cast<i64>(1 - index_auto.eps_y);
  }

  RepSetMember member(int chain_pos, i64 y_k) const {
    detail::DCtx ctx{symbolic, index_auto.d};
    FreeWord f = phi_shift(group, -static_cast<i64>(index_auto.eps_y) * y_k,
                           chain_free(chain_pos));
    AffineExp t = member_t(chain_pos, y_k);
    int c = ctx.residue(t, group.n);
    return {std::move(f), c, t - c, chain_pos, y_k};
  }

  // Materialized, deduplicated family (chain-major, then y-shift order).
  std::vector<RepSetMember> members() const {
    std::vector<RepSetMember> out;
    std::unordered_set<std::string> seen;
    for (int j = 0; j < chain_length(); ++j) {
      for (i64 k = 0; k < group.n; ++k) {
        RepSetMember m = member(j, k);
        std::string key = detail::quotient_key(m.free, m.c) + '#' +
                          std::to_string(m.garside.c0) + ':' +
                          std::to_string(m.garside.cd);
        if (seen.insert(std::move(key)).second) out.push_back(std::move(m));
      }
    }
    return out;
  }

  std::vector<ShiftMove> spanning_moves() const {
    std::vector<ShiftMove> out;
    for (int s = 0; s < chain_length(); ++s)
      out.push_back({ShiftMove::Kind::BFShift, 1,
                     {FreeWord{{wit_[static_cast<std::size_t>(s)]}}, 0}});
    for (i64 k = 1; k < group.n; ++k)
      out.push_back({ShiftMove::Kind::YShift, k, y_shift_witness(k)});
    return out;
  }

  // Exact chain position of the quotient element (f, c), if present.
  std::optional<int> chain_lookup(const FreeWord& f, int c) const {
    auto it = index_.find(detail::quotient_hash(f, c));
    if (it == index_.end()) return std::nullopt;
    for (int j : it->second)
      if (chain_c(j) == c && chain_free(j) == f) return j;
    return std::nullopt;
  }

  friend RepSet detail_build(const Group& g, const FreeWord& f, AffineExp t,
                             const OuterAuto& a_idx, bool symbolic);

 private:
  FreeWord base_;
  std::vector<AffineExp> ts_;  // per chain index
  std::vector<Letter> wit_;    // conjugating letter of step j -> j+1
  std::vector<i64> sh_;        // prefix index-shift after j steps; sh_[0] = 0
  AffineExp delta_;
  std::unordered_map<detail::u64, std::vector<int>> index_;
};

inline RepSet detail_build(const Group& g, const FreeWord& f, AffineExp t,
                           const OuterAuto& a_idx, bool symbolic) {
  if (f.empty())
    throw std::invalid_argument("rep set requires a nonempty free part");
  detail::DCtx ctx{symbolic, a_idx.d};
  if (f.size() >= 2 &&
      detail::crs_pattern(g, a_idx, f.letters.front(), f.letters.back(),
                          ctx.residue(t, g.n)))
    throw std::invalid_argument("rep set requires a phi-cyclically-reduced base point");

  RepSet r(g, a_idx, symbolic);
  r.base_ = f;
  i64 q = static_cast<i64>(f.size());
  i64 cap = 2 * static_cast<i64>(g.n) * g.n * q + 1;
  detail::ModExp cur{f, t};
  int base_c = ctx.residue(t, g.n);
  r.sh_.push_back(0);
  for (i64 step = 0;; ++step) {
    if (step > cap)
      throw std::logic_error("rep set chain exceeded its structural bound");
    int c = ctx.residue(cur.t, g.n);
    if (step > 0 && c == base_c && cur.free == f) {
      r.delta_ = cur.t - t;
      break;
    }
    r.index_[detail::quotient_hash(cur.free, c)].push_back(static_cast<int>(step));
    r.ts_.push_back(cur.t);
    auto [next, wl] = detail::bf1_core(g, a_idx, ctx, cur);
    r.wit_.push_back(wl);
    r.sh_.push_back(r.sh_.back() - static_cast<i64>(wl.sign) * a_idx.d);
    cur = std::move(next);
  }
  return r;
}

inline RepSet build_rep_set(const Group& g, const ModularNF& u, const OuterAuto& a) {
  return detail_build(g, u.free, {total_y(g, u), 0}, a, false);
}

inline RepSet build_rep_set_symbolic(const Group& g, const FreeWord& f, AffineExp t,
                                     int eps_x, int eps_y, int c) {
  if (c < 0 || c >= g.n) throw std::invalid_argument("residue c must be in [0, n)");
  return detail_build(g, f, t, OuterAuto{eps_x, eps_y, c}, true);
}

inline RepSet build_rep_set_symbolic(const Group& g, const ModularNF& u, int eps_x,
                                     int eps_y, int c) {
  return build_rep_set_symbolic(g, u.free, {total_y(g, u), 0}, eps_x, eps_y, c);
}

namespace detail {

// Solutions of diff(d) = lambda * delta(d) with d = c (mod n), for the
// symbolic eps_y = +1 matcher. Writing d = c + n*del the equation is bilinear
// in (lambda, del); factor (a*lam + cc)(a*del + b) = N and walk divisors.
inline std::vector<std::pair<i64, i64>> solve_bilinear(i64 D0, i64 D1, i64 Z0, i64 Z1,
                                                       int c, int n) {
  std::vector<std::pair<i64, i64>> out;  // (lambda, d)
  i64 a = -static_cast<i64>(n) * Z1;
  i64 b = -(Z0 + Z1 * c);
  i64 cc = static_cast<i64>(n) * D1;
  i64 e = D0 + D1 * c;
  auto push_if_valid = [&](i64 lam, i64 d) {
    if (mod_n(d - c, n) != 0) return;
    if (D0 + D1 * d != lam * (Z0 + Z1 * d)) return;
    out.emplace_back(lam, d);
  };
  auto min_abs_d = [&]() {
    i64 lo = c, hi = static_cast<i64>(c) - n;
    return (std::llabs(lo) <= std::llabs(hi)) ? lo : hi;
  };
  if (a != 0) {
    i64 N = b * cc - a * e;
    if (N != 0) {
      for (i64 u : signed_divisors(N)) {
        i64 v = N / u;
        if ((u - cc) % a != 0 || (v - b) % a != 0) continue;
        push_if_valid((u - cc) / a, c + static_cast<i64>(n) * ((v - b) / a));
      }
    } else {
      if (cc % a == 0) push_if_valid(-cc / a, min_abs_d());
      if (b % a == 0) push_if_valid(0, c + static_cast<i64>(n) * (-b / a));
    }
    return out;
  }
  // a == 0: e + b*lambda + cc*del = 0
  if (b == 0 && cc == 0) {
    if (e == 0) push_if_valid(0, min_abs_d());
    return out;
  }
  auto ls = solve_linear(b, cc, -e);
  if (!ls) return out;
  // One-parameter family: sample around the |lambda|- and |d|-minimizing
  // parameters and keep the valid points; the caller picks the canonical one.
  std::vector<i64> ts;
  if (ls->xstep != 0) ts.push_back(-ls->x0 / ls->xstep);
  if (ls->ystep != 0) ts.push_back(-ls->y0 / ls->ystep);
  if (ts.empty()) ts.push_back(0);
  for (i64 t0 : ts)
    for (i64 t = t0 - 2; t <= t0 + 2; ++t)
      push_if_valid(ls->x0 + ls->xstep * t,
                    c + static_cast<i64>(n) * (ls->y0 + ls->ystep * t));
  return out;
}

}  // namespace detail

// Membership of the quotient-and-Garside data (vfree, vc, vgar) in the family
// generated by the rep set, up to the twisted shift. Admissible Garside
// differences at a matching quotient form the lattice z*Z + n(1-eps_y)*Z:
// chain loops contribute z, and for eps_y = -1 conjugation by the central
// y^{n*mu} keeps the quotient while adding y^{2*n*mu}.
inline std::optional<MemberMatch> member_match(const FreeWord& vfree, int vc,
                                               AffineExp vgar, const RepSet& r) {
  const Group& g = r.group;
  const OuterAuto& a = r.index_auto;
  detail::DCtx ctx{r.symbolic, a.d};
  std::optional<MemberMatch> best;
  std::optional<std::array<i64, 4>> best_key;

  for (i64 k = 0; k < g.n; ++k) {
    // Undo the y-shift by k on the quotient element.
    FreeWord uf = phi_shift(g, static_cast<i64>(a.eps_y) * k, vfree);
    AffineExp vt = vgar + vc;
    AffineExp ut = vt - k * static_cast<i64>(1 - a.eps_y);
    int uc = ctx.residue(ut, g.n);
    auto j = r.chain_lookup(uf, uc);
    if (!j) continue;
    AffineExp diff = vt - r.member_t(*j, k);
    AffineExp delta = r.loop_delta();

    struct Cand {
      i64 loops, mu, d;
    };
    std::vector<Cand> cands;
    if (!r.symbolic) {
      i64 P = static_cast<i64>(g.n) * (1 - a.eps_y);
      auto s = detail::solve_lattice(delta.c0, P, diff.c0);
      if (s) cands.push_back({s->first, s->second, a.d});
    } else if (a.eps_y == 1) {
      for (auto [lam, d] :
           detail::solve_bilinear(diff.c0, diff.cd, delta.c0, delta.cd, a.d, g.n))
        cands.push_back({lam, 0, d});
    } else {
      // eps_y = -1: admissibility depends on d mod 2n only; check the two
      // residue families c, c + n and take the smallest |d| in each.
      i64 twon = 2 * static_cast<i64>(g.n);
      for (i64 r0 : {static_cast<i64>(a.d), static_cast<i64>(a.d) + g.n}) {
        i64 gr = std::gcd(std::llabs(delta.eval(r0)), twon);  // >= 1
        if (diff.eval(r0) % gr != 0) continue;
        i64 d1 = r0, d2 = r0 - twon;
        i64 d = (std::llabs(d1) <= std::llabs(d2)) ? d1 : d2;
        auto s = detail::solve_lattice(delta.eval(d), twon, diff.eval(d));
        if (s) cands.push_back({s->first, s->second, d});
      }
    }

    for (const Cand& cd : cands) {
      i64 dv = delta.eval(cd.d);
      i64 lambda = dv > 0 ? cd.loops : (dv < 0 ? -cd.loops : 0);
      auto key = detail::match_key(lambda, cd.d);
      if (best_key && !(key < *best_key)) continue;
      MemberMatch m;
      m.chain_pos = *j;
      m.y_k = k;
      m.loops = cd.loops;
      m.mu = cd.mu;
      m.d = cd.d;
      m.lambda = lambda;
      GeodesicNF w;
      GeodesicNF loop = r.loop_witness();
      if (cd.loops < 0) loop = invert(g, loop);
      for (i64 i = 0; i < std::llabs(cd.loops); ++i) w = multiply(g, w, loop);
      if (cd.mu != 0) w = multiply(g, w, y_shift_witness(static_cast<i64>(g.n) * cd.mu));
      w = multiply(g, w, r.member_witness(*j, k));
      m.witness = std::move(w);
      best = std::move(m);
      best_key = key;
    }
  }
  return best;
}

inline std::optional<MemberMatch> member_match(const ModularNF& v, const RepSet& r) {
  return member_match(v.free, v.c, {garside_exponent(r.group, v), 0}, r);
}

// Full closure of u under x-shifts and y-shifts; finite exactly when
// eps_y = 1 and (the exponent sum vanishes or eps_x = -1).
inline std::vector<ModularNF> enumerate_finite_closure(const Group& g, const ModularNF& u,
                                                       const OuterAuto& a) {
  if (u.free.empty())
    throw std::invalid_argument("finite closure requires a nonempty free part");
  if (a.eps_y != 1 || (exponent_sum(u.free) != 0 && a.eps_x != -1))
    throw std::invalid_argument(
        "finite closure requires eps_y = 1 and (zero exponent sum or eps_x = -1)");
  if (!is_phi_cr(g, u, a))
    throw std::invalid_argument("finite closure requires a phi-cyclically-reduced input");

  auto full_key = [&](const ModularNF& m) {
    return detail::quotient_key(m.free, m.c) + '#' + std::to_string(m.k);
  };
  i64 q = static_cast<i64>(u.free.size());
  i64 cap = 16 * static_cast<i64>(g.n) * g.n * std::max<i64>(q, 1) * g.n + 64;

  std::vector<ModularNF> out;
  std::unordered_set<std::string> seen;
  std::deque<ModularNF> queue;
  seen.insert(full_key(u));
  queue.push_back(u);
  while (!queue.empty()) {
    ModularNF cur = std::move(queue.front());
    queue.pop_front();
    out.push_back(cur);
    if (static_cast<i64>(out.size()) > cap)
      throw std::logic_error("finite closure exceeded its structural bound");
    std::vector<ModularNF> next;
    int qq = static_cast<int>(cur.free.size());
    for (int cnt = 1; cnt <= qq; ++cnt) {
      next.push_back(bf_x_shift(g, cur, cnt, a));
      next.push_back(fb_x_shift(g, cur, cnt, a));
    }
    for (i64 lam = 1; lam < g.n; ++lam) next.push_back(y_shift(g, cur, lam, a));
    for (ModularNF& m : next)
      if (seen.insert(full_key(m)).second) queue.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end(), [](const ModularNF& x, const ModularNF& y) {
    if (x.c != y.c) return x.c < y.c;
    if (x.k != y.k) return x.k < y.k;
    if (x.free.size() != y.free.size()) return x.free.size() < y.free.size();
    for (std::size_t i = 0; i < x.free.size(); ++i) {
      const Letter &lx = x.free.letters[i], &ly = y.free.letters[i];
      if (lx.index != ly.index) return lx.index < ly.index;
      if (lx.sign != ly.sign) return lx.sign > ly.sign;
    }
    return false;
  });
  return out;
}

}  // namespace bsnn
