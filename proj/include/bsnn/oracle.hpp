#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "bsnn/shifts.hpp"

namespace bsnn {

struct SearchBudget {
  int max_free_len = 4;
  i64 max_abs_y = 8;
  i64 node_cap = 20'000'000;  // candidates examined before giving up
};

class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& msg) : std::runtime_error(msg) {}
};

namespace detail {

inline int letter_rank(Letter l) { return l.index * 2 + (l.sign < 0 ? 1 : 0); }

inline Letter rank_letter(int r) { return {r / 2, (r % 2 == 0) ? 1 : -1}; }

// Enumerates reduced words of a fixed length in lex order of letter ranks.
class ReducedWordIter {
 public:
  ReducedWordIter(int n, int len) : n_(n), len_(len) {
    if (len_ == 0) {
      done_ = false;
      return;
    }
    ranks_.assign(static_cast<std::size_t>(len_), 0);
    done_ = !fill_from(0);
  }

  bool done() const { return done_; }

  FreeWord current() const {
    FreeWord w;
    w.letters.reserve(ranks_.size());
    for (int r : ranks_) w.letters.push_back(rank_letter(r));
    return w;
  }

  i64 exponent_sum() const {
    i64 s = 0;
    for (int r : ranks_) s += (r % 2 == 0) ? 1 : -1;
    return s;
  }

  void advance() {
    if (len_ == 0) {
      done_ = true;
      return;
    }
    int pos = len_ - 1;
    while (pos >= 0) {
      ranks_[static_cast<std::size_t>(pos)]++;
      if (ranks_[static_cast<std::size_t>(pos)] < 2 * n_ &&
          ok_at(pos) && fill_from(pos + 1))
        return;
      if (ranks_[static_cast<std::size_t>(pos)] >= 2 * n_) {
        --pos;
        continue;
      }
      // rank valid but blocked: keep bumping this position
    }
    done_ = true;
  }

 private:
  bool ok_at(int pos) const {
    if (pos == 0) return true;
    int prev = ranks_[static_cast<std::size_t>(pos - 1)];
    int cur = ranks_[static_cast<std::size_t>(pos)];
    return (prev ^ 1) != cur;  // adjacent inverses cancel
  }

  bool fill_from(int pos) {
    for (int p = pos; p < len_; ++p) {
      ranks_[static_cast<std::size_t>(p)] = 0;
      while (!ok_at(p)) {
        ranks_[static_cast<std::size_t>(p)]++;
        if (ranks_[static_cast<std::size_t>(p)] >= 2 * n_) return false;
      }
    }
    return true;
  }

  int n_;
  int len_;
  std::vector<int> ranks_;
  bool done_ = true;
};

// y exponents in the order 0, 1, -1, 2, -2, ...
inline i64 y_at(i64 idx) { return (idx % 2 == 1) ? (idx + 1) / 2 : -idx / 2; }

}  // namespace detail

// Exhaustive search for w = w1 y^lambda with phi(w)^{-1} u w = v, over
// |w1| <= max_free_len and |lambda| <= max_abs_y, in the canonical order
// (|w1|, lambda-rank, lex). Returns the first hit; nullopt when the radius
// is exhausted. Throws BudgetError past node_cap.
inline std::optional<GeodesicNF> find_twisted_conjugator(const Group& g,
                                                         const ModularNF& u,
                                                         const ModularNF& v,
                                                         const OuterAuto& a,
                                                         const SearchBudget& budget) {
  if ((u.free.size() & 1) != (v.free.size() & 1)) return std::nullopt;
  i64 su = exponent_sum(u.free), sv = exponent_sum(v.free);
  if (a.eps_x == 1 && su != sv) return std::nullopt;
  i64 alpha = total_y(g, u), beta = total_y(g, v);
  i64 nodes = 0;

  for (int len = 0; len <= budget.max_free_len; ++len) {
    for (i64 yi = 0; yi < 2 * budget.max_abs_y + 1; ++yi) {
      i64 lam = detail::y_at(yi);
      for (detail::ReducedWordIter it(g.n, len); !it.done(); it.advance()) {
        if (++nodes > budget.node_cap)
          throw BudgetError("conjugator search exceeded its node budget");
        i64 sw = it.exponent_sum();
        if (a.eps_x == -1 && sv - su != 2 * sw) continue;
        if (beta != alpha + lam * (1 - a.eps_y) - sw * a.d) continue;
        GeodesicNF w{it.current(), lam};
        if (twisted_conjugate(g, u, w, a) == v) return w;
      }
    }
  }
  return std::nullopt;
}

// Least free length among twisted conjugates tc(u, w) reachable within the
// budget. The free-length parity is a class invariant, so the search stops
// early once it is attained.
inline std::size_t min_free_length_in_class(const Group& g, const ModularNF& u,
                                            const OuterAuto& a,
                                            const SearchBudget& budget) {
  std::size_t best = u.free.size();
  std::size_t parity_floor = u.free.size() & 1;
  i64 nodes = 0;
  for (int len = 0; len <= budget.max_free_len && best > parity_floor; ++len) {
    for (i64 yi = 0; yi < 2 * budget.max_abs_y + 1 && best > parity_floor; ++yi) {
      i64 lam = detail::y_at(yi);
      for (detail::ReducedWordIter it(g.n, len); !it.done(); it.advance()) {
        if (++nodes > budget.node_cap)
          throw BudgetError("class minimum search exceeded its node budget");
        GeodesicNF w{it.current(), lam};
        ModularNF img = twisted_conjugate(g, u, w, a);
        if (img.free.size() < best) {
          best = img.free.size();
          if (best == parity_floor) break;
        }
      }
    }
  }
  return best;
}

}  // namespace bsnn
