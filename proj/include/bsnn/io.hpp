#pragma once

#include <map>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "bsnn/decide.hpp"
#include "bsnn/parse.hpp"
#include "bsnn/repset.hpp"

namespace bsnn {

using json = nlohmann::ordered_json;

inline const char* answer_str(Answer a) {
  switch (a) {
    case Answer::Yes: return "Yes";
    case Answer::No: return "No";
    default: return "Unknown";
  }
}

inline int answer_exit_code(Answer a) {
  switch (a) {
    case Answer::Yes: return 0;
    case Answer::No: return 1;
    default: return 2;
  }
}

inline json outer_json(const OuterAuto& a) {
  return json{{"ex", a.eps_x}, {"ey", a.eps_y}, {"d", a.d}};
}

inline json full_auto_json(const FullAuto& f) {
  json j = outer_json(f.outer);
  if (!f.inner.is_identity()) j["inner"] = serialize(f.inner);
  return j;
}

inline json verdict_json(const Verdict& v) {
  json j;
  j["answer"] = answer_str(v.answer);
  if (v.phi_used) j["phi"] = full_auto_json(*v.phi_used);
  if (v.witness) j["witness"] = serialize(*v.witness);
  if (v.lambda) j["lambda"] = *v.lambda;
  if (!v.reason.empty()) j["reason"] = v.reason;
  j["trace"] = v.trace;
  return j;
}

inline const char* move_kind_str(ShiftMove::Kind k) {
  switch (k) {
    case ShiftMove::Kind::YShift: return "YShift";
    case ShiftMove::Kind::BFShift: return "BFShift";
    case ShiftMove::Kind::FBShift: return "FBShift";
    default: return "CyclicStep";
  }
}

inline json move_json(const ShiftMove& m) {
  return json{{"kind", move_kind_str(m.kind)},
              {"params", m.param},
              {"witness", serialize(m.witness)}};
}

inline json repset_json(const RepSet& r) {
  const Group& g = r.group;
  i64 d = r.index_auto.d;
  json j;
  j["n"] = g.n;
  j["phi"] = outer_json(r.index_auto);
  json els = json::array();
  for (const RepSetMember& m : r.members()) {
    json e;
    e["free"] = serialize(m.free);
    e["c"] = m.c;
    e["k"] = m.garside.eval(d) / g.n;
    e["witness"] = serialize(r.member_witness(m.chain_pos, m.y_k));
    els.push_back(std::move(e));
  }
  j["elements"] = std::move(els);
  j["twisted_shift"] = r.twisted_shift_at(d);
  return j;
}

inline json closure_json(const Group& g, const std::vector<ModularNF>& els) {
  json j;
  j["n"] = g.n;
  json arr = json::array();
  for (const ModularNF& m : els) {
    json e;
    e["free"] = serialize(m.free);
    e["c"] = m.c;
    e["k"] = m.k;
    arr.push_back(std::move(e));
  }
  j["elements"] = std::move(arr);
  return j;
}

namespace detail {

inline std::string dot_label(const Group& g, const FreeWord& f, int c, i64 k) {
  return "(" + quotient_str(f, c) + ", " + garside_str(g, k) + ")";
}

}  // namespace detail

// Directed chain-and-orbit picture of the representative family: columns are
// the y-shift levels, blue edges walk the BF chain, red edges the y-shifts.
inline std::string repset_dot(const RepSet& r) {
  const Group& g = r.group;
  i64 d = r.index_auto.d;
  std::vector<RepSetMember> ms = r.members();
  auto mkey = [&](const RepSetMember& m) {
    return detail::quotient_key(m.free, m.c) + '#' + std::to_string(m.garside.c0) +
           ':' + std::to_string(m.garside.cd);
  };
  std::map<std::string, int> node_of;
  std::string out = "digraph repset {\n";
  for (std::size_t i = 0; i < ms.size(); ++i) {
    node_of[mkey(ms[i])] = static_cast<int>(i);
    out += "  e" + std::to_string(i) + " [label=\"" +
           detail::dot_label(g, ms[i].free, ms[i].c, ms[i].garside.eval(d) / g.n) +
           "\"];\n";
  }
  auto node_at = [&](int j, i64 k) { return node_of.at(mkey(r.member(j, k))); };
  std::set<std::tuple<int, int, char>> seen;
  auto edge = [&](int a, int b, const char* color, char tag) {
    if (a == b) return;
    if (!seen.insert({a, b, tag}).second) return;
    out += "  e" + std::to_string(a) + " -> e" + std::to_string(b) + " [color=" +
           color + "];\n";
  };
  int len = r.chain_length();
  for (i64 k = 0; k < g.n; ++k) {
    for (int j = 0; j + 1 < len; ++j)
      edge(node_at(j, k), node_at(j + 1, k), "blue", 'x');
    if (r.twisted_shift_at(d) == 0 && len > 1)
      edge(node_at(len - 1, k), node_at(0, k), "blue", 'x');
  }
  for (int j = 0; j < len; ++j)
    for (i64 k = 0; k < g.n; ++k)
      edge(node_at(j, k), node_at(j, (k + 1) % g.n), "red", 'y');
  out += "}\n";
  return out;
}

// Undirected shift graph of a finite closure: blue edges are x-shifts over
// proper splits (both blocks nonempty, both directions), red edges are
// y-shifts.
inline std::string closure_dot(const Group& g, const std::vector<ModularNF>& els,
                               const OuterAuto& a) {
  auto fkey = [&](const ModularNF& m) {
    return detail::quotient_key(m.free, m.c) + '#' + std::to_string(m.k);
  };
  std::map<std::string, int> node_of;
  std::string out = "graph closure {\n";
  for (std::size_t i = 0; i < els.size(); ++i) {
    node_of[fkey(els[i])] = static_cast<int>(i);
    out += "  e" + std::to_string(i) + " [label=\"" +
           detail::dot_label(g, els[i].free, els[i].c, els[i].k) + "\"];\n";
  }
  std::set<std::tuple<int, int, char>> seen;
  auto edge = [&](int i, const ModularNF& target, const char* color, char tag) {
    auto it = node_of.find(fkey(target));
    if (it == node_of.end())
      throw std::logic_error("closure shift image left the closure");
    int a2 = it->second;
    int lo = std::min(i, a2), hi = std::max(i, a2);
    if (lo == hi) return;
    if (!seen.insert({lo, hi, tag}).second) return;
    out += "  e" + std::to_string(lo) + " -- e" + std::to_string(hi) + " [color=" +
           color + "];\n";
  };
  for (std::size_t i = 0; i < els.size(); ++i) {
    int q = static_cast<int>(els[i].free.size());
    for (int cnt = 1; cnt < q; ++cnt) {
      edge(static_cast<int>(i), bf_x_shift(g, els[i], cnt, a), "blue", 'x');
      edge(static_cast<int>(i), fb_x_shift(g, els[i], cnt, a), "blue", 'x');
    }
    for (i64 lam = 1; lam < g.n; ++lam)
      edge(static_cast<int>(i), y_shift(g, els[i], lam, a), "red", 'y');
  }
  out += "}\n";
  return out;
}

}  // namespace bsnn
