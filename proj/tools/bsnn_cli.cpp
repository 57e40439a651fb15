#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bsnn/bsnn.hpp"

namespace {

using namespace bsnn;

struct GroupOpt {
  std::optional<i64> n;
  std::optional<i64> m;

  Group resolve() const {
    if (n.has_value() == m.has_value())
      throw std::invalid_argument("exactly one of --n and --m is required");
    if (n) return Group{static_cast<int>(*n)};
    return Group::from_artin(static_cast<int>(*m));
  }
};

struct OutputOpt {
  bool json = false;
  bool text = false;
  bool dot = false;
};

void add_group_opts(CLI::App* cmd, GroupOpt& g) {
  auto* n = cmd->add_option("--n", g.n, "rank of the free kernel (n >= 2)");
  cmd->add_option("--m", g.m, "even Artin parameter (m = 2n >= 4)")->excludes(n);
}

void add_output_opts(CLI::App* cmd, OutputOpt& o, bool with_dot = false) {
  auto* j = cmd->add_flag("--json", o.json, "machine-readable output");
  auto* t = cmd->add_flag("--text", o.text, "human-readable output (default)");
  j->excludes(t);
  t->excludes(j);
  if (with_dot) {
    auto* d = cmd->add_flag("--dot", o.dot, "Graphviz output");
    d->excludes(j);
    d->excludes(t);
  }
}

void add_outer_opts(CLI::App* cmd, i64& ex, i64& ey, i64& d) {
  cmd->add_option("--ex", ex, "sign of the image of x0 (1 or -1)")
      ->check(CLI::IsMember({1, -1}));
  cmd->add_option("--ey", ey, "sign of the image of y (1 or -1)")
      ->check(CLI::IsMember({1, -1}));
  cmd->add_option("--d", d, "y-exponent attached to the image of x0");
}

void print_verdict_text(const Group& g, const Verdict& v) {
  std::cout << answer_str(v.answer) << "\n";
  if (v.phi_used) {
    const FullAuto& f = *v.phi_used;
    std::cout << "phi: ex=" << f.outer.eps_x << " ey=" << f.outer.eps_y
              << " d=" << f.outer.d;
    if (!f.inner.is_identity()) std::cout << " inner=" << serialize(f.inner);
    std::cout << "\n";
  }
  if (v.witness) {
    std::string w = serialize(*v.witness);
    std::cout << "witness:" << (w.empty() ? "" : " ") << w << "\n";
  }
  if (v.lambda) std::cout << "lambda: " << *v.lambda << "\n";
  if (!v.reason.empty()) std::cout << "reason: " << v.reason << "\n";
}

int emit_verdict(const Group& g, const Verdict& v, const OutputOpt& o) {
  if (o.json)
    std::cout << verdict_json(v).dump(2) << "\n";
  else
    print_verdict_text(g, v);
  return answer_exit_code(v.answer);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"twisted conjugacy toolkit for even dihedral Artin groups"};
  app.require_subcommand(1);

  GroupOpt grp;
  OutputOpt out;
  i64 ex = 1, ey = 1, d = 0;
  std::string word1, word2, inner_word;
  i64 oracle_max_free_len = 4, oracle_max_y = 8;

  auto* normalize = app.add_subcommand("normalize", "geodesic normal form of a word");
  add_group_opts(normalize, grp);
  add_output_opts(normalize, out);
  normalize->add_option("word", word1, "input word")->required();

  auto* phi = app.add_subcommand("phi", "apply an automorphism to a word");
  add_group_opts(phi, grp);
  add_output_opts(phi, out);
  add_outer_opts(phi, ex, ey, d);
  phi->add_option("--inner", inner_word, "conjugating element for an inner part");
  phi->add_option("word", word1, "input word")->required();

  auto* tcp = app.add_subcommand("tcp", "twisted conjugacy for a fixed automorphism");
  add_group_opts(tcp, grp);
  add_output_opts(tcp, out);
  add_outer_opts(tcp, ex, ey, d);
  tcp->add_option("--inner", inner_word, "conjugating element for an inner part");
  tcp->add_option("u", word1, "left-hand word")->required();
  tcp->add_option("v", word2, "right-hand word")->required();

  auto* tcpu = app.add_subcommand(
      "tcp-uniform", "twisted conjugacy under some outer automorphism");
  add_group_opts(tcpu, grp);
  add_output_opts(tcpu, out);
  tcpu->add_option("u", word1, "left-hand word")->required();
  tcpu->add_option("v", word2, "right-hand word")->required();

  auto* conj = app.add_subcommand("conj", "ordinary conjugacy");
  add_group_opts(conj, grp);
  add_output_opts(conj, out);
  conj->add_option("u", word1, "left-hand word")->required();
  conj->add_option("v", word2, "right-hand word")->required();

  auto* orbit = app.add_subcommand(
      "orbit", "recover the shift parameter within a sign class");
  add_group_opts(orbit, grp);
  add_output_opts(orbit, out);
  add_outer_opts(orbit, ex, ey, d);
  orbit->add_option("u", word1, "left-hand word")->required();
  orbit->add_option("v", word2, "right-hand word")->required();

  auto* repset = app.add_subcommand("repset", "representative family of a class");
  add_group_opts(repset, grp);
  add_output_opts(repset, out, /*with_dot=*/true);
  add_outer_opts(repset, ex, ey, d);
  bool closure = false;
  repset->add_flag("--closure", closure,
                   "emit the finite shift closure instead of the chain family");
  repset->add_option("word", word1, "input word")->required();

  auto* oracle = app.add_subcommand("oracle", "bounded brute-force witness search");
  add_group_opts(oracle, grp);
  add_output_opts(oracle, out);
  add_outer_opts(oracle, ex, ey, d);
  oracle->add_option("--oracle-max-free-len", oracle_max_free_len,
                     "maximum free length of candidate witnesses");
  oracle->add_option("--oracle-max-y", oracle_max_y,
                     "maximum |y-exponent| of candidate witnesses");
  oracle->add_option("u", word1, "left-hand word")->required();
  oracle->add_option("v", word2, "right-hand word")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 3;
  }

  try {
    Group g = grp.resolve();
    OuterAuto a{static_cast<int>(ex), static_cast<int>(ey), d};

    if (*normalize) {
      GeodesicNF nf = parse_geodesic(g, word1);
      if (out.json) {
        ModularNF m = to_modular(g, nf);
        json j;
        j["geodesic"] = serialize(nf);
        j["free"] = serialize(nf.free);
        j["t"] = nf.t;
        j["c"] = m.c;
        j["k"] = m.k;
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << serialize(nf) << "\n";
      }
      return 0;
    }

    if (*phi) {
      GeodesicNF w = parse_geodesic(g, word1);
      FullAuto f{a, parse_geodesic(g, inner_word)};
      GeodesicNF img = apply_full(g, f, w);
      if (out.json) {
        json j;
        j["phi"] = full_auto_json(f);
        j["image"] = serialize(img);
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << serialize(img) << "\n";
      }
      return 0;
    }

    if (*tcp) {
      GeodesicNF u = parse_geodesic(g, word1);
      GeodesicNF v = parse_geodesic(g, word2);
      FullAuto f{a, parse_geodesic(g, inner_word)};
      Verdict verdict =
          f.inner.is_identity() ? tcp_phi(g, u, v, a) : tcp_given(g, u, v, f);
      return emit_verdict(g, verdict, out);
    }

    if (*tcpu) {
      GeodesicNF u = parse_geodesic(g, word1);
      GeodesicNF v = parse_geodesic(g, word2);
      return emit_verdict(g, tcp_uniform_outer(g, u, v), out);
    }

    if (*conj) {
      GeodesicNF u = parse_geodesic(g, word1);
      GeodesicNF v = parse_geodesic(g, word2);
      return emit_verdict(g, conjugacy(g, u, v), out);
    }

    if (*orbit) {
      GeodesicNF u = parse_geodesic(g, word1);
      GeodesicNF v = parse_geodesic(g, word2);
      return emit_verdict(
          g, orbit_single(g, u, v, static_cast<int>(ex), static_cast<int>(ey)), out);
    }

    if (*repset) {
      GeodesicNF w = parse_geodesic(g, word1);
      ReductionResult red = cyclic_reduce(g, to_modular(g, w), a);
      if (closure) {
        std::vector<ModularNF> els = enumerate_finite_closure(g, red.reduced, a);
        if (out.dot)
          std::cout << closure_dot(g, els, a);
        else if (out.json)
          std::cout << closure_json(g, els).dump(2) << "\n";
        else
          for (const ModularNF& m : els)
            std::cout << "(" << quotient_str(m.free, m.c) << ", "
                      << garside_str(g, m.k) << ")\n";
        return 0;
      }
      RepSet r = build_rep_set(g, red.reduced, a);
      if (out.dot) {
        std::cout << repset_dot(r);
      } else if (out.json) {
        std::cout << repset_json(r).dump(2) << "\n";
      } else {
        for (const RepSetMember& m : r.members())
          std::cout << "(" << quotient_str(m.free, m.c) << ", "
                    << garside_str(g, m.garside.eval(d) / g.n) << ")\n";
        std::cout << "twisted shift: " << r.twisted_shift_at(d) << "\n";
      }
      return 0;
    }

    if (*oracle) {
      ModularNF u = to_modular(g, parse_geodesic(g, word1));
      ModularNF v = to_modular(g, parse_geodesic(g, word2));
      SearchBudget budget;
      budget.max_free_len = static_cast<int>(oracle_max_free_len);
      budget.max_abs_y = oracle_max_y;
      std::optional<GeodesicNF> w;
      std::string reason;
      try {
        w = find_twisted_conjugator(g, u, v, a, budget);
      } catch (const BudgetError& e) {
        reason = e.what();
      }
      if (reason.empty() && !w) reason = "no witness within the search radius";
      if (out.json) {
        json j;
        j["answer"] = w ? "Yes" : "Unknown";
        j["phi"] = outer_json(a);
        if (w) j["witness"] = serialize(*w);
        if (!reason.empty()) j["reason"] = reason;
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << (w ? "Yes" : "Unknown") << "\n";
        if (w) std::cout << "witness: " << serialize(*w) << "\n";
        if (!reason.empty()) std::cout << "reason: " << reason << "\n";
      }
      return w ? 0 : 2;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error at position " << e.position << ": " << e.what()
              << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const BudgetError& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return 5;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
  return 3;
}
