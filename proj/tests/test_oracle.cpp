#include <set>
#include <catch2/catch_amalgamated.hpp>

#include "bsnn/decide.hpp"
#include "bsnn/oracle.hpp"
#include "bsnn/parse.hpp"
#include "identity_checks.hpp"

using namespace bsnn;
using bsnn::testing::Rng;
using bsnn::testing::random_nf;
using bsnn::testing::random_outer;

TEST_CASE("reduced word enumeration is complete and duplicate-free") {
  Group g{2};
  for (int len = 0; len <= 3; ++len) {
    detail::ReducedWordIter it(g.n, len);
    std::set<std::string> seen;
    std::size_t count = 0;
    while (!it.done()) {
      FreeWord w = it.current();
      REQUIRE(w.size() == static_cast<std::size_t>(len));
      CHECK(free_reduce(g, w.letters) == w);
      CHECK(seen.insert(serialize(w)).second);
      ++count;
      it.advance();
    }
    std::size_t expect = len == 0 ? 1 : 4;
    for (int i = 1; i < len; ++i) expect *= 3;
    CHECK(count == expect);
  }
}

TEST_CASE("the worked searches return the canonical first hits") {
  Group g{3};
  OuterAuto a{1, 1, 4};
  SearchBudget b;

  auto w1 = find_twisted_conjugator(g, to_modular(g, parse_geodesic(g, "x0 x2^-1 y^2")),
                                    to_modular(g, parse_geodesic(g, "x1 x0^-1 y^2")),
                                    a, b);
  REQUIRE(w1.has_value());
  CHECK(*w1 == parse_geodesic(g, "y"));

  auto w2 = find_twisted_conjugator(g, to_modular(g, parse_geodesic(g, "")),
                                    to_modular(g, parse_geodesic(g, "y^-4")), a, b);
  REQUIRE(w2.has_value());
  CHECK(*w2 == parse_geodesic(g, "x0"));
}

TEST_CASE("found witnesses satisfy the defining equation") {
  Rng r(61);
  SearchBudget b;
  b.max_free_len = 3;
  b.max_abs_y = 4;
  int found = 0;
  for (int t = 0; t < 60; ++t) {
    Group g{2};
    OuterAuto a = random_outer(r, g, g.n);
    ModularNF u = to_modular(g, random_nf(r, g, 2, 2));
    ModularNF v = twisted_conjugate(g, u, random_nf(r, g, 2, 2), a);
    auto w = find_twisted_conjugator(g, u, v, a, b);
    REQUIRE(w.has_value());  // the construction radius lies inside the budget
    CHECK(twisted_conjugate(g, u, *w, a) == v);
    ++found;
  }
  CHECK(found == 60);
}

TEST_CASE("absent witnesses stay absent within the radius") {
  Group g{3};
  OuterAuto a{1, 1, 4};
  SearchBudget b;
  b.max_free_len = 2;
  b.max_abs_y = 3;
  auto w = find_twisted_conjugator(g, to_modular(g, parse_geodesic(g, "x0 x2^-1 y^2")),
                                   to_modular(g, parse_geodesic(g, "x0 x2 y^2")), a, b);
  CHECK(!w.has_value());
}

TEST_CASE("the node budget aborts oversized searches") {
  Group g{4};
  OuterAuto a{1, 1, 3};
  SearchBudget b;
  b.max_free_len = 6;
  b.max_abs_y = 20;
  b.node_cap = 50;
  CHECK_THROWS_AS(
      find_twisted_conjugator(g, to_modular(g, parse_geodesic(g, "x0 x1 x2 y")),
                              to_modular(g, parse_geodesic(g, "x1 x2 x3 y^5")), a, b),
      BudgetError);
}

TEST_CASE("minimal free length respects the parity floor") {
  Group g{3};
  OuterAuto a{1, 1, 4};
  SearchBudget b;
  b.max_free_len = 3;
  b.max_abs_y = 6;
  CHECK(min_free_length_in_class(g, to_modular(g, parse_geodesic(g, "x0 x1^-1 y^2")),
                                 a, b) == 0);
  CHECK(min_free_length_in_class(g, to_modular(g, parse_geodesic(g, "x1 y^-2")), a,
                                 b) == 1);
}

TEST_CASE("oracle verdicts agree with the decision procedure") {
  Rng r(62);
  SearchBudget b;
  b.max_free_len = 3;
  b.max_abs_y = 4;
  for (int t = 0; t < 40; ++t) {
    Group g{2};
    OuterAuto a = random_outer(r, g, g.n);
    GeodesicNF u = random_nf(r, g, 2, 2);
    GeodesicNF v = random_nf(r, g, 2, 2);
    auto w = find_twisted_conjugator(g, to_modular(g, u), to_modular(g, v), a, b);
    Verdict res = tcp_phi(g, u, v, a);
    if (w.has_value()) {
      // A found witness forces a Yes (or at worst an honest Unknown) upstream.
      CHECK(res.answer != Answer::No);
    }
    if (res.answer == Answer::No) CHECK(!w.has_value());
  }
}
