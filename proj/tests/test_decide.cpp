#include <catch2/catch_amalgamated.hpp>

#include "bsnn/decide.hpp"
#include "bsnn/parse.hpp"
#include "identity_checks.hpp"

using namespace bsnn;
using bsnn::testing::Rng;
using bsnn::testing::random_nf;
using bsnn::testing::random_outer;

namespace {

// phi(w)^-1 u w computed directly from the definition.
GeodesicNF twist_by(const Group& g, const GeodesicNF& u, const GeodesicNF& w,
                    const FullAuto& f) {
  return multiply(g, multiply(g, invert(g, apply_full(g, f, w)), u), w);
}

bool verdict_checks(const Group& g, const GeodesicNF& u, const GeodesicNF& v,
                    const Verdict& verdict) {
  if (verdict.answer != Answer::Yes) return false;
  if (!verdict.witness || !verdict.phi_used) return false;
  return twist_by(g, u, *verdict.witness, *verdict.phi_used) == v;
}

}  // namespace

TEST_CASE("the worked twisted pair is recognized") {
  Group g{3};
  GeodesicNF u = parse_geodesic(g, "x0 x2^-1 y^2");
  GeodesicNF v = parse_geodesic(g, "x2^-1 x1 y^-2");
  Verdict res = tcp_phi(g, u, v, 1, 1, 4);
  REQUIRE(res.answer == Answer::Yes);
  CHECK(verdict_checks(g, u, v, res));
}

TEST_CASE("the worked negative pair is rejected") {
  Group g{3};
  Verdict res = tcp_phi(g, parse_geodesic(g, "x0 x2^-1 y^2"),
                        parse_geodesic(g, "x0 x2 y^2"), 1, 1, 4);
  CHECK(res.answer == Answer::No);
  CHECK(!res.reason.empty());
}

TEST_CASE("a full twisted shift is one loop") {
  Group g{3};
  GeodesicNF u = parse_geodesic(g, "x0 x2 y^2");
  GeodesicNF v = parse_geodesic(g, "x0 x2 y^26");
  Verdict res = tcp_phi(g, u, v, 1, 1, 4);
  REQUIRE(res.answer == Answer::Yes);
  CHECK(res.lambda == 1);
  CHECK(verdict_checks(g, u, v, res));
}

TEST_CASE("decisions agree with direct construction") {
  Rng r(51);
  int yes = 0;
  for (int t = 0; t < 300; ++t) {
    Group g{static_cast<int>(r.range(2, 3))};
    OuterAuto a = random_outer(r, g, 2 * g.n);
    GeodesicNF u = random_nf(r, g, 4, 4);
    GeodesicNF w = random_nf(r, g, 3, 3);
    FullAuto f{a, GeodesicNF{}};
    GeodesicNF v = twist_by(g, u, w, f);
    Verdict res = tcp_phi(g, u, v, a);
    REQUIRE(res.answer == Answer::Yes);
    CHECK(verdict_checks(g, u, v, res));
    ++yes;
  }
  CHECK(yes == 300);
}

TEST_CASE("an inner part shifts the problem without changing it") {
  Rng r(52);
  for (int t = 0; t < 150; ++t) {
    Group g{static_cast<int>(r.range(2, 3))};
    FullAuto psi{random_outer(r, g, 2 * g.n), random_nf(r, g, 3, 3)};
    GeodesicNF u = random_nf(r, g, 4, 4);
    GeodesicNF w = random_nf(r, g, 3, 3);
    GeodesicNF v = twist_by(g, u, w, psi);
    Verdict res = tcp_given(g, u, v, psi);
    REQUIRE(res.answer == Answer::Yes);
    REQUIRE(res.witness.has_value());
    CHECK(twist_by(g, u, *res.witness, psi) == v);
  }
}

TEST_CASE("ordinary conjugacy distinguishes the basic pairs") {
  Group g{3};
  Verdict yes = conjugacy(g, parse_geodesic(g, "x0 y"), parse_geodesic(g, "x1 y"));
  REQUIRE(yes.answer == Answer::Yes);
  CHECK(verdict_checks(g, parse_geodesic(g, "x0 y"), parse_geodesic(g, "x1 y"), yes));

  Verdict no = conjugacy(g, parse_geodesic(g, "x0 y"), parse_geodesic(g, "x0 y^2"));
  CHECK(no.answer == Answer::No);
}

TEST_CASE("orbit search recovers the twist parameter") {
  Group g{3};
  GeodesicNF u = parse_geodesic(g, "x0 x2 y^2");
  Verdict res = orbit_single(g, u, parse_geodesic(g, "x0 x1 y^10"), 1, 1);
  REQUIRE(res.answer == Answer::Yes);
  REQUIRE(res.phi_used.has_value());
  CHECK(res.phi_used->outer.d == 4);

  // One y off: 7 is not divisible by the exponent sum 2.
  Verdict off = orbit_single(g, u, parse_geodesic(g, "x0 x1 y^9"), 1, 1);
  CHECK(off.answer == Answer::No);
}

TEST_CASE("orbit search scans residues when the exponent sum vanishes") {
  Group g{3};
  GeodesicNF u = parse_geodesic(g, "x0 x2^-1 y^2");
  OuterAuto a{1, 1, 4};
  GeodesicNF v = apply_outer(g, a, u);
  Verdict res = orbit_single(g, u, v, 1, 1);
  REQUIRE(res.answer == Answer::Yes);
  REQUIRE(res.phi_used.has_value());
  GeodesicNF image = apply_outer(g, res.phi_used->outer, u);
  CHECK(conjugacy(g, image, v).answer == Answer::Yes);
}

TEST_CASE("the uniform solver finds the worked parameters") {
  Group g{3};
  GeodesicNF u = parse_geodesic(g, "x0 x2 y^2");
  Verdict res = tcp_uniform_outer(g, u, parse_geodesic(g, "x1 x2 y^9"));
  REQUIRE(res.answer == Answer::Yes);
  REQUIRE(res.phi_used.has_value());
  CHECK(res.phi_used->outer == OuterAuto{1, 1, 7});
  CHECK(verdict_checks(g, u, parse_geodesic(g, "x1 x2 y^9"), res));
}

TEST_CASE("the uniform solver prefers the identity on equal inputs") {
  Group g{3};
  GeodesicNF u = parse_geodesic(g, "x0 x2 y^2");
  Verdict res = tcp_uniform_outer(g, u, u);
  REQUIRE(res.answer == Answer::Yes);
  CHECK(res.phi_used->outer == OuterAuto{1, 1, 0});
  CHECK(res.lambda == 0);
}

TEST_CASE("the uniform solver rejects across all cases") {
  Group g{3};
  // Free length changes by two letters at a time under any case, so an
  // odd-against-even pair fails everywhere.
  Verdict res = tcp_uniform_outer(g, parse_geodesic(g, "x0 x2 y^2"),
                                  parse_geodesic(g, "x0 y^2"));
  CHECK(res.answer == Answer::No);
}

TEST_CASE("uniform decisions validate constructed positives") {
  Rng r(53);
  for (int t = 0; t < 60; ++t) {
    Group g{static_cast<int>(r.range(2, 3))};
    OuterAuto a = random_outer(r, g, 2 * g.n);
    GeodesicNF u = random_nf(r, g, 4, 4);
    GeodesicNF w = random_nf(r, g, 3, 3);
    GeodesicNF v = twist_by(g, u, w, FullAuto{a, GeodesicNF{}});
    Verdict res = tcp_uniform_outer(g, u, v);
    bool central = cyclic_reduce(g, to_modular(g, u), a).reduced.free.empty();
    if (res.answer == Answer::Unknown) {
      // Only the central-power corner may stay open.
      CHECK(central);
      continue;
    }
    REQUIRE(res.answer == Answer::Yes);
    CHECK(verdict_checks(g, u, v, res));
  }
}

TEST_CASE("central powers resolve through the exponent lattice") {
  Group g{2};
  // diff = 2 but every conjugator moves the exponent by multiples of 3.
  Verdict no = tcp_phi(g, parse_geodesic(g, "y"), parse_geodesic(g, "y^3"), 1, 1, 3);
  CHECK(no.answer == Answer::No);

  // eps_y = -1 admits the y-shift family on even differences.
  Verdict yes =
      tcp_phi(g, parse_geodesic(g, "y"), parse_geodesic(g, "y^3"), 1, -1, 0);
  REQUIRE(yes.answer == Answer::Yes);
  CHECK(verdict_checks(g, parse_geodesic(g, "y"), parse_geodesic(g, "y^3"), yes));

  Verdict eq = tcp_phi(g, parse_geodesic(g, "y^2"), parse_geodesic(g, "y^2"), 1, 1, 3);
  REQUIRE(eq.answer == Answer::Yes);
  CHECK(verdict_checks(g, parse_geodesic(g, "y^2"), parse_geodesic(g, "y^2"), eq));
}

TEST_CASE("mismatched free length parity is an immediate no") {
  Group g{3};
  Verdict res = tcp_phi(g, parse_geodesic(g, "x0"), parse_geodesic(g, "x0 x1 x2 y"),
                        1, 1, 1);
  CHECK(res.answer == Answer::No);
  Verdict uni = tcp_uniform_outer(g, parse_geodesic(g, "x0"),
                                  parse_geodesic(g, "x0 x1 y"));
  CHECK(uni.answer == Answer::No);
}

TEST_CASE("every verdict carries a trace of the steps taken") {
  Group g{3};
  Verdict res = tcp_phi(g, parse_geodesic(g, "x0 x2 y^2"),
                        parse_geodesic(g, "x0 x2 y^26"), 1, 1, 4);
  CHECK(!res.trace.empty());
}
