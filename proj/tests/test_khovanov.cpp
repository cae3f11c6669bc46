#include "doctest.h"
#include "knotbound/classical.hpp"
#include "knotbound/error.hpp"
#include "knotbound/khovanov.hpp"
#include "support.hpp"

using namespace kb;

TEST_SUITE("khovanov") {
  TEST_CASE("cube of the trefoil") {
    ResolutionCube c = build_cube(torus_knot(2, 3));
    CHECK(c.offset.size() == 9);
    CHECK(c.circles(0) == 2);
    CHECK(c.circles(7) == 3);
    std::int64_t dim = 0;
    for (std::uint32_t v = 0; v < 8; ++v) dim += std::int64_t(1) << c.circles(v);
    CHECK(c.dimension() == dim);
    CHECK(differential_squares_to_zero(c, false));
    CHECK(differential_squares_to_zero(c, true));
    CHECK(lee_homology_rank(c) == 2);
  }

  TEST_CASE("unknot") {
    ResolutionCube c = build_cube(Diagram());
    CHECK(c.dimension() == 2);
    for (Field f : {Field::GF2, Field::Q}) {
      KhRanks r = khovanov_homology(Diagram(), f);
      CHECK(r == KhRanks{{{0, -1}, 1}, {{0, 1}, 1}});
    }
    CHECK(s_invariant(Diagram()).s == 0);
  }

  TEST_CASE("trefoil homology") {
    KhRanks expected{{{0, 1}, 1}, {{0, 3}, 1}, {{2, 5}, 1}, {{3, 9}, 1}};
    CHECK(khovanov_homology(torus_knot(2, 3), Field::Q) == expected);
    // over GF2 the torsion at (3, 7) shows up as extra rank
    KhRanks gf2 = khovanov_homology(torus_knot(2, 3), Field::GF2);
    CHECK(gf2.at({2, 5}) == 1);
    CHECK(gf2.at({3, 7}) == 1);
    CHECK(gf2.at({3, 9}) == 1);
  }

  TEST_CASE("d^2 = 0 and Lee rank 2 on small knots") {
    for (const char* name : {"4_1", "5_2", "6_2", "8_19"}) {
      ResolutionCube c = build_cube(testing::knot(name));
      CHECK(differential_squares_to_zero(c, false));
      CHECK(differential_squares_to_zero(c, true));
      CHECK(lee_homology_rank(c) == 2);
    }
  }

  TEST_CASE("Euler characteristic is the Jones polynomial, both fields") {
    for (const auto& e : testing::corpus()) {
      if (e.diagram.crossing_count() > 8) continue;  // the full sweep is in the acceptance run
      CAPTURE(e.name);
      ResolutionCube c = build_cube(e.diagram);
      Laurent v = unnormalised_jones_in_q(jones(e.diagram));
      CHECK(graded_euler_characteristic(khovanov_homology(c, Field::GF2)) == v);
      CHECK(graded_euler_characteristic(khovanov_homology(c, Field::Q)) == v);
    }
  }

  TEST_CASE("alternating knots are thin over Q") {
    for (const auto& e : testing::corpus()) {
      if (e.diagram.crossing_count() > 8 || e.annotations.at("alternating") != "1") continue;
      CAPTURE(e.name);
      const int sigma = signature(e.diagram);
      for (auto [ij, r] : khovanov_homology(e.diagram, Field::Q)) {
        const int diag = ij.second - 2 * ij.first;
        CHECK((diag == -sigma - 1 || diag == -sigma + 1));
      }
    }
  }

  TEST_CASE("s matches the table, the mirror and sums") {
    for (const auto& e : testing::corpus()) {
      if (e.diagram.crossing_count() > 9) continue;
      CAPTURE(e.name);
      int s = s_invariant(e.diagram).s;
      CHECK(s == testing::annotation(e, "s"));
      if (e.diagram.crossing_count() <= 7) CHECK(s_invariant(mirror(e.diagram)).s == -s);
    }
    const Diagram& a = testing::knot("3_1");
    const Diagram& b = testing::knot("5_2");
    CHECK(s_invariant(connected_sum(a, b)).s == s_invariant(a).s + s_invariant(b).s);
    CHECK(s_invariant(connected_sum(a, mirror(a))).s == 0);
  }

  TEST_CASE("s of small torus and pretzel knots") {
    CHECK(s_invariant(torus_knot(2, 3)).s == 2);
    CHECK(s_invariant(torus_knot(2, 5)).s == 4);
    CHECK(s_invariant(pretzel(PretzelSpec{1, 1})).s == 0);
    SInvariantResult r = s_invariant(torus_knot(2, 3));
    CHECK(r.q_min == r.s - 1);
    CHECK(r.q_max == r.s + 1);
  }

  TEST_CASE("errors") {
    CHECK_THROWS_AS(build_cube(testing::knot("10_1"), 9), CeilingError);
    Diagram hopf = smooth(torus_knot(2, 3), 0, Smoothing::A);
    CHECK_THROWS_AS(s_invariant(hopf), InputError);
  }
}
