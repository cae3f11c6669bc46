#include "doctest.h"
#include "knotbound/diagram.hpp"
#include "knotbound/error.hpp"
#include "knotbound/planar.hpp"
#include "knotbound/turaev.hpp"
#include "support.hpp"

using namespace kb;

TEST_SUITE("diagram") {
  // KnotTheory-style table code for the trefoil; under the incoming-under
  // reading every crossing is negative.
  const char* kTableTrefoil = "PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]";

  TEST_CASE("parse the table trefoil") {
    Diagram d = Diagram::parse(kTableTrefoil);
    CHECK(d.crossing_count() == 3);
    CHECK(d.component_count() == 1);
    CHECK(d.signs() == std::vector<int>{-1, -1, -1});
    CHECK(mirror(d).signs() == std::vector<int>{1, 1, 1});
  }

  TEST_CASE("positive trefoil signs and mirror") {
    Diagram d = torus_knot(2, 3);
    CHECK(d.signs() == std::vector<int>{1, 1, 1});
    Diagram m = mirror(d);
    CHECK(m.signs() == std::vector<int>{-1, -1, -1});
    CHECK(m.n_plus() == 0);
    CHECK(mirror(m).serialize() == d.serialize());
  }

  TEST_CASE("empty PD is the unknot") {
    Diagram d = Diagram::parse("PD[]");
    CHECK(d.crossing_count() == 0);
    CHECK(d.component_count() == 1);
    CHECK(d.serialize() == Diagram().serialize());
  }

  TEST_CASE("one-crossing kinks are accepted") {
    for (const char* s : {"PD[X[1,1,2,2]]", "PD[X[2,1,1,2]]", "PD[X[1,2,2,1]]"}) {
      Diagram d = Diagram::parse(s);
      CHECK(d.crossing_count() == 1);
      CHECK(d.component_count() == 1);
      CHECK(is_kink(d, 0));
      for (Smoothing k : {Smoothing::A, Smoothing::B}) CHECK(smooth(d, 0, k).crossing_count() == 0);
    }
  }

  TEST_CASE("malformed PD codes are rejected") {
    for (const char* s : {"PD[X[1,2,3]]", "PD[X[1,2,3,4]]", "X[1,2", "PD[X[1,1,1,1]]", "hello"})
      CHECK_THROWS_AS(Diagram::parse(s), InputError);
  }

  TEST_CASE("serialize round trip on the corpus") {
    for (const auto& e : testing::corpus()) {
      Diagram d = Diagram::parse(e.diagram.serialize());
      CHECK(d == e.diagram);
      CHECK(d.signs() == e.diagram.signs());
    }
  }

  TEST_CASE("6_2 table diagram and its mirror") {
    // the figure diagram is the mirror of the corpus code: two positive crossings
    Diagram d = mirror(testing::knot("6_2"));
    CHECK(d.n_plus() == 2);
    CHECK(d.n_minus() == 4);
  }

  TEST_CASE("smoothing the trefoil gives a Hopf link") {
    Diagram d = torus_knot(2, 3);
    for (int c = 0; c < 3; ++c) {
      Diagram h = smooth(d, c, Smoothing::A);
      CHECK(h.crossing_count() == 2);
      CHECK(h.component_count() == 2);
      CHECK(h == oriented_resolution(d, c));
      // orientations coherent: both crossings keep their sign
      CHECK(h.signs() == std::vector<int>{1, 1});
    }
    Diagram m = mirror(d);
    for (int c = 0; c < 3; ++c) {
      Diagram h = oriented_resolution(m, c);
      CHECK(h.component_count() == 2);
      CHECK(h.signs() == std::vector<int>{-1, -1});
      CHECK(h == smooth(m, c, Smoothing::B));
    }
  }

  TEST_CASE("all-A resolution has s_A circles") {
    for (const char* name : {"3_1", "5_2", "6_2", "8_19", "10_132"}) {
      Diagram d = testing::knot(name);
      std::vector<std::optional<Smoothing>> all(d.crossing_count(), Smoothing::A);
      Resolved r = resolve(d, all);
      CHECK(r.diagram.crossing_count() == 0);
      CHECK(r.diagram.component_count() == s_A(d));
    }
  }

  TEST_CASE("connected sums") {
    Diagram t = torus_knot(2, 3);
    Diagram u;
    CHECK(connected_sum(t, u).serialize() == t.serialize());
    Diagram g = connected_sum(t, t);
    CHECK(g.crossing_count() == 6);
    CHECK(g.n_plus() == 6);
    CHECK(g.component_count() == 1);
    const char* small[] = {"3_1", "4_1", "5_2", "6_1", "6_2", "7_4"};
    for (const char* a : small)
      for (const char* b : small) {
        const Diagram& d1 = testing::knot(a);
        const Diagram& d2 = testing::knot(b);
        Diagram s = connected_sum(d1, d2);
        CHECK(s.is_connected());
        CHECK(s_A(s) == s_A(d1) + s_A(d2) - 1);
        CHECK(testing::brute_circles(s, 0) == testing::brute_circles(d1, 0) + testing::brute_circles(d2, 0) - 1);
      }
  }

  TEST_CASE("pretzel and torus constructions") {
    Diagram k11 = pretzel(PretzelSpec{1, 1});
    CHECK(k11.crossing_count() == 8);
    CHECK(k11.component_count() == 1);
    std::vector<int> tw{3, -3, 2};
    CHECK(pretzel(tw) == k11);
    Diagram t25 = torus_knot(2, 5);
    CHECK(t25.crossing_count() == 5);
    CHECK(t25.n_plus() == 5);
    CHECK(s_A(t25) == 2);
    Diagram t34 = torus_knot(3, 4);
    CHECK(t34.crossing_count() == 8);
    CHECK(t34.component_count() == 1);
    for (int p = 1; p <= 5; ++p)
      for (int q = 1; q <= p; ++q) {
        Diagram k = pretzel(PretzelSpec{p, q});
        CHECK(k.component_count() == 1);
        CHECK(k.crossing_count() == 2 * p + 1 + 2 * q + 1 + 2);
      }
  }

  TEST_CASE("kinks, nugatory crossings and untwisting") {
    Diagram t = torus_knot(2, 3);
    for (int sign : {1, -1})
      for (bool under : {false, true}) {
        Diagram k = add_kink(t, 1, sign, under);
        CHECK(k.crossing_count() == 4);
        int idx = -1;
        for (int i = 0; i < 4; ++i)
          if (is_kink(k, i)) idx = i;
        REQUIRE(idx >= 0);
        CHECK(k.sign(idx) == sign);
        CHECK(is_nugatory(k, idx));
        Untwist u = untwist(k, idx);
        CHECK(u.diagram.crossing_count() == 3);
        CHECK(u.diagram.n_plus() == 3);
      }
    CHECK_THROWS_AS(untwist(t, 0), InvariantError);
  }

  TEST_CASE("Reidemeister II pairs") {
    // two-crossing unknot: a loop pushed across itself
    CHECK_THROWS_AS(Diagram::parse("PD[X[1,2,3,4],X[3,2,4,1]]"), InputError);  // torus, not planar
    Diagram u = Diagram::parse("PD[X[1,1,2,3],X[2,4,4,3]]");
    CHECK(u.component_count() == 1);
    CHECK(trace_faces(u).faces.size() == 4);  // planar: c + 2 faces
    CHECK(is_r2_pair(u, 0, 1));
    Resolved r = remove_bigon(u, 0, 1);
    CHECK(r.diagram.crossing_count() == 0);
    CHECK(r.new_index == std::vector<int>{-1, -1});
    // a clasp of two different components is not removable this way
    Diagram hopf = smooth(torus_knot(2, 3), 0, Smoothing::A);
    CHECK_FALSE(is_r2_pair(hopf, 0, 1));
    Diagram t = torus_knot(2, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) CHECK_FALSE(is_r2_pair(t, i, j));
  }
}
