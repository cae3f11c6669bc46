#include "doctest.h"
#include "knotbound/classical.hpp"
#include "knotbound/error.hpp"
#include "support.hpp"

using namespace kb;

namespace {

std::map<int, long> as_map(const Laurent& l) {
  std::map<int, long> m;
  for (auto [e, c] : l.terms()) m[e] = c;
  return m;
}

}  // namespace

TEST_SUITE("classical") {
  TEST_CASE("small values") {
    CHECK(signature(Diagram()) == 0);
    CHECK(determinant(Diagram()) == 1);
    Diagram t = torus_knot(2, 3);
    CHECK(signature(t) == -2);
    CHECK(signature(mirror(t)) == 2);
    CHECK(determinant(t) == 3);
    CHECK(determinant(testing::knot("4_1")) == 5);
    GoeritzData g = goeritz(t);
    CHECK(g.matrix.size() + 1 == g.regions.size());
  }

  TEST_CASE("pretzel signatures") {
    for (int p = 1; p <= 5; ++p)
      for (int q = 1; q <= p; ++q) CHECK(signature(pretzel(PretzelSpec{p, q})) == -2 * (p - q));
  }

  TEST_CASE("corpus values match the table and both colourings") {
    for (const auto* c : {&testing::corpus(), &testing::genus_two()})
      for (const auto& e : *c) {
        if (e.diagram.crossing_count() == 0) continue;
        CAPTURE(e.name);
        CHECK(signature(e.diagram) == testing::annotation(e, "signature"));
        CHECK(determinant(e.diagram) == testing::annotation(e, "determinant"));
        CHECK(signature(mirror(e.diagram)) == -signature(e.diagram));
        GoeritzData g0 = goeritz(e.diagram, 0), g1 = goeritz(e.diagram, 1);
        CHECK(g0.form_signature - g0.mu == g1.form_signature - g1.mu);
        CHECK(abs(kb::determinant(g0.matrix)) == abs(kb::determinant(g1.matrix)));
      }
  }

  TEST_CASE("determinant matches the colouring-matrix oracle") {
    for (const auto& e : testing::corpus()) {
      CAPTURE(e.name);
      CHECK(determinant(e.diagram) == testing::fox_determinant(e.diagram));
    }
  }

  TEST_CASE("bracket and Jones") {
    CHECK(as_map(kauffman_bracket(Diagram())) == std::map<int, long>{{0, 1}});
    CHECK(as_map(jones(Diagram())) == std::map<int, long>{{0, 1}});
    // t + t^3 - t^4 in half-units
    CHECK(as_map(jones(torus_knot(2, 3))) == std::map<int, long>{{2, 1}, {6, 1}, {8, -1}});
    for (const auto& e : testing::corpus()) {
      if (e.diagram.crossing_count() > 9) continue;
      CAPTURE(e.name);
      CHECK(as_map(jones(e.diagram)) == testing::brute_jones(e.diagram));
    }
  }

  TEST_CASE("serial and parallel bracket agree") {
    for (const char* name : {"8_19", "10_132", "10_161"}) {
      const Diagram& d = testing::knot(name);
      CHECK(kauffman_bracket(d, 16, false) == kauffman_bracket(d, 16, true));
    }
  }

  TEST_CASE("|V(-1)| equals the determinant on the corpus") {
    for (const auto& e : testing::corpus()) {
      CAPTURE(e.name);
      CHECK(abs_at_minus_one(jones(e.diagram)) == determinant(e.diagram));
    }
  }

  TEST_CASE("mirror inverts the Jones variable") {
    for (const char* name : {"3_1", "5_2", "8_19", "9_42"}) {
      const Diagram& d = testing::knot(name);
      CHECK(jones(mirror(d)) == jones(d).substitute(-1));
    }
  }

  TEST_CASE("ceilings and split diagrams") {
    CHECK_THROWS_AS(kauffman_bracket(testing::knot("10_1"), 9), CeilingError);
    Diagram two = Diagram::from_tuples({}, {1, 2});
    CHECK_THROWS_AS(signature(two), SplitDiagramError);
  }
}
