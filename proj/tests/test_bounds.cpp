#include "doctest.h"
#include "knotbound/bounds.hpp"
#include "knotbound/classical.hpp"
#include "knotbound/error.hpp"
#include "knotbound/turaev.hpp"
#include "support.hpp"

using namespace kb;

namespace {

const InjectedTable& bundled() {
  static const InjectedTable t = InjectedTable::load(data_path("injected_sn.json"));
  return t;
}

}  // namespace

TEST_SUITE("bounds") {
  TEST_CASE("intervals") {
    Interval a{mpq_class(1, 2), 2};
    CHECK(to_string(a) == "[1/2, 2]");
    CHECK(to_string(Interval::point(-3)) == "-3");
    CHECK((-a) == Interval{-2, mpq_class(-1, 2)});
    CHECK(a.scaled(2) == Interval{1, 4});
    CHECK(a.contains(1));
    CHECK_FALSE(a.contains(3));
  }

  TEST_CASE("injected table parsing") {
    InjectedTable t = InjectedTable::parse(
        R"([{"knot":"K","invariant":"x","value":"3/4","citation":"c"},
            {"knot":"K","invariant":"y","value":[1,"5/2"],"citation":"c"}])");
    REQUIRE(t.find("K", "x"));
    CHECK(t.find("K", "x")->value == Interval::point(mpq_class(3, 4)));
    CHECK(t.find("K", "y")->value == Interval{1, mpq_class(5, 2)});
    CHECK(t.find("K", "z") == nullptr);
    InjectedTable back = InjectedTable::parse(t.to_json());
    CHECK(back.records().size() == 2);
    CHECK(back.find("K", "y")->value == t.find("K", "y")->value);
    CHECK_THROWS_AS(InjectedTable::parse(R"([{"knot":"K","invariant":"x","value":1}])"), InputError);
    CHECK_THROWS_AS(InjectedTable::parse(R"([{"knot":"K","invariant":"x","value":[2,1],"citation":"c"}])"),
                    InputError);
    CHECK_THROWS_AS(InjectedTable::parse("not json"), InputError);
    CHECK(bundled().records().size() == 180);
    for (const auto& r : bundled().records()) CHECK_FALSE(r.citation.empty());
  }

  TEST_CASE("reduction of the 6_2 figure diagram") {
    Diagram d = mirror(testing::knot("6_2"));
    ReductionResult r = reduce_positive(d);
    CHECK(r.gamma_edges.size() == 2);
    CHECK(r.tree.size() == 1);
    CHECK(r.connected.crossing_count() == 5);
    CHECK(r.reduced.crossing_count() == 4);
    CHECK(r.reduced.is_negative());
    CHECK(r.reduced.is_connected());
    CHECK(s_A(r.reduced) == s_A(d) - 1);
    CHECK(r.band_count == 1);
  }

  TEST_CASE("degenerate reductions") {
    Diagram neg = mirror(torus_knot(2, 5));
    ReductionResult r = reduce_positive(neg);
    CHECK(r.gamma_vertices == 1);
    CHECK(r.tree.empty());
    CHECK(r.reduced == neg);
    CHECK(r.band_count == 0);
    Diagram pos = torus_knot(2, 3);
    ReductionResult n = reduce_negative(pos);
    CHECK(n.reduced == pos);
    CHECK(n.tree.empty());
  }

  TEST_CASE("reduction invariants over the corpus, every tree") {
    for (const auto& e : testing::corpus()) {
      const Diagram& d = e.diagram;
      if (d.crossing_count() == 0) continue;
      CAPTURE(e.name);
      for (int seed = -1; seed < 4; ++seed) {
        TreeChoice tc{seed >= 0, static_cast<std::uint64_t>(seed)};
        ReductionResult r = reduce_positive(d, tc);
        CHECK(r.reduced.is_connected());
        CHECK(r.reduced.is_negative());
        CHECK(s_A(r.reduced) == s_A(d) - static_cast<int>(r.tree.size()));
        CHECK(jones(r.connected) == jones(r.reduced));  // untwisting keeps the link
        ReductionResult m = reduce_negative(d, tc);
        CHECK(m.reduced.is_positive());
        CHECK(s_B(m.reduced) == s_B(d) - static_cast<int>(m.tree.size()));
      }
    }
  }

  TEST_CASE("DL bounds on small diagrams") {
    DLSource s = DLSource::s_invariant();
    DLSource sig = DLSource::neg_signature();
    DLBoundCheck c = dl_axiom2_check(torus_knot(2, 3), s);
    CHECK(c.lower == 2);
    CHECK(c.upper == 2);
    CHECK(c.pass);
    CHECK(c.margin_low == 0);
    CHECK(c.margin_high == 0);
    DLBoundCheck u = dl_knot_bounds(Diagram(), sig);
    CHECK(u.lower == 0);
    CHECK(u.upper == 0);
    CHECK(u.pass);
    DLBoundCheck t = dl_axiom2_check(torus_knot(2, 5), s);
    CHECK(t.lower == 4);
    CHECK(t.upper == 4);
    CHECK(t.value == Interval::point(4));
    CHECK_THROWS_AS(dl_axiom2_check(testing::knot("4_1"), s), InputError);
    DLSource missing = DLSource::injected("nothing", &bundled());
    CHECK_THROWS_AS(dl_knot_bounds(torus_knot(2, 3), missing, "3_1"), MissingDataError);
  }

  TEST_CASE("6_2 bounds contain s") {
    Diagram d = mirror(testing::knot("6_2"));
    DLBoundCheck c = dl_knot_bounds(d, DLSource::s_invariant());
    const auto* e = find_entry(testing::corpus(), "6_2");
    CHECK(c.value == Interval::point(-testing::annotation(*e, "s")));
    CHECK(c.pass);
  }

  TEST_CASE("mirror gives the dual inequality") {
    DLSource sig = DLSource::neg_signature();
    for (const char* name : {"5_2", "8_19", "9_42"}) {
      const Diagram& d = testing::knot(name);
      DLBoundCheck a = dl_knot_bounds(d, sig), b = dl_knot_bounds(mirror(d), sig);
      CHECK(b.lower == -a.upper);
      CHECK(b.upper == -a.lower);
      CHECK(b.value == -a.value);
    }
  }

  TEST_CASE("Theorem B bound arithmetic") {
    const int p = 3, q = 1, n = 5;
    const int s = 2 * (p - q);
    std::map<std::string, Interval> low{{"s", Interval::point(s)}, {"sn", Interval::point(s - 2)}};
    CHECK(theorem_b_bound(low, {}).bound == 1);
    std::map<std::string, Interval> high{{"s", Interval::point(s)},
                                         {"sn", Interval::point(mpq_class(s - 2) + mpq_class(2, n - 1))}};
    CHECK(theorem_b_bound(high, {}).bound == 1 - mpq_class(1, n - 1));
    std::map<std::string, Interval> both{{"s", Interval::point(s)}, {"sn", bundled().find(pretzel_name(p, q),
                                                                                     sn_normalized_name(n))->value}};
    BoundReport r = theorem_b_bound(both, {});
    CHECK(r.bound == 1 - mpq_class(1, n - 1));
    CHECK(r.pairs[0].worst == 1);
    std::map<std::string, Interval> same{{"a", Interval::point(2)}, {"b", Interval::point(2)}};
    CHECK(theorem_b_bound(same, {}).bound == 0);
    CHECK_THROWS_AS(theorem_b_bound({{"a", Interval::point(1)}}, {}), InputError);
  }

  TEST_CASE("Theorem B over the corpus with s and -sigma") {
    DLSource s = DLSource::s_invariant();
    for (const auto& e : testing::corpus()) {
      if (e.diagram.crossing_count() > 9 || e.diagram.crossing_count() == 0) continue;
      std::map<std::string, Interval> v{{"s", *s.evaluate(e.diagram, e.name)},
                                        {"neg_sigma", Interval::point(-signature(e.diagram))}};
      BoundReport r = theorem_b_bound(v, std::span<const Diagram>(&e.diagram, 1));
      CHECK_FALSE(r.violated);
    }
  }

  TEST_CASE("Theorem A bookkeeping") {
    TheoremAReport a = theorem_a_bookkeeping(1, 1, 1, bundled());
    CHECK(a.s_summand == 0);
    CHECK(a.limit_bound == mpq_class(1));
    CHECK(a.diagram_genus == 1);
    CHECK(a.certified);
    CHECK(a.sigma_only_bound == 0);
    for (const auto& f : a.finite_n) CHECK(f.guaranteed == 1 - mpq_class(1, f.n - 1));
    TheoremAReport b = theorem_a_bookkeeping(3, 2, 1, bundled(), 14, 2);
    CHECK(b.diagram_genus == 3);
    CHECK(b.limit_bound == mpq_class(3));
    CHECK(b.certified);
    CHECK_THROWS_AS(theorem_a_bookkeeping(0, 1, 1, bundled()), InputError);
  }

  TEST_CASE("corollary bookkeeping") {
    for (int p = 1; p <= 5; ++p)
      for (int q = 1; q <= p; ++q) {
        Diagram k = pretzel(PretzelSpec{p, q});
        CorollaryReport c = corollary_c_check(pretzel_name(p, q), 2 * (p - q), std::span<const Diagram>(&k, 1),
                                              bundled());
        CHECK(c.status == CorollaryStatus::Equality);
        CHECK(c.lhs == Interval::point(2));
      }
    InjectedTable t;
    t.add({"3_1", kLimsupSnOverN, Interval::point(-2), "homogeneous"});
    const Diagram& tr = testing::knot("3_1");
    CorollaryReport alt = corollary_c_check("3_1", 2, std::span<const Diagram>(&tr, 1), t);
    CHECK(alt.status == CorollaryStatus::Equality);
    CHECK(alt.lhs == Interval::point(0));
    CorollaryReport none = corollary_c_check("4_1", 0, std::span<const Diagram>(&tr, 1), t);
    CHECK(none.status == CorollaryStatus::Inconclusive);
  }
}
