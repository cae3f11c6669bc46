#include "doctest.h"
#include "knotbound/error.hpp"
#include "knotbound/report.hpp"
#include "knotbound/turaev.hpp"
#include "support.hpp"

using namespace kb;

TEST_SUITE("cli") {
  TEST_CASE("bundled corpus") {
    const auto& c = testing::corpus();
    int up_to_nine = 0;
    for (const auto& e : c) up_to_nine += testing::crossing_number(e) <= 9;
    CHECK(up_to_nine >= 84);
    CHECK(c.size() == 250);
    CHECK(std::is_sorted(c.begin(), c.end(), [](const auto& a, const auto& b) { return a.name < b.name; }));
    CHECK(testing::genus_two().size() == 12);
    for (const char* n : {"11n95", "12n253", "12n254"}) CHECK(find_entry(testing::genus_two(), n));
  }

  TEST_CASE("CSV parsing") {
    CHECK(parse_corpus_csv("").empty());
    CHECK(parse_corpus_csv("# only a comment\n\n").empty());
    auto one = parse_corpus_csv(
        "name,pd,components,citations\n"
        "b,\"PD[X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]]\",1,first | second,s=2;signature=-2\n"
        "a,PD[],1,none\n");
    REQUIRE(one.size() == 2);
    CHECK(one[0].name == "a");
    CHECK(one[1].citations == std::vector<std::string>{"first", "second"});
    CHECK(one[1].annotations.at("s") == "2");
    CHECK(one[1].diagram.crossing_count() == 3);
  }

  TEST_CASE("CSV diagnostics name the row") {
    auto fails_with = [](const std::string& text, const std::string& needle) {
      try {
        parse_corpus_csv(text, "t.csv");
      } catch (const InputError& e) {
        return std::string(e.what()).find(needle) != std::string::npos;
      }
      return false;
    };
    CHECK(fails_with("a,PD[],1,c\nb,\"PD[X[1,2,3]]\",1,c\n", "row 2"));
    CHECK(fails_with("# c\na,PD[],1,c\na,PD[],1,c\n", "duplicate"));
    CHECK(fails_with("a,PD[],2,c\n", "components"));
    CHECK(fails_with("a,PD[]\n", "row 1"));
    CHECK(fails_with("a,PD[],x,c\n", "positive integer"));
    CHECK(fails_with("a,PD[],1,c,junk\n", "key=value"));
  }

  TEST_CASE("JSON corpus") {
    auto c = parse_corpus_json(R"([{"name":"u","pd":"PD[]","components":1,"citations":["x"],
                                    "annotations":{"s":0}}])");
    REQUIRE(c.size() == 1);
    CHECK(c[0].annotations.at("s") == "0");
    CHECK(parse_corpus_json("[]").empty());
    CHECK_THROWS_AS(parse_corpus_json(R"([{"name":"u"}])"), InputError);
  }

  TEST_CASE("reports") {
    InvariantReport u = compute_report(Diagram(), "unknot");
    CHECK(u.crossings == 0);
    CHECK(u.det == 1);
    CHECK(u.sigma == 0);
    CHECK(u.s == 0);
    CHECK(u.turaev_genus == 0);
    CHECK(u.jones == "1");

    InvariantReport t = compute_report(testing::knot("3_1"), "3_1");
    CHECK(t.det == 3);
    CHECK(t.sigma == -2);
    CHECK(t.turaev_genus == 0);
    CHECK(t.jones == "t + t^3 - t^4");
    CHECK_FALSE(t.any_violation());

    InvariantReport k = compute_report(pretzel(PretzelSpec{2, 1}), "K_{2,1}");
    CHECK(k.turaev_genus == 1);
    CHECK(k.sigma == -2);
    CHECK(k.s == 2);
    CHECK(k.theorem_b_bound == "0");

    ReportOptions small;
    small.kh_ceiling = 5;
    InvariantReport skipped = compute_report(testing::knot("8_19"), "8_19", small);
    CHECK_FALSE(skipped.s);
    CHECK(skipped.skipped.count("s"));

    Diagram hopf = smooth(torus_knot(2, 3), 0, Smoothing::A);
    InvariantReport link = compute_report(hopf, "hopf");
    CHECK(link.det == 2);
    CHECK(link.skipped.at("s") == "s is defined for knots only");
  }

  TEST_CASE("report JSON round trip and internal consistency") {
    for (const auto& e : testing::corpus()) {
      if (e.diagram.crossing_count() > 7) continue;
      InvariantReport r = compute_report(e.diagram, e.name);
      CHECK(InvariantReport::from_json(r.to_json()) == r);
      CHECK(r.genus_from_counts() == r.turaev_genus);
      CHECK(check_annotations(e, r).empty());
    }
    InvariantReport link = compute_report(Diagram::from_tuples({}, {1, 2}), "split");
    CHECK(InvariantReport::from_json(link.to_json()) == link);
    CHECK_THROWS_AS(InvariantReport::from_json("{}"), InputError);
  }

  TEST_CASE("annotation mismatches are reported") {
    CorpusEntry e = *find_entry(testing::corpus(), "3_1");
    e.annotations["signature"] = "2";
    InvariantReport r = compute_report(e.diagram, e.name);
    auto m = check_annotations(e, r);
    REQUIRE(m.size() == 1);
    CHECK(m[0].key == "signature");
    CHECK(m[0].computed == "-2");
  }
}
