#include "doctest.h"
#include "knotbound/error.hpp"
#include "knotbound/kernels.hpp"
#include "support.hpp"

using namespace kb;

TEST_SUITE("kernels") {
  TEST_CASE("label_state counts like the label oracle") {
    for (const char* name : {"3_1", "7_7", "9_42", "10_145"}) {
      const Diagram& d = testing::knot(name);
      StateTable t = state_table(d);
      std::vector<int> labels(t.arcs);
      for (std::uint64_t s = 0; s < (std::uint64_t(1) << t.crossings); s += 7)
        CHECK(label_state(t, s, labels.data()) == testing::brute_circles(d, s));
    }
  }

  TEST_CASE("serial and parallel histograms agree") {
    for (const auto& e : testing::corpus()) {
      if (e.diagram.crossing_count() < 8) continue;
      StateTable t = state_table(e.diagram);
      StateHistogram a = state_histogram_serial(t), b = state_histogram_parallel(t);
      CHECK(a.stride == b.stride);
      CHECK(a.counts == b.counts);
    }
  }

  TEST_CASE("serial and parallel cube labels agree") {
    for (const char* name : {"8_19", "9_42", "10_132", "10_161"}) {
      StateTable t = state_table(testing::knot(name));
      CubeLabels a = label_cube_serial(t), b = label_cube_parallel(t);
      CHECK(a.circles == b.circles);
      CHECK(a.labels == b.labels);
    }
    StateTable big = state_table(testing::knot("11n95"));
    CHECK(label_cube_serial(big).circles == label_cube_parallel(big).circles);
  }

  TEST_CASE("histogram totals") {
    StateTable t = state_table(torus_knot(2, 3));
    StateHistogram h = state_histogram_serial(t);
    std::int64_t total = 0;
    for (auto c : h.counts) total += c;
    CHECK(total == 8);
    CHECK(h.counts[0 * h.stride + 2] == 1);  // all-A: 2 circles
    CHECK(h.counts[3 * h.stride + 3] == 1);  // all-B: 3 circles
  }
}
