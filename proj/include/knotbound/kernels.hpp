#pragma once

// State-sum kernels shared by the bracket and the Khovanov cube.
//
// A state is a bit mask over crossings: bit k clear = A-smoothing, set =
// B-smoothing. Each kernel has a serial reference and an OpenMP version that
// must agree exactly; the tests and the bench target compare them.

#include <array>
#include <cstdint>
#include <vector>

#include "knotbound/diagram.hpp"

namespace kb {

struct StateTable {
  int crossings = 0;
  int arcs = 0;
  int loops = 0;  // crossing-free components, one circle each in every state
  std::vector<std::array<int, 4>> arc;  // arc index at each end
};

StateTable state_table(const Diagram& d);

// Labels arcs by circle (numbered by first arc, loops excluded) and returns
// the number of circles including loops. `labels` must hold t.arcs entries.
int label_state(const StateTable& t, std::uint64_t state, int* labels);

// counts[b * stride + k] = number of states with b B-smoothings and k circles.
struct StateHistogram {
  int stride = 0;
  std::vector<std::int64_t> counts;
};

StateHistogram state_histogram_serial(const StateTable& t);
StateHistogram state_histogram_parallel(const StateTable& t);

// Circle labels of every arc at every vertex of the cube.
struct CubeLabels {
  int arcs = 0;
  std::vector<std::uint8_t> circles;  // per vertex, loops included
  std::vector<std::uint8_t> labels;   // vertex * arcs + arc
};

CubeLabels label_cube_serial(const StateTable& t);
CubeLabels label_cube_parallel(const StateTable& t);

}  // namespace kb
