#pragma once

// Kauffman states, extreme-state circle counts and the Turaev genus of a
// diagram, with a ribbon-graph computation of the same genus kept as an
// independent check.

#include <span>
#include <vector>

#include "knotbound/diagram.hpp"

namespace kb {

using StateAssignment = std::vector<Smoothing>;

struct StateCircles {
  int count = 0;
  std::vector<int> circle_of_arc;  // arc index -> circle; loops take the last ids
};

StateCircles count_circles(const Diagram& d, const StateAssignment& s);

int s_A(const Diagram& d);
int s_B(const Diagram& d);

// (c + 2 - s_A - s_B) / 2 for a connected diagram.
int turaev_genus_diagram(const Diagram& d);

struct RibbonGraph {
  int vertices = 0;  // all-A circles
  int edges = 0;     // crossings
  int faces = 0;     // boundary walks
  bool orientable = true;
  int genus = 0;
};

// Builds the all-A ribbon graph (rotation from the circle traversal, one
// twist bit per crossing) and counts boundary walks by tracing them.
RibbonGraph all_a_ribbon_graph(const Diagram& d);
int ribbon_genus_oracle(const Diagram& d);

// Smallest diagram genus among the given diagrams of one knot. Only an upper
// bound for the genus of the knot.
int diagram_genus_upper_bound(std::span<const Diagram> diagrams);

}  // namespace kb
