#pragma once

// Cube of resolutions, Khovanov homology over GF(2) or Q, the Lee
// deformation and the Rasmussen s-invariant.
//
// Vertex bit k clear = A-smoothing at crossing k. A generator at vertex v is
// a mask over the circles of v; a set bit labels that circle v_-. Gradings:
//   i = |v| - n_-,   j = (#v_+ - #v_-) + |v| + n_+ - 2 n_-.

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "knotbound/diagram.hpp"
#include "knotbound/kernels.hpp"
#include "knotbound/laurent.hpp"

namespace kb {

enum class Field { GF2, Q };

struct ResolutionCube {
  int crossings = 0;
  int n_plus = 0;
  int n_minus = 0;
  StateTable table;
  CubeLabels labels;
  std::vector<std::int64_t> offset;  // first generator of each vertex; size 2^c + 1

  int circles(std::uint32_t v) const { return labels.circles[v]; }
  int label(std::uint32_t v, int arc) const { return labels.labels[std::size_t(v) * labels.arcs + arc]; }
  std::int64_t dimension() const { return offset.back(); }
  int homological(std::uint32_t v) const;
  int quantum(std::uint32_t v, std::uint32_t mask) const;
};

ResolutionCube build_cube(const Diagram& d, int ceiling = 14, bool parallel = true);

// Which circles a cube edge touches. For a merge, from = {x, y} and to = {z, z};
// for a split, from = {x, x} and to = {z0, z1}.
struct EdgeData {
  bool merge = true;
  std::pair<int, int> from;
  std::pair<int, int> to;
};

EdgeData edge_data(const ResolutionCube& cube, std::uint32_t v, int k);

// Differential applied to one generator: (target generator, coefficient).
// With lee = true the Lee terms are included.
std::vector<std::pair<std::int64_t, int>> apply_differential(const ResolutionCube& cube,
                                                             std::uint32_t v, std::uint32_t mask,
                                                             bool lee);

// (i, j) -> rank; zero ranks are omitted.
using KhRanks = std::map<std::pair<int, int>, int>;

KhRanks khovanov_homology(const ResolutionCube& cube, Field field);
KhRanks khovanov_homology(const Diagram& d, Field field, int ceiling = 14);

// sum (-1)^i rank(i, j) q^j
Laurent graded_euler_characteristic(const KhRanks& ranks);
// (q + q^-1) V with t^(1/2) = -q; `jones` uses the t^(1/2) exponent units.
Laurent unnormalised_jones_in_q(const Laurent& jones);

// Exhaustive d o d = 0 check over the integers.
bool differential_squares_to_zero(const ResolutionCube& cube, bool lee);

// Total rank of Lee homology over Q.
int lee_homology_rank(const ResolutionCube& cube);

struct SInvariantResult {
  int s = 0;
  int q_min = 0;
  int q_max = 0;
};

SInvariantResult s_invariant(const Diagram& d, int ceiling = 14);

}  // namespace kb
