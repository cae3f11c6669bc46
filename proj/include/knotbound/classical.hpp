#pragma once

// Checkerboard data, Goeritz matrix with the Gordon-Litherland correction,
// and the Kauffman bracket / Jones polynomial.

#include <cstdint>
#include <vector>

#include "knotbound/diagram.hpp"
#include "knotbound/laurent.hpp"
#include "knotbound/linalg.hpp"
#include "knotbound/planar.hpp"

namespace kb {

struct CheckerboardColoring {
  FaceStructure faces;
  std::vector<int> colour;  // per face
  int white = 0;            // colour class used as Goeritz regions
  // Per crossing: +1 when the white corners are 0 and 2, -1 when 1 and 3.
  std::vector<int> eta;
  // Per crossing: 1 or 2; type II when the oriented smoothing joins the two
  // black corners.
  std::vector<int> type;
};

CheckerboardColoring checkerboard_coloring(const Diagram& d, int white = 0);

struct GoeritzData {
  std::vector<int> regions;  // white faces; the last one is dropped from the matrix
  IntMatrix matrix;
  int mu = 0;
  int form_signature = 0;
};

GoeritzData goeritz(const Diagram& d, int white = 0);

// Both reject split diagrams; the crossing-free unknot gives 0 and 1.
int signature(const Diagram& d);
std::int64_t determinant(const Diagram& d);

// <D> in the variable A, by state sum. Throws CeilingError above `ceiling`.
Laurent kauffman_bracket(const Diagram& d, int ceiling = 16, bool parallel = true);

// Jones polynomial with exponents in units of t^(1/2): the entry at e is the
// coefficient of t^(e/2).
Laurent jones_from_bracket(const Laurent& bracket, int writhe);
Laurent jones(const Diagram& d, int ceiling = 16);

// |V(-1)| with t^(1/2) = i.
std::int64_t abs_at_minus_one(const Laurent& jones);

}  // namespace kb
