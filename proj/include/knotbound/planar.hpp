#pragma once

// Faces of the diagram's 4-valent graph on S^2.
//
// Corner (i, k) is the wedge between rays k and k+1 (counterclockwise) at
// crossing i. Walking out along ray k+1, the corner is on the right; the
// face continues at the corner (j, m) where (j, m) is the far end of that arc.

#include <vector>

#include "knotbound/diagram.hpp"

namespace kb {

struct Corner {
  int crossing;
  int index;  // 0..3
};

struct FaceStructure {
  std::vector<std::vector<Corner>> faces;
  std::vector<int> face_of_corner;  // indexed by 4*crossing + index
};

FaceStructure trace_faces(const Diagram& d);

// Two-colouring of the faces of a connected diagram; colour[f] is 0 or 1.
// Colour 0 is the class of the face to the right of the lowest-labelled arc.
std::vector<int> checkerboard(const Diagram& d, const FaceStructure& fs);

}  // namespace kb
