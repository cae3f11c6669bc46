#include "knotbound/planar.hpp"

#include <queue>

#include "knotbound/error.hpp"

namespace kb {

FaceStructure trace_faces(const Diagram& d) {
  const int n = d.crossing_count();
  FaceStructure fs;
  fs.face_of_corner.assign(4 * n, -1);
  for (int c0 = 0; c0 < 4 * n; ++c0) {
    if (fs.face_of_corner[c0] >= 0) continue;
    const int f = static_cast<int>(fs.faces.size());
    fs.faces.emplace_back();
    int c = c0;
    do {
      fs.face_of_corner[c] = f;
      fs.faces[f].push_back({c / 4, c % 4});
      int ray = 4 * (c / 4) + (c % 4 + 1) % 4;
      c = d.partner(ray);
    } while (c != c0);
  }
  return fs;
}

std::vector<int> checkerboard(const Diagram& d, const FaceStructure& fs) {
  if (!d.is_connected() || d.crossing_count() == 0)
    throw SplitDiagramError("checkerboard colouring needs a connected diagram with crossings");
  const int nf = static_cast<int>(fs.faces.size());
  std::vector<int> colour(nf, -1);
  // Root: face to the right of the lowest arc, i.e. corner (tail - 1).
  int tail = d.arc_tail(0);
  int root = fs.face_of_corner[4 * (tail / 4) + (tail % 4 + 3) % 4];
  colour[root] = 0;
  std::queue<int> q;
  q.push(root);
  while (!q.empty()) {
    int f = q.front();
    q.pop();
    for (const Corner& c : fs.faces[f]) {
      // neighbouring corners at the same crossing lie across a ray
      for (int dk : {1, 3}) {
        int g = fs.face_of_corner[4 * c.crossing + (c.index + dk) % 4];
        if (colour[g] < 0) {
          colour[g] = 1 - colour[f];
          q.push(g);
        } else if (colour[g] == colour[f]) {
          throw InputError("faces are not two-colourable; PD code is not planar");
        }
      }
    }
  }
  return colour;
}

}  // namespace kb
