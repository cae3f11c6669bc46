#include "knotbound/turaev.hpp"

#include <numeric>
#include <queue>

#include "knotbound/error.hpp"
#include "knotbound/kernels.hpp"

namespace kb {

StateCircles count_circles(const Diagram& d, const StateAssignment& s) {
  if (static_cast<int>(s.size()) != d.crossing_count())
    throw InputError("state has " + std::to_string(s.size()) + " entries for " +
                     std::to_string(d.crossing_count()) + " crossings");
  const int na = d.arc_count();
  std::vector<int> parent(na);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < d.crossing_count(); ++i) {
    auto arc = [&](int slot) { return d.arc_of_end(4 * i + slot); };
    int m1 = s[i] == Smoothing::A ? 1 : 3;
    int m2 = s[i] == Smoothing::A ? 3 : 1;
    parent[find(arc(0))] = find(arc(m1));
    parent[find(arc(2))] = find(arc(m2));
  }
  StateCircles out;
  out.circle_of_arc.assign(na, -1);
  std::vector<int> id(na, -1);
  for (int a = 0; a < na; ++a) {
    int r = find(a);
    if (id[r] < 0) id[r] = out.count++;
    out.circle_of_arc[a] = id[r];
  }
  out.count += static_cast<int>(d.loops().size());
  return out;
}

int s_A(const Diagram& d) {
  return count_circles(d, StateAssignment(d.crossing_count(), Smoothing::A)).count;
}

int s_B(const Diagram& d) {
  return count_circles(d, StateAssignment(d.crossing_count(), Smoothing::B)).count;
}

int turaev_genus_diagram(const Diagram& d) {
  if (!d.is_connected()) throw SplitDiagramError("Turaev genus needs a connected diagram");
  int twice = d.crossing_count() + 2 - s_A(d) - s_B(d);
  if (twice % 2 != 0 || twice < 0)
    throw InputError("c + 2 - s_A - s_B = " + std::to_string(twice) +
                     "; diagram is not a planar connected PD code");
  return twice / 2;
}

RibbonGraph all_a_ribbon_graph(const Diagram& d) {
  if (!d.is_connected()) throw SplitDiagramError("ribbon graph needs a connected diagram");
  const int n = d.crossing_count();
  RibbonGraph g;
  g.edges = n;
  if (n == 0) {
    g.vertices = g.faces = 1;
    return g;
  }
  // Dart (i, strand): strand 0 is the A-strand through slots 0,1, strand 1
  // through slots 2,3. Walk each all-A circle: enter at x, leave at x^1.
  const int nd = 2 * n;
  std::vector<int> vertex_of(nd, -1), pos(nd, -1), side(nd, 0);
  std::vector<std::vector<int>> rotation;
  for (int start = 0; start < 4 * n; ++start) {
    int x0 = d.partner(start);
    if (vertex_of[(x0 / 4) * 2 + (x0 % 4) / 2] >= 0) continue;
    std::vector<int> cyc;
    const int v = static_cast<int>(rotation.size());
    int y = start;
    do {
      int x = d.partner(y);
      int dart = (x / 4) * 2 + (x % 4) / 2;
      vertex_of[dart] = v;
      pos[dart] = static_cast<int>(cyc.size());
      side[dart] = x % 2 == 0 ? 1 : -1;
      cyc.push_back(dart);
      y = x ^ 1;
    } while (y != start);
    rotation.push_back(std::move(cyc));
  }
  g.vertices = static_cast<int>(rotation.size());

  auto twist = [&](int i) { return side[2 * i] == side[2 * i + 1] ? 1 : -1; };

  // Orientability: flip vertex orientations to make every edge untwisted.
  std::vector<int> flip(g.vertices, 0);
  std::vector<std::vector<std::pair<int, int>>> adj(g.vertices);
  for (int i = 0; i < n; ++i) {
    int u = vertex_of[2 * i], w = vertex_of[2 * i + 1];
    adj[u].push_back({w, twist(i)});
    adj[w].push_back({u, twist(i)});
  }
  flip[0] = 1;
  std::queue<int> q;
  q.push(0);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (auto [w, t] : adj[u]) {
      int want = flip[u] * t;
      if (!flip[w]) {
        flip[w] = want;
        q.push(w);
      } else if (flip[w] != want) {
        g.orientable = false;
      }
    }
  }

  // Boundary walks over states (dart, direction); each walk is met twice.
  std::vector<char> seen(2 * nd, 0);
  int cycles = 0;
  for (int s0 = 0; s0 < 2 * nd; ++s0) {
    if (seen[s0]) continue;
    ++cycles;
    int s = s0;
    do {
      seen[s] = 1;
      int dart = s / 2;
      int eps = s % 2 == 0 ? 1 : -1;
      int other = dart ^ 1;
      eps *= twist(dart / 2);
      const auto& rot = rotation[vertex_of[other]];
      const int m = static_cast<int>(rot.size());
      int next = rot[(pos[other] + (eps > 0 ? 1 : m - 1)) % m];
      s = 2 * next + (eps > 0 ? 0 : 1);
    } while (s != s0);
  }
  if (cycles % 2 != 0) throw InvariantError("boundary walks did not pair up");
  g.faces = cycles / 2;
  int euler = g.vertices - g.edges + g.faces;
  if (!g.orientable) throw InvariantError("all-A ribbon graph is not orientable");
  if ((2 - euler) % 2 != 0) throw InvariantError("odd Euler characteristic defect");
  g.genus = (2 - euler) / 2;
  return g;
}

int ribbon_genus_oracle(const Diagram& d) { return all_a_ribbon_graph(d).genus; }

int diagram_genus_upper_bound(std::span<const Diagram> diagrams) {
  if (diagrams.empty()) throw InputError("no diagrams given");
  int best = turaev_genus_diagram(diagrams.front());
  for (const auto& d : diagrams.subspan(1)) best = std::min(best, turaev_genus_diagram(d));
  return best;
}

}  // namespace kb
