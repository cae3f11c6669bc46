#include "knotbound/kernels.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "knotbound/error.hpp"

namespace kb {

namespace {

int find(int* parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

void unite(int* parent, int a, int b) {
  a = find(parent, a);
  b = find(parent, b);
  if (a != b) parent[std::max(a, b)] = std::min(a, b);
}

constexpr int kMaxCubeCrossings = 24;

void check_cube_size(const StateTable& t) {
  if (t.crossings > kMaxCubeCrossings)
    throw CeilingError("state enumeration over " + std::to_string(t.crossings) + " crossings");
}

}  // namespace

StateTable state_table(const Diagram& d) {
  StateTable t;
  t.crossings = d.crossing_count();
  t.arcs = d.arc_count();
  t.loops = static_cast<int>(d.loops().size());
  t.arc.resize(t.crossings);
  for (int i = 0; i < t.crossings; ++i)
    for (int s = 0; s < 4; ++s) t.arc[i][s] = d.arc_of_end(4 * i + s);
  return t;
}

int label_state(const StateTable& t, std::uint64_t state, int* labels) {
  std::vector<int> parent(t.arcs);
  std::iota(parent.begin(), parent.end(), 0);
  for (int k = 0; k < t.crossings; ++k) {
    const auto& a = t.arc[k];
    if ((state >> k) & 1) {
      unite(parent.data(), a[0], a[3]);
      unite(parent.data(), a[1], a[2]);
    } else {
      unite(parent.data(), a[0], a[1]);
      unite(parent.data(), a[2], a[3]);
    }
  }
  // roots are the minimal arc of each class, so first-occurrence numbering
  // only needs one pass
  int next = 0;
  for (int a = 0; a < t.arcs; ++a) {
    int r = find(parent.data(), a);
    labels[a] = r == a ? next++ : labels[r];
  }
  return next + t.loops;
}

StateHistogram state_histogram_serial(const StateTable& t) {
  check_cube_size(t);
  StateHistogram h;
  h.stride = t.arcs + t.loops + 1;
  h.counts.assign(static_cast<std::size_t>(t.crossings + 1) * h.stride, 0);
  std::vector<int> labels(t.arcs);
  const std::uint64_t total = std::uint64_t{1} << t.crossings;
  for (std::uint64_t s = 0; s < total; ++s) {
    int k = label_state(t, s, labels.data());
    h.counts[std::popcount(s) * h.stride + k]++;
  }
  return h;
}

StateHistogram state_histogram_parallel(const StateTable& t) {
  check_cube_size(t);
  StateHistogram h;
  h.stride = t.arcs + t.loops + 1;
  const std::size_t size = static_cast<std::size_t>(t.crossings + 1) * h.stride;
  h.counts.assign(size, 0);
  const std::int64_t total = std::int64_t{1} << t.crossings;
#pragma omp parallel
  {
    std::vector<std::int64_t> local(size, 0);
    std::vector<int> labels(t.arcs);
#pragma omp for schedule(static)
    for (std::int64_t s = 0; s < total; ++s) {
      int k = label_state(t, static_cast<std::uint64_t>(s), labels.data());
      local[std::popcount(static_cast<std::uint64_t>(s)) * h.stride + k]++;
    }
#pragma omp critical
    for (std::size_t i = 0; i < size; ++i) h.counts[i] += local[i];
  }
  return h;
}

CubeLabels label_cube_serial(const StateTable& t) {
  check_cube_size(t);
  CubeLabels c;
  c.arcs = t.arcs;
  const std::size_t total = std::size_t{1} << t.crossings;
  c.circles.resize(total);
  c.labels.resize(total * t.arcs);
  std::vector<int> labels(t.arcs);
  for (std::size_t v = 0; v < total; ++v) {
    c.circles[v] = static_cast<std::uint8_t>(label_state(t, v, labels.data()));
    std::copy(labels.begin(), labels.end(), c.labels.begin() + v * t.arcs);
  }
  return c;
}

CubeLabels label_cube_parallel(const StateTable& t) {
  check_cube_size(t);
  CubeLabels c;
  c.arcs = t.arcs;
  const std::int64_t total = std::int64_t{1} << t.crossings;
  c.circles.resize(total);
  c.labels.resize(static_cast<std::size_t>(total) * t.arcs);
#pragma omp parallel
  {
    std::vector<int> labels(t.arcs);
#pragma omp for schedule(static)
    for (std::int64_t v = 0; v < total; ++v) {
      c.circles[v] = static_cast<std::uint8_t>(label_state(t, v, labels.data()));
      std::copy(labels.begin(), labels.end(), c.labels.begin() + v * t.arcs);
    }
  }
  return c;
}

}  // namespace kb
