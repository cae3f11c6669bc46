#include "knotbound/khovanov.hpp"

#include <algorithm>
#include <bit>
#include <queue>
#include <unordered_map>

#include "knotbound/error.hpp"
#include "knotbound/linalg.hpp"

namespace kb {

namespace {

using Term = std::pair<std::int64_t, int>;

struct EdgeMap {
  std::uint32_t w;
  int sign;
  EdgeData e;
  std::vector<int> img;  // circle at v -> circle at w, for circles not on the edge
};

EdgeMap edge_map(const ResolutionCube& cube, std::uint32_t v, int k) {
  EdgeMap m;
  m.w = v | (1u << k);
  m.sign = std::popcount(v & ((1u << k) - 1)) % 2 ? -1 : 1;
  m.e = edge_data(cube, v, k);
  const int loops = cube.table.loops;
  const int cv = cube.circles(v), cw = cube.circles(m.w);
  m.img.assign(cv, -1);
  for (int a = 0; a < cube.table.arcs; ++a) m.img[cube.label(v, a)] = cube.label(m.w, a);
  for (int l = 0; l < loops; ++l) m.img[cv - loops + l] = cw - loops + l;
  return m;
}

// Images of every generator at v, indexed by mask.
std::vector<std::vector<Term>> vertex_images(const ResolutionCube& cube, std::uint32_t v,
                                             bool lee) {
  const int cv = cube.circles(v);
  std::vector<std::vector<Term>> out(std::size_t{1} << cv);
  for (int k = 0; k < cube.crossings; ++k) {
    if ((v >> k) & 1) continue;
    EdgeMap m = edge_map(cube, v, k);
    const std::int64_t base_w = cube.offset[m.w];
    const auto [x, y] = m.e.from;
    for (std::uint32_t mask = 0; mask < out.size(); ++mask) {
      std::uint32_t rest = 0;
      for (int c = 0; c < cv; ++c)
        if (c != x && c != y && ((mask >> c) & 1)) rest |= 1u << m.img[c];
      auto& o = out[mask];
      if (m.e.merge) {
        const std::uint32_t z = 1u << m.e.to.first;
        int minus = ((mask >> x) & 1) + ((mask >> y) & 1);
        if (minus == 0 || (minus == 2 && lee))
          o.push_back({base_w + rest, m.sign});
        else if (minus == 1)
          o.push_back({base_w + (rest | z), m.sign});
      } else {
        const std::uint32_t z0 = 1u << m.e.to.first, z1 = 1u << m.e.to.second;
        if (!((mask >> x) & 1)) {
          o.push_back({base_w + (rest | z1), m.sign});
          o.push_back({base_w + (rest | z0), m.sign});
        } else {
          o.push_back({base_w + (rest | z0 | z1), m.sign});
          if (lee) o.push_back({base_w + rest, m.sign});
        }
      }
    }
  }
  for (auto& o : out) std::sort(o.begin(), o.end());
  return out;
}

void check_knot_ceiling(const Diagram& d, int ceiling) {
  if (d.crossing_count() > ceiling)
    throw CeilingError("Khovanov complex of a " + std::to_string(d.crossing_count()) +
                       "-crossing diagram exceeds ceiling " + std::to_string(ceiling));
}

template <class F>
typename F::value_type coefficient(int c);

template <>
std::uint8_t coefficient<GF2>(int c) {
  return static_cast<std::uint8_t>(c & 1);
}

template <>
mpq_class coefficient<Rational>(int c) {
  return c;
}

template <>
std::int64_t coefficient<SmallRational>(int c) {
  return c;
}

template <class F>
SparseVec<F> to_sparse(const std::vector<Term>& terms, const std::vector<int>* position) {
  SparseVec<F> v;
  v.reserve(terms.size());
  for (auto [g, c] : terms) {
    auto val = coefficient<F>(c);
    if (F::is_zero(val)) continue;
    v.emplace_back(position ? (*position)[g] : static_cast<int>(g), val);
  }
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return v;
}

struct Generator {
  std::int64_t index;
  std::uint32_t v;
  std::uint32_t mask;
  int q;
};

std::vector<Generator> layer(const ResolutionCube& cube, int r) {
  std::vector<Generator> g;
  const std::uint32_t total = 1u << cube.crossings;
  for (std::uint32_t v = 0; v < total; ++v) {
    if (std::popcount(v) != r) continue;
    for (std::uint32_t m = 0; m < (1u << cube.circles(v)); ++m)
      g.push_back({cube.offset[v] + m, v, m, cube.quantum(v, m)});
  }
  return g;
}

// rank of the differential out of layer r, split into blocks by `key`
template <class F, class Key>
std::map<int, int> block_ranks(const ResolutionCube& cube, int r, bool lee, Key key) {
  std::vector<Generator> gens = layer(cube, r);
  std::map<int, std::vector<std::size_t>> blocks;
  for (std::size_t i = 0; i < gens.size(); ++i) blocks[key(gens[i].q)].push_back(i);

  std::unordered_map<std::uint32_t, std::vector<std::vector<Term>>> images;
  for (const auto& g : gens)
    if (!images.count(g.v)) images.emplace(g.v, vertex_images(cube, g.v, lee));

  std::vector<std::pair<int, const std::vector<std::size_t>*>> work;
  for (const auto& [k, idx] : blocks) work.push_back({k, &idx});
  std::vector<int> ranks(work.size(), 0);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t b = 0; b < work.size(); ++b) {
    EchelonBasis<F> basis;
    for (std::size_t i : *work[b].second) {
      const auto& g = gens[i];
      basis.insert(to_sparse<F>(images.at(g.v)[g.mask], nullptr));
    }
    ranks[b] = static_cast<int>(basis.rank());
  }
  std::map<int, int> out;
  for (std::size_t b = 0; b < work.size(); ++b) out[work[b].first] = ranks[b];
  return out;
}

template <class F>
KhRanks homology_over(const ResolutionCube& cube) {
  const int n = cube.crossings;
  std::vector<std::map<int, int>> rank_out(n + 1);
  auto same_q = [](int q) { return q; };
  for (int r = 0; r < n; ++r) rank_out[r] = block_ranks<F>(cube, r, false, same_q);
  KhRanks out;
  for (int r = 0; r <= n; ++r) {
    std::map<int, int> dims;
    for (const auto& g : layer(cube, r)) dims[g.q]++;
    for (auto [q, dim] : dims) {
      int h = dim;
      if (auto it = rank_out[r].find(q); it != rank_out[r].end()) h -= it->second;
      if (r > 0)
        if (auto it = rank_out[r - 1].find(q); it != rank_out[r - 1].end()) h -= it->second;
      if (h < 0) throw InvariantError("negative homology rank");
      if (h > 0) out[{r - cube.n_minus, q}] = h;
    }
  }
  return out;
}

int mod4(int q) { return ((q % 4) + 4) % 4; }

// Position of the lowest surviving entry of `cycle` modulo the image of the
// source generators in class `cls`.
template <class F>
int filtered_lead(const std::vector<Generator>& source,
                  const std::unordered_map<std::uint32_t, std::vector<std::vector<Term>>>& images,
                  const std::vector<int>& position, const std::vector<Term>& cycle, int cls) {
  EchelonBasis<F> basis;
  for (const auto& g : source)
    if (mod4(g.q) == cls) basis.insert(to_sparse<F>(images.at(g.v)[g.mask], &position));
  auto residual = basis.reduce(to_sparse<F>(cycle, &position));
  if (residual.empty()) throw InvariantError("canonical Lee generator is a boundary");
  return residual.front().first;
}

}  // namespace

int ResolutionCube::homological(std::uint32_t v) const { return std::popcount(v) - n_minus; }

int ResolutionCube::quantum(std::uint32_t v, std::uint32_t mask) const {
  int r = std::popcount(v);
  return circles(v) - 2 * std::popcount(mask) + r + n_plus - 2 * n_minus;
}

ResolutionCube build_cube(const Diagram& d, int ceiling, bool parallel) {
  check_knot_ceiling(d, ceiling);
  ResolutionCube cube;
  cube.crossings = d.crossing_count();
  cube.n_plus = d.n_plus();
  cube.n_minus = d.n_minus();
  cube.table = state_table(d);
  cube.labels = parallel ? label_cube_parallel(cube.table) : label_cube_serial(cube.table);
  const std::size_t total = std::size_t{1} << cube.crossings;
  cube.offset.assign(total + 1, 0);
  for (std::size_t v = 0; v < total; ++v)
    cube.offset[v + 1] = cube.offset[v] + (std::int64_t{1} << cube.labels.circles[v]);
  if (cube.dimension() > INT32_MAX) throw CeilingError("Khovanov complex too large to index");
  return cube;
}

EdgeData edge_data(const ResolutionCube& cube, std::uint32_t v, int k) {
  if ((v >> k) & 1) throw InputError("edge must start at a vertex with an A-smoothing");
  const std::uint32_t w = v | (1u << k);
  const auto& a = cube.table.arc[k];
  EdgeData e;
  int x = cube.label(v, a[0]), y = cube.label(v, a[2]);
  e.from = {x, y};
  e.merge = x != y;
  if (e.merge) {
    int z = cube.label(w, a[0]);
    if (cube.label(w, a[2]) != z) throw InvariantError("merge edge produced two circles");
    e.to = {z, z};
  } else {
    e.to = {cube.label(w, a[0]), cube.label(w, a[1])};
    if (e.to.first == e.to.second) throw InvariantError("split edge produced one circle");
  }
  return e;
}

std::vector<std::pair<std::int64_t, int>> apply_differential(const ResolutionCube& cube,
                                                             std::uint32_t v, std::uint32_t mask,
                                                             bool lee) {
  return vertex_images(cube, v, lee).at(mask);
}

KhRanks khovanov_homology(const ResolutionCube& cube, Field field) {
  if (field == Field::GF2) return homology_over<GF2>(cube);
  try {
    return homology_over<SmallRational>(cube);
  } catch (const ArithmeticOverflow&) {
    return homology_over<Rational>(cube);
  }
}

KhRanks khovanov_homology(const Diagram& d, Field field, int ceiling) {
  return khovanov_homology(build_cube(d, ceiling), field);
}

Laurent graded_euler_characteristic(const KhRanks& ranks) {
  Laurent p;
  for (const auto& [ij, rank] : ranks) p += Laurent::monomial(ij.second, ij.first % 2 ? -rank : rank);
  return p;
}

Laurent unnormalised_jones_in_q(const Laurent& jones) {
  Laurent v;
  for (auto [e, c] : jones.terms()) v += Laurent::monomial(e, e % 2 ? -c : c);
  return v * (Laurent::monomial(1) + Laurent::monomial(-1));
}

bool differential_squares_to_zero(const ResolutionCube& cube, bool lee) {
  const std::uint32_t total = 1u << cube.crossings;
  std::vector<std::vector<std::vector<Term>>> images(total);
  for (std::uint32_t v = 0; v < total; ++v) images[v] = vertex_images(cube, v, lee);
  std::vector<std::uint32_t> vertex_of(cube.dimension());
  for (std::uint32_t v = 0; v < total; ++v)
    for (std::int64_t g = cube.offset[v]; g < cube.offset[v + 1]; ++g) vertex_of[g] = v;
  bool ok = true;
#pragma omp parallel for schedule(dynamic) reduction(&& : ok)
  for (std::int64_t v = 0; v < total; ++v) {
    for (const auto& img : images[v]) {
      std::map<std::int64_t, std::int64_t> acc;
      for (auto [g, c] : img) {
        std::uint32_t w = vertex_of[g];
        for (auto [h, c2] : images[w][g - cube.offset[w]]) acc[h] += std::int64_t{c} * c2;
      }
      for (auto [h, c] : acc)
        if (c != 0) ok = false;
    }
  }
  return ok;
}

int lee_homology_rank(const ResolutionCube& cube) {
  const int n = cube.crossings;
  std::vector<std::map<int, int>> rank_out(n + 1);
  for (int r = 0; r < n; ++r) {
    try {
      rank_out[r] = block_ranks<SmallRational>(cube, r, true, mod4);
    } catch (const ArithmeticOverflow&) {
      rank_out[r] = block_ranks<Rational>(cube, r, true, mod4);
    }
  }
  int total = 0;
  for (int r = 0; r <= n; ++r) {
    std::map<int, int> dims;
    for (const auto& g : layer(cube, r)) dims[mod4(g.q)]++;
    for (auto [k, dim] : dims) {
      int h = dim - rank_out[r][k];
      if (r > 0) h -= rank_out[r - 1][k];
      total += h;
    }
  }
  return total;
}

SInvariantResult s_invariant(const Diagram& d, int ceiling) {
  if (d.component_count() != 1) throw InputError("s-invariant is computed for knots only");
  check_knot_ceiling(d, ceiling);
  if (d.crossing_count() == 0) return {0, -1, 1};
  const ResolutionCube cube = build_cube(d, ceiling);
  const int n = cube.crossings;
  std::uint32_t vo = 0;
  for (int k = 0; k < n; ++k)
    if (d.sign(k) < 0) vo |= 1u << k;

  // Seifert circles touching at a crossing get opposite labels (a vs b).
  const int nc = cube.circles(vo);
  std::vector<std::vector<int>> adj(nc);
  for (int k = 0; k < n; ++k) {
    int x = cube.label(vo, cube.table.arc[k][0]), y = cube.label(vo, cube.table.arc[k][2]);
    adj[x].push_back(y);
    adj[y].push_back(x);
  }
  std::vector<int> colour(nc, -1);
  for (int s = 0; s < nc; ++s) {
    if (colour[s] >= 0) continue;
    colour[s] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int w : adj[u]) {
        if (colour[w] < 0) {
          colour[w] = 1 - colour[u];
          q.push(w);
        } else if (colour[w] == colour[u]) {
          throw InvariantError("Seifert graph is not bipartite");
        }
      }
    }
  }

  // Target basis of C^0 ordered by (q, index).
  std::vector<Generator> target = layer(cube, cube.n_minus);
  std::sort(target.begin(), target.end(), [](const Generator& a, const Generator& b) {
    return a.q != b.q ? a.q < b.q : a.index < b.index;
  });
  std::vector<int> position(cube.dimension(), -1);
  for (std::size_t p = 0; p < target.size(); ++p) position[target[p].index] = static_cast<int>(p);

  // s_o = product over circles of a = v_- + v_+ or b = v_- - v_+
  std::vector<Term> so;
  for (std::uint32_t m = 0; m < (1u << nc); ++m) {
    int sign = 1;
    for (int c = 0; c < nc; ++c)
      if (colour[c] == 1 && !((m >> c) & 1)) sign = -sign;
    so.push_back({cube.offset[vo] + m, sign});
  }

  std::vector<Generator> source;
  if (cube.n_minus > 0) source = layer(cube, cube.n_minus - 1);
  std::unordered_map<std::uint32_t, std::vector<std::vector<Term>>> images;
  for (const auto& g : source)
    if (!images.count(g.v)) images.emplace(g.v, vertex_images(cube, g.v, true));

  int q_of_class[4] = {INT32_MAX, INT32_MAX, INT32_MAX, INT32_MAX};
#pragma omp parallel for schedule(dynamic)
  for (int cls = 0; cls < 4; ++cls) {
    std::vector<Term> part;
    for (auto t : so)
      if (mod4(cube.quantum(vo, static_cast<std::uint32_t>(t.first - cube.offset[vo]))) == cls)
        part.push_back(t);
    if (part.empty()) continue;
    int lead;
    try {
      lead = filtered_lead<SmallRational>(source, images, position, part, cls);
    } catch (const ArithmeticOverflow&) {
      lead = filtered_lead<Rational>(source, images, position, part, cls);
    }
    q_of_class[cls] = target[lead].q;
  }
  int s_min = *std::min_element(q_of_class, q_of_class + 4);
  return {s_min + 1, s_min, s_min + 2};
}

}  // namespace kb
