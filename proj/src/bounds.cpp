#include "knotbound/bounds.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <mutex>
#include <numeric>
#include <queue>
#include <random>
#include <sstream>

#include "json.hpp"

#include "knotbound/classical.hpp"
#include "knotbound/error.hpp"
#include "knotbound/khovanov.hpp"
#include "knotbound/turaev.hpp"

namespace kb {

using nlohmann::json;

namespace {

mpq_class abs_q(const mpq_class& v) { return sgn(v) < 0 ? mpq_class(-v) : v; }

// Distance between two intervals and the largest distance between points.
mpq_class gap(const Interval& a, const Interval& b) {
  mpq_class d = 0;
  if (a.lo > b.hi) d = a.lo - b.hi;
  if (b.lo > a.hi) d = b.lo - a.hi;
  return d;
}

mpq_class spread(const Interval& a, const Interval& b) {
  return std::max(abs_q(a.hi - b.lo), abs_q(b.hi - a.lo));
}

mpq_class parse_rational(const json& v) {
  if (v.is_number_integer()) return mpq_class(v.get<long>());
  if (v.is_string()) {
    mpq_class q;
    if (q.set_str(v.get<std::string>(), 10) != 0) throw InputError("bad rational '" + v.get<std::string>() + "'");
    q.canonicalize();
    return q;
  }
  throw InputError("injected values must be integers or rational strings");
}

json rational_json(const mpq_class& v) {
  if (v.get_den() == 1 && v.get_num().fits_slong_p()) return v.get_num().get_si();
  return v.get_str();
}

int ceil_q(const mpq_class& v) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
  return static_cast<int>(r.get_si());
}

}  // namespace

Interval Interval::scaled(const mpq_class& k) const { return {lo * k, hi * k}; }

std::string to_string(const Interval& v) {
  if (v.is_point()) return v.lo.get_str();
  return "[" + v.lo.get_str() + ", " + v.hi.get_str() + "]";
}

// ---------------------------------------------------------------- injected data

InjectedTable InjectedTable::parse(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("injected data is not JSON: ") + e.what());
  }
  const json& list = j.is_object() ? j.at("records") : j;
  if (!list.is_array()) throw InputError("injected data must be a list of records");
  InjectedTable t;
  std::size_t k = 0;
  for (const auto& r : list) {
    ++k;
    try {
      InjectedRecord rec;
      rec.knot = r.at("knot").get<std::string>();
      rec.invariant = r.at("invariant").get<std::string>();
      rec.citation = r.value("citation", std::string());
      const json& v = r.at("value");
      if (v.is_array()) {
        if (v.size() != 2) throw InputError("interval needs two endpoints");
        rec.value = {parse_rational(v[0]), parse_rational(v[1])};
        if (rec.value.lo > rec.value.hi) throw InputError("interval endpoints out of order");
      } else {
        rec.value = Interval::point(parse_rational(v));
      }
      t.add(std::move(rec));
    } catch (const json::exception& e) {
      throw InputError("injected record " + std::to_string(k) + ": " + e.what());
    } catch (const InputError& e) {
      throw InputError("injected record " + std::to_string(k) + ": " + e.what());
    }
  }
  return t;
}

InjectedTable InjectedTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open injected data file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void InjectedTable::add(InjectedRecord r) {
  if (r.citation.empty()) throw InputError("record for " + r.knot + " has no citation");
  auto key = std::make_pair(r.knot, r.invariant);
  if (index_.count(key)) throw InputError("duplicate record " + r.knot + "/" + r.invariant);
  index_[key] = records_.size();
  records_.push_back(std::move(r));
}

const InjectedRecord* InjectedTable::find(const std::string& knot,
                                          const std::string& invariant) const {
  auto it = index_.find({knot, invariant});
  return it == index_.end() ? nullptr : &records_[it->second];
}

std::string InjectedTable::to_json() const {
  json list = json::array();
  for (const auto& r : records_) {
    json v = r.value.is_point() ? rational_json(r.value.lo)
                                : json::array({rational_json(r.value.lo), rational_json(r.value.hi)});
    list.push_back({{"knot", r.knot}, {"invariant", r.invariant}, {"value", v}, {"citation", r.citation}});
  }
  return json{{"records", list}}.dump(2);
}

std::string sn_normalized_name(int n) { return "s_n_normalized(" + std::to_string(n) + ")"; }

// ---------------------------------------------------------------- DL sources

DLSource DLSource::s_invariant(int ceiling) {
  DLSource src;
  src.name_ = "s";
  // s is the expensive one; sweeps ask for the same diagram more than once
  auto cache = std::make_shared<std::pair<std::mutex, std::map<std::string, int>>>();
  src.eval_ = [ceiling, cache](const Diagram& d, const std::string&) -> std::optional<Interval> {
    if (d.component_count() != 1 || d.crossing_count() > ceiling) return std::nullopt;
    const std::string key = d.serialize();
    {
      std::lock_guard lock(cache->first);
      if (auto it = cache->second.find(key); it != cache->second.end())
        return Interval::point(it->second);
    }
    int s = kb::s_invariant(d, ceiling).s;
    std::lock_guard lock(cache->first);
    cache->second[key] = s;
    return Interval::point(s);
  };
  return src;
}

DLSource DLSource::neg_signature() {
  DLSource src;
  src.name_ = "neg_sigma";
  src.eval_ = [](const Diagram& d, const std::string&) -> std::optional<Interval> {
    return Interval::point(-signature(d));
  };
  return src;
}

DLSource DLSource::injected(const std::string& invariant, const InjectedTable* table) {
  if (!table) throw InputError("injected source needs a table");
  DLSource src;
  src.name_ = invariant;
  src.mode_ = Mode::Injected;
  src.table_ = table;
  src.eval_ = [invariant, table](const Diagram&, const std::string& knot) -> std::optional<Interval> {
    const InjectedRecord* r = table->find(knot, invariant);
    if (!r) return std::nullopt;
    return r->value;
  };
  return src;
}

std::optional<Interval> DLSource::evaluate(const Diagram& d, const std::string& knot) const {
  return eval_(d, knot);
}

std::string DLSource::citation(const std::string& knot) const {
  if (mode_ == Mode::Computed) return "computed";
  const InjectedRecord* r = table_->find(knot, name_);
  return r ? r->citation : "";
}

// ---------------------------------------------------------------- reduction

ReductionResult reduce_positive(const Diagram& d, TreeChoice choice) {
  if (!d.is_connected()) throw SplitDiagramError("reduction needs a connected diagram");
  const int n = d.crossing_count();
  ReductionResult res;
  if (n == 0) {
    res.gamma_vertices = 1;
    res.connected = res.reduced = d;
    return res;
  }

  // Gamma: pieces of the diagram after resolving every positive crossing.
  const int na = d.arc_count();
  std::vector<int> parent(na);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
  for (int i = 0; i < n; ++i) {
    auto arc = [&](int s) { return d.arc_of_end(4 * i + s); };
    unite(arc(0), arc(1));
    unite(arc(2), arc(3));
    if (d.sign(i) < 0) unite(arc(0), arc(2));
  }
  std::vector<int> vid(na, -1);
  for (int a = 0; a < na; ++a) {
    int r = find(a);
    if (vid[r] < 0) vid[r] = res.gamma_vertices++;
    vid[a] = vid[r];
  }
  for (int i = 0; i < n; ++i)
    if (d.sign(i) > 0)
      res.gamma_edges.push_back({i, vid[d.arc_of_end(4 * i)], vid[d.arc_of_end(4 * i + 2)]});

  // Spanning tree: BFS from the vertex holding the lowest arc, or Kruskal
  // over a shuffled edge list.
  std::vector<char> in_tree(n, 0);
  if (choice.random) {
    std::vector<GammaEdge> edges = res.gamma_edges;
    std::mt19937_64 rng(choice.seed);
    std::shuffle(edges.begin(), edges.end(), rng);
    std::vector<int> comp(res.gamma_vertices);
    std::iota(comp.begin(), comp.end(), 0);
    auto root = [&](int x) {
      while (comp[x] != x) x = comp[x] = comp[comp[x]];
      return x;
    };
    for (const auto& e : edges) {
      int a = root(e.u), b = root(e.v);
      if (a == b) continue;
      comp[a] = b;
      in_tree[e.crossing] = 1;
    }
  } else {
    std::vector<std::vector<std::pair<int, int>>> adj(res.gamma_vertices);
    for (const auto& e : res.gamma_edges) {
      adj[e.u].push_back({e.v, e.crossing});
      adj[e.v].push_back({e.u, e.crossing});
    }
    std::vector<char> seen(res.gamma_vertices, 0);
    std::queue<int> q;
    q.push(vid[0]);
    seen[vid[0]] = 1;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (auto [w, c] : adj[u])
        if (!seen[w]) {
          seen[w] = 1;
          in_tree[c] = 1;
          q.push(w);
        }
    }
  }
  for (int i = 0; i < n; ++i)
    if (in_tree[i]) res.tree.push_back(i);
  if (static_cast<int>(res.tree.size()) != res.gamma_vertices - 1)
    throw InvariantError("Gamma of a connected diagram is disconnected");

  std::vector<std::optional<Smoothing>> resolve_at(n);
  for (int i = 0; i < n; ++i)
    if (d.sign(i) > 0 && !in_tree[i]) resolve_at[i] = Smoothing::A;
  Resolved r = resolve(d, resolve_at);
  res.connected = r.diagram;
  res.band_count = d.n_plus() - static_cast<int>(res.tree.size());
  if (!res.connected.is_connected()) throw InvariantError("resolved diagram is not connected");

  // Untwist leaf edges of the tree first.
  std::vector<int> current(n, -1);  // input crossing -> index in the working diagram
  for (int i = 0; i < n; ++i) current[i] = r.new_index[i];
  std::vector<int> degree(res.gamma_vertices, 0);
  std::vector<GammaEdge> pending;
  for (const auto& e : res.gamma_edges)
    if (in_tree[e.crossing]) {
      pending.push_back(e);
      degree[e.u]++;
      degree[e.v]++;
    }
  Diagram work = res.connected;
  int steps = 0;
  while (!pending.empty()) {
    if (++steps > n) throw InvariantError("untwisting did not terminate");
    auto it = std::find_if(pending.begin(), pending.end(),
                           [&](const GammaEdge& e) { return degree[e.u] == 1 || degree[e.v] == 1; });
    if (it == pending.end()) throw InvariantError("spanning tree has no leaf");
    GammaEdge e = *it;
    pending.erase(it);
    degree[e.u]--;
    degree[e.v]--;
    int c = current[e.crossing];
    if (c < 0 || !is_nugatory(work, c)) throw InvariantError("tree crossing is not nugatory");
    Untwist u = untwist(work, c);
    res.trace.push_back({e.crossing, u.flipped});
    for (int i = 0; i < n; ++i)
      if (current[i] >= 0) current[i] = u.new_index[current[i]];
    work = std::move(u.diagram);
  }
  res.reduced = std::move(work);
  if (!res.reduced.is_negative() || !res.reduced.is_connected())
    throw InvariantError("reduction did not produce a connected negative diagram");
  return res;
}

ReductionResult reduce_negative(const Diagram& d, TreeChoice choice) {
  ReductionResult res = reduce_positive(mirror(d), choice);
  res.connected = mirror(res.connected);
  res.reduced = mirror(res.reduced);
  res.band_count = d.n_minus() - static_cast<int>(res.tree.size());
  return res;
}

// ---------------------------------------------------------------- DL checks

DLBoundCheck dl_knot_bounds(const Diagram& d, const DLSource& nu, const std::string& knot) {
  if (!d.is_connected()) throw SplitDiagramError("DL bounds need a connected diagram");
  auto v = nu.evaluate(d, knot);
  if (!v) throw MissingDataError("no value of " + nu.name() + " for " + (knot.empty() ? d.serialize() : knot));
  DLBoundCheck c;
  c.invariant = nu.name();
  c.lower = s_B(d) - d.n_minus() - 1;
  c.upper = 1 + d.n_plus() - s_A(d);
  c.value = *v;
  c.margin_low = c.value.lo - c.lower;
  c.margin_high = c.upper - c.value.hi;
  c.pass = sgn(c.margin_low) >= 0 && sgn(c.margin_high) >= 0;
  return c;
}

DLBoundCheck dl_axiom2_check(const Diagram& d, const DLSource& nu, const std::string& knot) {
  if (!d.is_positive() && !d.is_negative())
    throw InputError("axiom (2) applies to positive or negative diagrams only");
  return dl_knot_bounds(d, nu, knot);
}

// ---------------------------------------------------------------- Theorem B

BoundReport theorem_b_bound(const std::map<std::string, Interval>& values,
                            std::span<const Diagram> diagrams) {
  if (values.size() < 2) throw InputError("Theorem B bound needs at least two invariant values");
  BoundReport rep;
  rep.bound = 0;
  for (auto a = values.begin(); a != values.end(); ++a)
    for (auto b = std::next(a); b != values.end(); ++b) {
      PairBound pb{a->first, b->first, gap(a->second, b->second) / 2,
                   spread(a->second, b->second) / 2};
      rep.bound = std::max(rep.bound, pb.guaranteed);
      rep.pairs.push_back(std::move(pb));
    }
  if (!diagrams.empty()) {
    rep.diagram_genus = diagram_genus_upper_bound(diagrams);
    rep.violated = rep.bound > *rep.diagram_genus;
  }
  return rep;
}

// ---------------------------------------------------------------- Theorem A

std::string pretzel_name(int p, int q) {
  return "K_{" + std::to_string(p) + "," + std::to_string(q) + "}";
}

TheoremAReport theorem_a_bookkeeping(int g, int p, int q, const InjectedTable& injected,
                                     int kh_ceiling, std::optional<int> s_summand) {
  if (g < 1) throw InputError("g must be positive");
  TheoremAReport rep;
  rep.g = g;
  rep.p = p;
  rep.q = q;
  const Diagram k = pretzel(PretzelSpec{p, q});
  const std::string name = pretzel_name(p, q);
  if (s_summand) {
    rep.s_summand = *s_summand;
    rep.s_from_khovanov = true;
  } else if (k.crossing_count() <= kh_ceiling) {
    rep.s_summand = kb::s_invariant(k, kh_ceiling).s;
    rep.s_from_khovanov = true;
  } else {
    rep.s_summand = -signature(k);
  }
  // s and s_n/(1-n) are additive, so the sum's values scale by g.
  const Interval mu = Interval::point(mpq_class(g * rep.s_summand));
  const std::string prefix = "s_n_normalized(";
  for (const auto& r : injected.records()) {
    if (r.knot != name || r.invariant.rfind(prefix, 0) != 0) continue;
    int n = std::stoi(r.invariant.substr(prefix.size()));
    mpq_class b = gap(mu, r.value.scaled(g)) / 2;
    rep.finite_n.push_back({n, b, ceil_q(b)});
    rep.integer_lower_bound = std::max(rep.integer_lower_bound, ceil_q(b));
  }
  std::sort(rep.finite_n.begin(), rep.finite_n.end(),
            [](const FiniteNBound& a, const FiniteNBound& b) { return a.n < b.n; });
  if (const InjectedRecord* lim = injected.find(name, kLimsupSnOverN)) {
    // s_n/(1-n) and -s_n/n share their limit
    mpq_class b = gap(mu, (-lim->value).scaled(g)) / 2;
    rep.limit_bound = b;
    rep.integer_lower_bound = std::max(rep.integer_lower_bound, ceil_q(b));
  }
  const Diagram sum = connected_power(k, g);
  rep.diagram_genus = turaev_genus_diagram(sum);
  rep.sigma_only_bound = abs_q(mpq_class(g * rep.s_summand + signature(sum))) / 2;
  rep.certified = rep.integer_lower_bound == rep.diagram_genus;
  return rep;
}

std::string to_string(CorollaryStatus s) {
  switch (s) {
    case CorollaryStatus::Equality: return "equality";
    case CorollaryStatus::Consistent: return "consistent";
    case CorollaryStatus::Inconclusive: return "inconclusive";
    case CorollaryStatus::Violation: return "violation";
  }
  return "?";
}

CorollaryReport corollary_c_check(const std::string& knot, int s,
                                  std::span<const Diagram> diagrams,
                                  const InjectedTable& injected) {
  CorollaryReport rep;
  const InjectedRecord* lim = injected.find(knot, kLimsupSnOverN);
  if (!lim) {
    rep.note = "no injected limsup of s_n/n for " + knot;
    return rep;
  }
  if (diagrams.empty()) {
    rep.note = "no diagram available for an upper bound";
    return rep;
  }
  rep.diagram_genus = diagram_genus_upper_bound(diagrams);
  Interval lhs{lim->value.lo + s, lim->value.hi + s};
  rep.lhs = lhs;
  Interval mag{gap(lhs, Interval::point(0)), std::max(abs_q(lhs.lo), abs_q(lhs.hi))};
  const mpq_class twice_g = 2 * rep.diagram_genus;
  if (mag.lo > twice_g) {
    rep.status = CorollaryStatus::Violation;
    rep.note = "|s + limsup| exceeds twice the diagram genus";
  } else if (mag.is_point() && mag.lo == twice_g) {
    rep.status = CorollaryStatus::Equality;
    rep.note = "lower bound meets the diagram genus; limit value is the cited one";
  } else {
    rep.status = CorollaryStatus::Consistent;
    rep.note = "diagram genus is only an upper bound; equality not established";
  }
  return rep;
}

}  // namespace kb
