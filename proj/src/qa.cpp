#include "knotbound/qa.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "json.hpp"
#include "knotbound/classical.hpp"
#include "knotbound/error.hpp"

namespace kb {

using nlohmann::json;

// ---------------------------------------------------------------- moves

Resolved apply_move(const Diagram& d, const SimplifyMove& m) {
  const int n = d.crossing_count();
  auto in_range = [&](int i) { return i >= 0 && i < n; };
  switch (m.kind) {
    case SimplifyMove::Kind::R1:
      if (!in_range(m.a) || !is_kink(d, m.a)) throw InputError("R1 move on a crossing that is not a kink");
      [[fallthrough]];
    case SimplifyMove::Kind::Untwist: {
      if (!in_range(m.a) || !is_nugatory(d, m.a))
        throw InputError("untwist on a crossing that is not nugatory");
      Untwist u = untwist(d, m.a);
      return {std::move(u.diagram), std::move(u.new_index)};
    }
    case SimplifyMove::Kind::R2:
      if (!in_range(m.a) || !in_range(m.b)) throw InputError("R2 move index out of range");
      return remove_bigon(d, m.a, m.b);
  }
  throw InputError("unknown move");
}

Diagram replay(const Diagram& d, const SimplificationTrace& trace) {
  Diagram cur = d;
  for (const auto& m : trace) cur = apply_move(cur, m).diagram;
  return cur;
}

namespace {

std::optional<SimplifyMove> find_move(const Diagram& d) {
  const int n = d.crossing_count();
  for (int i = 0; i < n; ++i)
    if (is_kink(d, i)) return SimplifyMove{SimplifyMove::Kind::R1, i};
  for (int i = 0; i < n; ++i)
    if (is_nugatory(d, i)) return SimplifyMove{SimplifyMove::Kind::Untwist, i};
  for (int i = 0; i < n; ++i)
    for (int s = 0; s < 4; ++s) {
      int j = d.partner(4 * i + s) / 4;
      if (j > i && is_r2_pair(d, i, j)) return SimplifyMove{SimplifyMove::Kind::R2, i, j};
    }
  return std::nullopt;
}

bool is_unknot_leaf(const Diagram& d) { return d.crossing_count() == 0 && d.component_count() == 1; }

}  // namespace

Simplified simplify(const Diagram& d) {
  Simplified s{d, {}};
  while (auto m = find_move(s.diagram)) {
    s.diagram = apply_move(s.diagram, *m).diagram;
    s.trace.push_back(*m);
  }
  return s;
}

std::int64_t link_determinant(const Diagram& d) {
  if (!d.is_connected()) return 0;
  return determinant(d);
}

std::string canonical_key(const Diagram& d) {
  const int n = d.crossing_count();
  if (n == 0) return "L" + std::to_string(d.loops().size());
  const int na = d.arc_count();
  std::string best;
  for (int start = 0; start < na; ++start) {
    std::vector<int> label(na, -1);
    int next = 1;
    auto walk = [&](int a) {
      // follow orientation: head end -> pass-through end is the next tail
      while (label[a] < 0) {
        label[a] = next++;
        a = d.arc_of_end(d.arc_head(a) ^ 2);
      }
    };
    walk(start);
    // remaining components: first unlabelled arc met scanning crossings in
    // order of their smallest label
    while (next <= na) {
      std::vector<std::pair<int, int>> order;
      for (int i = 0; i < n; ++i) {
        int lo = INT32_MAX;
        for (int s = 0; s < 4; ++s)
          if (label[d.arc_of_end(4 * i + s)] > 0) lo = std::min(lo, label[d.arc_of_end(4 * i + s)]);
        if (lo != INT32_MAX) order.push_back({lo, i});
      }
      std::sort(order.begin(), order.end());
      int pick = -1;
      for (auto [lo, i] : order) {
        for (int s = 0; s < 4 && pick < 0; ++s)
          if (label[d.arc_of_end(4 * i + s)] < 0) pick = d.arc_of_end(4 * i + s);
        if (pick >= 0) break;
      }
      if (pick < 0) break;  // disconnected diagram: rest keeps input order
      walk(pick);
    }
    for (int a = 0; a < na; ++a)
      if (label[a] < 0) walk(a);
    std::vector<std::array<int, 4>> xs(n);
    for (int i = 0; i < n; ++i)
      for (int s = 0; s < 4; ++s) xs[i][s] = label[d.arc_of_end(4 * i + s)];
    std::sort(xs.begin(), xs.end());
    std::string key;
    for (const auto& x : xs)
      key += std::to_string(x[0]) + "," + std::to_string(x[1]) + "," + std::to_string(x[2]) + "," +
             std::to_string(x[3]) + ";";
    key += "L" + std::to_string(d.loops().size());
    if (best.empty() || key < best) best = std::move(key);
  }
  return best;
}

// ---------------------------------------------------------------- search

namespace {

struct BudgetExceeded {};

class Search {
 public:
  Search(QACertificate& cert, const QABudget& budget) : cert_(cert), budget_(budget) {}

  // Node index, or -1 when this diagram could not be certified.
  int certify(const Diagram& d, int depth) {
    if (++explored_ > budget_.max_nodes) throw BudgetExceeded{};
    const std::string pd = d.serialize();
    if (auto it = done_.find(pd); it != done_.end()) return it->second;
    const std::string key = canonical_key(d);
    if (failed_.count(key)) return -1;

    QANode node;
    node.pd = pd;
    node.det = link_determinant(d);
    if (node.det == 0) return fail(key);
    Simplified s = simplify(d);
    node.trace = s.trace;
    if (is_unknot_leaf(s.diagram)) return finish(std::move(node));
    if (node.det == 1) {
      hit_limit_ = true;  // unknot recognition beyond R1/R2 is out of reach
      return -1;
    }
    if (depth >= budget_.max_depth) {
      hit_limit_ = true;
      return -1;
    }

    const Diagram& base = s.diagram;
    const int n = base.crossing_count();
    std::vector<std::array<std::int64_t, 2>> dets(n);
#pragma omp parallel for schedule(dynamic)
    for (int c = 0; c < n; ++c) {
      dets[c][0] = link_determinant(smooth(base, c, Smoothing::A));
      dets[c][1] = link_determinant(smooth(base, c, Smoothing::B));
    }
    std::vector<int> order;
    for (int c = 0; c < n; ++c)
      if (dets[c][0] >= 1 && dets[c][1] >= 1 && dets[c][0] + dets[c][1] == node.det)
        order.push_back(c);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
      return dets[x][0] * dets[x][1] > dets[y][0] * dets[y][1];
    });
    bool limited_before = hit_limit_;
    hit_limit_ = false;
    bool any_limit = false;
    for (int c : order) {
      int a = certify(smooth(base, c, Smoothing::A), depth + 1);
      int b = a >= 0 ? certify(smooth(base, c, Smoothing::B), depth + 1) : -1;
      if (a >= 0 && b >= 0) {
        node.crossing = c;
        node.children = {a, b};
        hit_limit_ = limited_before;
        return finish(std::move(node));
      }
      any_limit = any_limit || hit_limit_;
      hit_limit_ = false;
    }
    hit_limit_ = limited_before || any_limit;
    if (!any_limit) return fail(key);
    return -1;
  }

  std::int64_t explored() const { return explored_; }
  bool hit_limit() const { return hit_limit_; }

 private:
  int finish(QANode node) {
    int idx = static_cast<int>(cert_.nodes.size());
    done_[node.pd] = idx;
    cert_.nodes.push_back(std::move(node));
    return idx;
  }

  int fail(const std::string& key) {
    failed_.insert(key);
    return -1;
  }

  QACertificate& cert_;
  QABudget budget_;
  std::int64_t explored_ = 0;
  bool hit_limit_ = false;
  std::map<std::string, int> done_;
  std::set<std::string> failed_;
};

// Moves node `root` to index 0, keeping child links valid.
void move_root_first(QACertificate& cert, int root) {
  if (root == 0) return;
  const int n = static_cast<int>(cert.nodes.size());
  std::vector<int> to(n);
  for (int i = 0; i < n; ++i) to[i] = i == root ? 0 : (i < root ? i + 1 : i);
  std::vector<QANode> out(n);
  for (int i = 0; i < n; ++i) {
    QANode node = std::move(cert.nodes[i]);
    for (int& c : node.children)
      if (c >= 0) c = to[c];
    out[to[i]] = std::move(node);
  }
  cert.nodes = std::move(out);
}

}  // namespace

std::string to_string(QAStatus s) {
  switch (s) {
    case QAStatus::Certified: return "certified";
    case QAStatus::Exhausted: return "exhausted";
    case QAStatus::Refuted: return "refuted";
  }
  return "?";
}

QAResult qa_certify(const Diagram& d, const QABudget& budget) {
  if (budget.max_nodes <= 0 || budget.max_depth <= 0) throw InputError("QA budget must be positive");
  QAResult res;
  if (!d.is_connected()) {
    res.status = QAStatus::Refuted;
    res.reason = "split diagram: determinant 0";
    return res;
  }
  if (link_determinant(d) == 0) {
    res.status = QAStatus::Refuted;
    res.reason = "determinant 0";
    return res;
  }
  QACertificate cert;
  Search search(cert, budget);
  int root = -1;
  try {
    root = search.certify(d, 0);
  } catch (const BudgetExceeded&) {
    res.nodes_explored = search.explored() - 1;
    res.reason = "node budget of " + std::to_string(budget.max_nodes) + " exhausted";
    return res;
  }
  res.nodes_explored = search.explored();
  if (root < 0) {
    res.reason = search.hit_limit() ? "depth limit or unrecognised unknot leaves"
                                    : "no crossing satisfies determinant additivity";
    return res;
  }
  move_root_first(cert, root);
  res.status = QAStatus::Certified;
  res.certificate = std::move(cert);
  return res;
}

// ---------------------------------------------------------------- verification

VerifyResult verify_certificate(const QACertificate& cert) {
  const int n = static_cast<int>(cert.nodes.size());
  if (n == 0) return {false, -1, "empty certificate"};
  std::vector<Diagram> traced(n);
  for (int i = 0; i < n; ++i) {
    const QANode& node = cert.nodes[i];
    try {
      Diagram d = Diagram::parse(node.pd);
      std::int64_t det = link_determinant(d);
      if (det != node.det)
        return {false, i, "recorded determinant " + std::to_string(node.det) + ", computed " + std::to_string(det)};
      if (det < 1) return {false, i, "determinant is zero"};
      traced[i] = replay(d, node.trace);
    } catch (const std::exception& e) {
      return {false, i, e.what()};
    }
  }
  for (int i = 0; i < n; ++i) {
    const QANode& node = cert.nodes[i];
    if (node.leaf()) {
      if (!is_unknot_leaf(traced[i])) return {false, i, "leaf does not simplify to the unknot"};
      continue;
    }
    if (node.crossing >= traced[i].crossing_count()) return {false, i, "crossing index out of range"};
    for (int k = 0; k < 2; ++k) {
      int c = node.children[k];
      if (c < 0 || c >= n) return {false, i, "missing child"};
      Diagram s = smooth(traced[i], node.crossing, k == 0 ? Smoothing::A : Smoothing::B);
      if (s.serialize() != cert.nodes[c].pd) return {false, i, "child is not the smoothing"};
    }
    if (cert.nodes[node.children[0]].det + cert.nodes[node.children[1]].det != node.det)
      return {false, i, "determinants are not additive"};
  }
  return {true, -1, "ok"};
}

// ---------------------------------------------------------------- JSON

namespace {

const char* move_name(SimplifyMove::Kind k) {
  switch (k) {
    case SimplifyMove::Kind::R1: return "R1";
    case SimplifyMove::Kind::Untwist: return "untwist";
    case SimplifyMove::Kind::R2: return "R2";
  }
  return "?";
}

}  // namespace

std::string QACertificate::to_json() const {
  json list = json::array();
  for (const auto& node : nodes) {
    json trace = json::array();
    for (const auto& m : node.trace) {
      json c = m.kind == SimplifyMove::Kind::R2 ? json::array({m.a, m.b}) : json::array({m.a});
      trace.push_back({{"move", move_name(m.kind)}, {"crossings", c}});
    }
    json j{{"pd", node.pd}, {"det", node.det}, {"trace", trace}};
    if (!node.leaf()) {
      j["crossing"] = node.crossing;
      j["children"] = {node.children[0], node.children[1]};
    }
    list.push_back(std::move(j));
  }
  return json{{"root", 0}, {"nodes", list}}.dump(1);
}

QACertificate QACertificate::from_json(const std::string& text) {
  QACertificate cert;
  try {
    json j = json::parse(text);
    if (j.value("root", 0) != 0) throw InputError("certificate root must be node 0");
    for (const auto& jn : j.at("nodes")) {
      QANode node;
      node.pd = jn.at("pd").get<std::string>();
      node.det = jn.at("det").get<std::int64_t>();
      for (const auto& jm : jn.value("trace", json::array())) {
        SimplifyMove m;
        std::string name = jm.at("move").get<std::string>();
        const auto& c = jm.at("crossings");
        if (name == "R1")
          m.kind = SimplifyMove::Kind::R1;
        else if (name == "untwist")
          m.kind = SimplifyMove::Kind::Untwist;
        else if (name == "R2")
          m.kind = SimplifyMove::Kind::R2;
        else
          throw InputError("unknown move '" + name + "'");
        m.a = c.at(0).get<int>();
        if (m.kind == SimplifyMove::Kind::R2) m.b = c.at(1).get<int>();
        node.trace.push_back(m);
      }
      if (jn.contains("crossing")) {
        node.crossing = jn.at("crossing").get<int>();
        node.children = {jn.at("children").at(0).get<int>(), jn.at("children").at(1).get<int>()};
      }
      cert.nodes.push_back(std::move(node));
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed certificate: ") + e.what());
  }
  return cert;
}

// ---------------------------------------------------------------- composition

namespace {

struct TransportFailed {};

class Composer {
 public:
  Composer(const QACertificate& c1, const QACertificate& c2, const QABudget& budget)
      : certs_{&c1, &c2}, budget_(budget) {}

  // amap: crossing of the active certificate's node diagram -> crossing of x;
  // bmap: crossing of the second root diagram -> crossing of x (stage 0 only).
  int build(const Diagram& x, int stage, int n, std::vector<int> amap, std::vector<int> bmap) {
    const std::string pd = x.serialize();
    if (auto it = done_.find(pd); it != done_.end()) return it->second;
    try {
      return transported(x, stage, n, std::move(amap), std::move(bmap));
    } catch (const TransportFailed&) {
      ++fallbacks_;
      Search search(out_, budget_);
      int idx = -1;
      try {
        idx = search.certify(x, 0);
      } catch (const BudgetExceeded&) {
      }
      if (idx < 0) throw InvariantError("composition fallback could not certify " + pd);
      return idx;
    }
  }

  QACertificate& out() { return out_; }
  int fallbacks() const { return fallbacks_; }

 private:
  int transported(Diagram x, int stage, int n, std::vector<int> amap, std::vector<int> bmap) {
    QANode node;
    node.pd = x.serialize();
    node.det = link_determinant(x);
    while (true) {
      const QANode& cn = certs_[stage]->nodes.at(n);
      Diagram cur = Diagram::parse(cn.pd);
      for (const auto& m : cn.trace) {
        Resolved rc = apply_move(cur, m);
        SimplifyMove xm = m;
        xm.a = amap.at(m.a);
        if (m.kind == SimplifyMove::Kind::R2) xm.b = amap.at(m.b);
        if (xm.kind == SimplifyMove::Kind::R1 && !is_kink(x, xm.a)) xm.kind = SimplifyMove::Kind::Untwist;
        Resolved rx;
        try {
          rx = apply_move(x, xm);
        } catch (const InputError&) {
          throw TransportFailed{};
        }
        std::vector<int> next(rc.diagram.crossing_count(), -1);
        for (std::size_t i = 0; i < amap.size(); ++i)
          if (rc.new_index[i] >= 0) next[rc.new_index[i]] = rx.new_index[amap[i]];
        for (int& b : bmap) b = rx.new_index[b];
        amap = std::move(next);
        cur = std::move(rc.diagram);
        x = std::move(rx.diagram);
        node.trace.push_back(xm);
      }
      if (!cn.leaf()) {
        const int c = cn.crossing;
        node.crossing = amap.at(c);
        for (int k = 0; k < 2; ++k) {
          const Smoothing kind = k == 0 ? Smoothing::A : Smoothing::B;
          std::vector<std::optional<Smoothing>> pick_c(cur.crossing_count()), pick_x(x.crossing_count());
          pick_c[c] = kind;
          pick_x[node.crossing] = kind;
          Resolved rc = resolve(cur, pick_c);
          Resolved rx = resolve(x, pick_x);
          std::vector<int> child_a(rc.diagram.crossing_count(), -1);
          for (std::size_t i = 0; i < amap.size(); ++i)
            if (rc.new_index[i] >= 0) child_a[rc.new_index[i]] = rx.new_index[amap[i]];
          std::vector<int> child_b = bmap;
          for (int& b : child_b) b = rx.new_index[b];
          node.children[k] = build(rx.diagram, stage, cn.children[k], std::move(child_a), std::move(child_b));
        }
        return finish(std::move(node));
      }
      if (stage == 1 || x.crossing_count() == 0) {
        if (!is_unknot_leaf(x)) throw TransportFailed{};
        return finish(std::move(node));
      }
      // first summand is gone; continue with the second certificate here
      stage = 1;
      n = 0;
      amap = std::move(bmap);
      bmap.clear();
    }
  }

  int finish(QANode node) {
    int idx = static_cast<int>(out_.nodes.size());
    done_[node.pd] = idx;
    out_.nodes.push_back(std::move(node));
    return idx;
  }

  const QACertificate* certs_[2];
  QABudget budget_;
  QACertificate out_;
  std::map<std::string, int> done_;
  int fallbacks_ = 0;
};

}  // namespace

Composition compose_connected_sum(const QACertificate& c1, const QACertificate& c2,
                                  const QABudget& budget) {
  if (c1.nodes.empty() || c2.nodes.empty()) throw InputError("empty certificate");
  const Diagram d1 = Diagram::parse(c1.nodes[0].pd);
  const Diagram d2 = Diagram::parse(c2.nodes[0].pd);
  const Diagram x = connected_sum(d1, d2);
  const int n1 = d1.crossing_count(), n2 = d2.crossing_count();
  std::vector<int> amap(n1), bmap(n2);
  // an empty summand is dropped by connected_sum; crossing order is kept
  for (int i = 0; i < n1; ++i) amap[i] = i;
  for (int j = 0; j < n2; ++j) bmap[j] = n1 + j;
  Composer comp(c1, c2, budget);
  int root = comp.build(x, 0, 0, amap, bmap);
  Composition out{std::move(comp.out()), comp.fallbacks()};
  move_root_first(out.certificate, root);
  return out;
}

}  // namespace kb
