#include "knotbound/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <map>
#include <numeric>
#include <queue>

#include "knotbound/error.hpp"

namespace kb {

namespace {

// ---------------------------------------------------------------- parsing

class PdParser {
 public:
  explicit PdParser(std::string_view s) : s_(s) {}

  void parse(std::vector<std::array<int, 4>>& xs, std::vector<int>& loops) {
    skip();
    expect('P');
    expect('D');
    skip();
    expect('[');
    skip();
    if (peek() == ']') {
      ++pos_;
    } else {
      while (true) {
        skip();
        char c = next();
        if (c == 'X') {
          skip();
          expect('[');
          std::array<int, 4> t{};
          for (int k = 0; k < 4; ++k) {
            if (k) expect_sep(',');
            t[k] = integer();
          }
          expect_sep(']');
          xs.push_back(t);
        } else if (c == 'U') {
          skip();
          expect('[');
          loops.push_back(integer());
          expect_sep(']');
        } else {
          fail("expected X[...] or U[...]");
        }
        skip();
        char d = next();
        if (d == ']') break;
        if (d != ',') fail("expected ',' or ']'");
      }
    }
    skip();
    if (pos_ != s_.size()) fail("trailing characters");
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("PD parse error at offset " + std::to_string(pos_) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char next() {
    if (pos_ >= s_.size()) fail("unexpected end of input");
    return s_[pos_++];
  }
  void expect(char c) {
    if (next() != c) {
      --pos_;
      fail(std::string("expected '") + c + "'");
    }
  }
  void expect_sep(char c) {
    skip();
    expect(c);
    skip();
  }
  int integer() {
    skip();
    std::size_t start = pos_;
    long long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      if (v > INT_MAX / 2) fail("arc label too large");
      ++pos_;
    }
    if (pos_ == start) fail("expected a positive integer");
    if (v <= 0) fail("arc labels must be positive");
    return static_cast<int>(v);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

constexpr int through(int end) { return end ^ 2; }

// Mate of a slot when a crossing is removed.
enum class Mate : int { Keep = -1, A = 0, B = 1, Through = 2 };

int mate_slot(Mate m, int s) {
  switch (m) {
    case Mate::A: return s ^ 1;
    case Mate::B: return 3 - s;
    case Mate::Through: return s ^ 2;
    default: return s;
  }
}

struct Removal {
  RawDiagram raw;
  std::vector<int> new_index;
};

Removal remove_crossings(const RawDiagram& r, const std::vector<Mate>& kind) {
  const int n = r.crossings;
  Removal out;
  out.new_index.assign(n, -1);
  int kept = 0;
  for (int i = 0; i < n; ++i)
    if (kind[i] == Mate::Keep) out.new_index[i] = kept++;

  RawDiagram& nr = out.raw;
  nr.crossings = kept;
  nr.partner.assign(4 * kept, -1);
  nr.hint_label.assign(4 * kept, 0);
  nr.hint_in.assign(4 * kept, 0);
  nr.origin.assign(kept, 0);
  nr.loop_hints = r.loop_hints;

  auto map_end = [&](int e) { return 4 * out.new_index[e / 4] + e % 4; };
  auto is_kept = [&](int e) { return kind[e / 4] == Mate::Keep; };
  std::vector<char> visited(4 * n, 0);

  for (int i = 0; i < n; ++i) {
    if (!is_kept(4 * i)) continue;
    nr.origin[out.new_index[i]] = r.origin.empty() ? i : r.origin[i];
    for (int s = 0; s < 4; ++s) {
      int u = 4 * i + s;
      nr.hint_label[map_end(u)] = r.hint_label[u];
      nr.hint_in[map_end(u)] = r.hint_in[u];
      int w = r.partner[u];
      while (!is_kept(w)) {
        visited[w] = 1;
        int m = 4 * (w / 4) + mate_slot(kind[w / 4], w % 4);
        visited[m] = 1;
        w = r.partner[m];
      }
      nr.partner[map_end(u)] = map_end(w);
    }
  }

  for (int w0 = 0; w0 < 4 * n; ++w0) {
    if (is_kept(w0) || visited[w0]) continue;
    int hint = INT_MAX;
    int w = w0;
    do {
      int m = 4 * (w / 4) + mate_slot(kind[w / 4], w % 4);
      visited[w] = visited[m] = 1;
      hint = std::min({hint, r.hint_label[w], r.hint_label[m]});
      w = r.partner[m];
    } while (w != w0);
    nr.loop_hints.push_back(hint);
  }
  return out;
}

// Side classes of the rays at crossing c once c is deleted.
std::array<int, 4> ray_classes(const Diagram& d, int c) {
  const int n = d.crossing_count();
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (int s = 0; s < 4; ++s) {
    int far = d.partner(4 * c + s) / 4;
    if (far == c || comp[far] >= 0) continue;
    std::queue<int> q;
    q.push(far);
    comp[far] = ncomp;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int t = 0; t < 4; ++t) {
        int w = d.partner(4 * v + t) / 4;
        if (w == c || comp[w] >= 0) continue;
        comp[w] = ncomp;
        q.push(w);
      }
    }
    ++ncomp;
  }
  std::array<int, 4> parent{0, 1, 2, 3};
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a];
    return a;
  };
  auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
  for (int s = 0; s < 4; ++s) {
    int pe = d.partner(4 * c + s);
    if (pe / 4 == c) {
      unite(s, pe % 4);
      continue;
    }
    for (int t = 0; t < s; ++t) {
      int qe = d.partner(4 * c + t);
      if (qe / 4 != c && comp[qe / 4] == comp[pe / 4]) unite(s, t);
    }
  }
  std::array<int, 4> cls{};
  for (int s = 0; s < 4; ++s) cls[s] = find(s);
  return cls;
}

std::vector<int> crossings_behind(const Diagram& d, int c, std::span<const int> slots) {
  const int n = d.crossing_count();
  std::vector<char> seen(n, 0);
  std::vector<int> out;
  std::queue<int> q;
  for (int s : slots) {
    int far = d.partner(4 * c + s) / 4;
    if (far != c && !seen[far]) {
      seen[far] = 1;
      q.push(far);
    }
  }
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    out.push_back(v);
    for (int t = 0; t < 4; ++t) {
      int w = d.partner(4 * v + t) / 4;
      if (w == c || seen[w]) continue;
      seen[w] = 1;
      q.push(w);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

class RawBuilder {
 public:
  enum Dir { NE = 0, NW = 1, SW = 2, SE = 3 };

  // Over-strand along SW-NE when `over_sw_ne`, else along SE-NW.
  int add(bool over_sw_ne) {
    int c = raw_.crossings++;
    types_.push_back(over_sw_ne);
    for (int s = 0; s < 4; ++s) {
      raw_.partner.push_back(-1);
      raw_.hint_label.push_back(4 * c + s + 1);
      raw_.hint_in.push_back(s == 0);
    }
    raw_.origin.push_back(c);
    return c;
  }

  // Slot orders counterclockwise from an under-strand ray:
  //   over SW-NE: SE, NE, NW, SW     over SE-NW: SW, SE, NE, NW
  int end(int c, Dir dir) const {
    static constexpr int kPos[2][4] = {
        /* over SE-NW */ {2, 3, 0, 1},
        /* over SW-NE */ {1, 2, 3, 0},
    };
    return 4 * c + kPos[types_[c] ? 1 : 0][dir];
  }

  void connect(int e1, int e2) {
    raw_.partner[e1] = e2;
    raw_.partner[e2] = e1;
  }

  RawDiagram& raw() { return raw_; }

 private:
  RawDiagram raw_;
  std::vector<bool> types_;
};

}  // namespace

// ---------------------------------------------------------------- Diagram

Diagram::Diagram() : loops_{1} { derive(); }

Diagram Diagram::parse(std::string_view text) {
  std::vector<std::array<int, 4>> xs;
  std::vector<int> loops;
  PdParser(text).parse(xs, loops);
  if (xs.empty() && loops.empty()) loops.push_back(1);
  return from_tuples(std::move(xs), std::move(loops));
}

Diagram Diagram::from_tuples(std::vector<std::array<int, 4>> crossings, std::vector<int> loops) {
  Diagram d;
  d.x_ = std::move(crossings);
  d.loops_ = std::move(loops);
  if (d.x_.empty() && d.loops_.empty()) d.loops_.push_back(1);
  d.derive();
  return d;
}

std::string Diagram::serialize() const {
  std::string s = "PD[";
  bool first = true;
  for (const auto& t : x_) {
    if (!first) s += ',';
    first = false;
    s += "X[" + std::to_string(t[0]) + ',' + std::to_string(t[1]) + ',' +
         std::to_string(t[2]) + ',' + std::to_string(t[3]) + ']';
  }
  bool bare_unknot = x_.empty() && loops_.size() == 1 && loops_[0] == 1;
  if (!bare_unknot) {
    for (int u : loops_) {
      if (!first) s += ',';
      first = false;
      s += "U[" + std::to_string(u) + ']';
    }
  }
  s += ']';
  return s;
}

int Diagram::n_plus() const {
  return static_cast<int>(std::count(signs_.begin(), signs_.end(), 1));
}

int Diagram::n_minus() const {
  return static_cast<int>(std::count(signs_.begin(), signs_.end(), -1));
}

void Diagram::derive() {
  const int n = crossing_count();
  std::map<int, std::vector<int>> where;
  for (int i = 0; i < n; ++i)
    for (int s = 0; s < 4; ++s) where[x_[i][s]].push_back(4 * i + s);
  for (const auto& [label, ends] : where)
    if (ends.size() != 2)
      throw InputError("arc label " + std::to_string(label) + " appears " +
                       std::to_string(ends.size()) + " times");
  {
    std::vector<int> ls = loops_;
    std::sort(ls.begin(), ls.end());
    for (std::size_t k = 0; k < ls.size(); ++k) {
      if (ls[k] <= 0) throw InputError("loop labels must be positive");
      if ((k && ls[k] == ls[k - 1]) || where.count(ls[k]))
        throw InputError("loop label " + std::to_string(ls[k]) + " is not unique");
    }
  }

  partner_.assign(4 * n, -1);
  arc_of_end_.assign(4 * n, -1);
  arc_labels_.clear();
  for (const auto& [label, ends] : where) {
    int a = static_cast<int>(arc_labels_.size());
    arc_labels_.push_back(label);
    partner_[ends[0]] = ends[1];
    partner_[ends[1]] = ends[0];
    arc_of_end_[ends[0]] = arc_of_end_[ends[1]] = a;
  }
  const int na = static_cast<int>(arc_labels_.size());

  incoming_.assign(4 * n, 0);
  arc_tail_.assign(na, -1);
  arc_head_.assign(na, -1);
  arc_component_.assign(na, -1);
  std::vector<char> seen(4 * n, 0);
  struct Pending {
    int min_label;
    std::vector<int> outs;  // outgoing ends in traversal order
  };
  std::vector<Pending> comps;

  for (int e0 = 0; e0 < 4 * n; ++e0) {
    if (seen[e0]) continue;
    std::vector<int> outs;
    int agree = 0, disagree = 0;
    int o = e0;
    do {
      int in = partner_[o];
      seen[o] = seen[in] = 1;
      outs.push_back(o);
      // tentative: o outgoing, in incoming
      for (int e : {o, in}) {
        int pos = e % 4;
        if (pos % 2 != 0) continue;
        bool want_in = pos == 0;
        bool is_in = e == in;
        (want_in == is_in ? agree : disagree)++;
      }
      o = through(in);
    } while (o != e0);

    bool reverse = false;
    if (agree && disagree)
      throw InputError("inconsistent orientation: under-strands disagree along a component");
    if (disagree) {
      reverse = true;
    } else if (!agree) {
      // Over-strands only: orient by arc-label succession.
      int fwd = 0, bwd = 0;
      const std::size_t m = outs.size();
      int lo = INT_MAX, hi = 0;
      for (int oe : outs) {
        lo = std::min(lo, x_[oe / 4][oe % 4]);
        hi = std::max(hi, x_[oe / 4][oe % 4]);
      }
      for (std::size_t k = 0; k < m; ++k) {
        int cur = x_[outs[k] / 4][outs[k] % 4];
        int nxt = x_[outs[(k + 1) % m] / 4][outs[(k + 1) % m] % 4];
        if (nxt == cur + 1 || (cur == hi && nxt == lo)) ++fwd;
        if (cur == nxt + 1 || (nxt == hi && cur == lo)) ++bwd;
      }
      reverse = bwd > fwd;
    }
    if (reverse) {
      std::vector<int> rev;
      for (auto it = outs.rbegin(); it != outs.rend(); ++it) rev.push_back(partner_[*it]);
      outs = std::move(rev);
    }
    int min_label = INT_MAX;
    for (int oe : outs) {
      incoming_[oe] = 0;
      incoming_[partner_[oe]] = 1;
      int a = arc_of_end_[oe];
      arc_tail_[a] = oe;
      arc_head_[a] = partner_[oe];
      min_label = std::min(min_label, arc_labels_[a]);
    }
    comps.push_back({min_label, std::move(outs)});
  }
  for (int u : loops_) comps.push_back({u, {}});
  std::sort(comps.begin(), comps.end(),
            [](const Pending& a, const Pending& b) { return a.min_label < b.min_label; });

  cycles_.clear();
  for (std::size_t c = 0; c < comps.size(); ++c) {
    ArcCycle cyc;
    cyc.component = static_cast<int>(c);
    if (comps[c].outs.empty()) {
      cyc.arcs.push_back(comps[c].min_label);
    } else {
      const auto& outs = comps[c].outs;
      std::size_t start = 0;
      for (std::size_t k = 0; k < outs.size(); ++k)
        if (arc_labels_[arc_of_end_[outs[k]]] == comps[c].min_label) start = k;
      for (std::size_t k = 0; k < outs.size(); ++k) {
        int a = arc_of_end_[outs[(start + k) % outs.size()]];
        arc_component_[a] = static_cast<int>(c);
        cyc.arcs.push_back(arc_labels_[a]);
      }
    }
    cycles_.push_back(std::move(cyc));
  }

  signs_.assign(n, 0);
  for (int i = 0; i < n; ++i) signs_[i] = incoming_[4 * i + 3] ? 1 : -1;

  // Planarity: every piece with k crossings must have k + 2 faces.
  std::vector<int> piece(n);
  std::iota(piece.begin(), piece.end(), 0);
  auto root = [&](int v) {
    while (piece[v] != v) v = piece[v] = piece[piece[v]];
    return v;
  };
  for (int e = 0; e < 4 * n; ++e) piece[root(e / 4)] = root(partner_[e] / 4);
  int pieces = 0;
  for (int i = 0; i < n; ++i) pieces += root(i) == i;
  std::vector<char> corner_seen(4 * n, 0);
  int faces = 0;
  for (int c0 = 0; c0 < 4 * n; ++c0) {
    if (corner_seen[c0]) continue;
    ++faces;
    for (int c = c0; !corner_seen[c]; c = partner_[4 * (c / 4) + (c % 4 + 1) % 4]) corner_seen[c] = 1;
  }
  if (faces != n + 2 * pieces)
    throw InputError("PD code is not planar (" + std::to_string(faces) + " faces, expected " +
                     std::to_string(n + 2 * pieces) + ")");
}

bool Diagram::is_connected() const {
  const int n = crossing_count();
  if (n == 0) return loops_.size() == 1;
  if (!loops_.empty()) return false;
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int s = 0; s < 4; ++s) {
      int w = partner_[4 * v + s] / 4;
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == n;
}

bool Diagram::is_alternating() const {
  for (const auto& cyc : cycles_) {
    if (cyc.arcs.size() < 2) continue;
    std::vector<bool> over;
    for (int label : cyc.arcs) {
      auto it = std::lower_bound(arc_labels_.begin(), arc_labels_.end(), label);
      int head = arc_head_[it - arc_labels_.begin()];
      over.push_back(head % 2 == 1);
    }
    for (std::size_t k = 0; k < over.size(); ++k)
      if (over[k] == over[(k + 1) % over.size()]) return false;
  }
  return true;
}

RawDiagram Diagram::raw() const {
  RawDiagram r;
  const int n = crossing_count();
  r.crossings = n;
  r.partner = partner_;
  r.hint_label.resize(4 * n);
  r.hint_in.resize(4 * n);
  r.origin.resize(n);
  std::iota(r.origin.begin(), r.origin.end(), 0);
  for (int e = 0; e < 4 * n; ++e) {
    r.hint_label[e] = arc_labels_[arc_of_end_[e]];
    r.hint_in[e] = incoming_[e];
  }
  r.loop_hints = loops_;
  return r;
}

// ---------------------------------------------------------------- assemble

Diagram assemble(const RawDiagram& r) {
  const int n = r.crossings;
  struct Comp {
    int key;
    int tiebreak;
    std::vector<int> outs;  // empty for loops
  };
  std::vector<Comp> comps;
  std::vector<char> seen(4 * n, 0);
  for (int e0 = 0; e0 < 4 * n; ++e0) {
    if (seen[e0]) continue;
    if (r.partner[e0] < 0) throw InvariantError("raw diagram has a dangling end");
    std::vector<int> outs;
    int best = e0;
    int o = e0;
    do {
      int in = r.partner[o];
      seen[o] = seen[in] = 1;
      outs.push_back(o);
      for (int e : {o, in})
        if (r.hint_label[e] < r.hint_label[best] ||
            (r.hint_label[e] == r.hint_label[best] && e < best))
          best = e;
      o = through(in);
    } while (o != e0);
    bool best_is_in = std::find(outs.begin(), outs.end(), best) == outs.end();
    if (best_is_in != static_cast<bool>(r.hint_in[best])) {
      std::vector<int> rev;
      for (auto it = outs.rbegin(); it != outs.rend(); ++it) rev.push_back(r.partner[*it]);
      outs = std::move(rev);
    }
    // rotate so the arc carrying `best` comes first
    auto it = std::find_if(outs.begin(), outs.end(),
                           [&](int oe) { return oe == best || r.partner[oe] == best; });
    std::rotate(outs.begin(), it, outs.end());
    comps.push_back({r.hint_label[best], best, std::move(outs)});
  }
  for (std::size_t k = 0; k < r.loop_hints.size(); ++k)
    comps.push_back({r.loop_hints[k], 4 * n + static_cast<int>(k), {}});
  std::sort(comps.begin(), comps.end(), [](const Comp& a, const Comp& b) {
    return a.key != b.key ? a.key < b.key : a.tiebreak < b.tiebreak;
  });

  std::vector<int> label(4 * n, 0);
  std::vector<char> is_in(4 * n, 0);
  std::vector<int> loops;
  int next = 1;
  for (const auto& c : comps) {
    if (c.outs.empty()) {
      loops.push_back(next++);
      continue;
    }
    for (int oe : c.outs) {
      label[oe] = label[r.partner[oe]] = next++;
      is_in[r.partner[oe]] = 1;
    }
  }
  std::vector<std::array<int, 4>> xs(n);
  for (int i = 0; i < n; ++i) {
    int s0 = is_in[4 * i] ? 0 : 2;
    for (int k = 0; k < 4; ++k) xs[i][k] = label[4 * i + (s0 + k) % 4];
  }
  return Diagram::from_tuples(std::move(xs), std::move(loops));
}

// ---------------------------------------------------------------- operations

Resolved resolve(const Diagram& d, std::span<const std::optional<Smoothing>> choice) {
  if (static_cast<int>(choice.size()) != d.crossing_count())
    throw InputError("resolution choice length does not match crossing count");
  std::vector<Mate> kind(choice.size(), Mate::Keep);
  for (std::size_t i = 0; i < choice.size(); ++i)
    if (choice[i]) kind[i] = *choice[i] == Smoothing::A ? Mate::A : Mate::B;
  Removal rm = remove_crossings(d.raw(), kind);
  return {assemble(rm.raw), std::move(rm.new_index)};
}

Diagram smooth(const Diagram& d, int crossing, Smoothing kind) {
  if (crossing < 0 || crossing >= d.crossing_count())
    throw InputError("crossing index " + std::to_string(crossing) + " out of range");
  std::vector<std::optional<Smoothing>> choice(d.crossing_count());
  choice[crossing] = kind;
  return resolve(d, choice).diagram;
}

Smoothing oriented_smoothing(int sign) { return sign > 0 ? Smoothing::A : Smoothing::B; }

Diagram oriented_resolution(const Diagram& d, int crossing) {
  if (crossing < 0 || crossing >= d.crossing_count())
    throw InputError("crossing index " + std::to_string(crossing) + " out of range");
  return smooth(d, crossing, oriented_smoothing(d.sign(crossing)));
}

Diagram mirror(const Diagram& d) {
  std::vector<std::array<int, 4>> xs;
  xs.reserve(d.crossing_count());
  for (int i = 0; i < d.crossing_count(); ++i) {
    const auto& t = d.crossings()[i];
    if (d.sign(i) > 0)
      xs.push_back({t[3], t[0], t[1], t[2]});
    else
      xs.push_back({t[1], t[2], t[3], t[0]});
  }
  return Diagram::from_tuples(std::move(xs), d.loops());
}

Diagram connected_sum(const Diagram& d1, const Diagram& d2, std::optional<int> arc1,
                      std::optional<int> arc2) {
  if (d1.component_count() != 1 || d2.component_count() != 1)
    throw InputError("connected sum is defined here for knot diagrams only");
  if (d2.crossing_count() == 0) return d1;
  if (d1.crossing_count() == 0) return d2;

  auto arc_index = [](const Diagram& d, std::optional<int> label) {
    int want = label.value_or(d.arc_label(0));
    for (int a = 0; a < d.arc_count(); ++a)
      if (d.arc_label(a) == want) return a;
    throw InputError("arc " + std::to_string(want) + " not present in diagram");
  };
  int a1 = arc_index(d1, arc1);
  int a2 = arc_index(d2, arc2);

  RawDiagram r = d1.raw();
  RawDiagram r2 = d2.raw();
  const int n1 = d1.crossing_count();
  int offset = 0;
  for (int a = 0; a < d1.arc_count(); ++a) offset = std::max(offset, d1.arc_label(a));
  r.crossings += r2.crossings;
  for (int e = 0; e < 4 * r2.crossings; ++e) {
    r.partner.push_back(r2.partner[e] + 4 * n1);
    r.hint_label.push_back(r2.hint_label[e] + offset);
    r.hint_in.push_back(r2.hint_in[e]);
  }
  for (int o : r2.origin) r.origin.push_back(o + n1);
  r.loop_hints.clear();

  int t1 = d1.arc_tail(a1), h1 = d1.arc_head(a1);
  int t2 = d2.arc_tail(a2) + 4 * n1, h2 = d2.arc_head(a2) + 4 * n1;
  r.partner[t1] = h2;
  r.partner[h2] = t1;
  r.partner[t2] = h1;
  r.partner[h1] = t2;
  return assemble(r);
}

bool is_nugatory(const Diagram& d, int crossing) {
  if (crossing < 0 || crossing >= d.crossing_count())
    throw InputError("crossing index out of range");
  auto cls = ray_classes(d, crossing);
  return !(cls[0] == cls[1] && cls[1] == cls[2] && cls[2] == cls[3]);
}

Untwist untwist(const Diagram& d, int c) {
  if (!is_nugatory(d, c)) throw InvariantError("crossing is not nugatory");
  auto cls = ray_classes(d, c);
  // planar nugatory crossings split the rays into two adjacent pairs
  int p = (cls[0] == cls[1]) ? 0 : 1;
  if (cls[p] != cls[(p + 1) % 4] || cls[(p + 2) % 4] != cls[(p + 3) % 4] ||
      cls[p] == cls[(p + 2) % 4])
    throw InvariantError("nugatory crossing without adjacent ray pairs (non-planar code?)");
  std::array<int, 2> side1{p, (p + 1) % 4};
  std::array<int, 2> side2{(p + 2) % 4, (p + 3) % 4};
  auto behind1 = crossings_behind(d, c, side1);
  auto behind2 = crossings_behind(d, c, side2);
  const auto& flip = behind1.size() <= behind2.size() ? behind1 : behind2;

  RawDiagram r = d.raw();
  const int n = r.crossings;
  std::vector<int> perm(4 * n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int v : flip)
    for (int s = 0; s < 4; ++s) perm[4 * v + s] = 4 * v + (3 - s);
  RawDiagram f = r;
  for (int e = 0; e < 4 * n; ++e) {
    f.partner[perm[e]] = perm[r.partner[e]];
    f.hint_label[perm[e]] = r.hint_label[e];
    f.hint_in[perm[e]] = r.hint_in[e];
  }
  std::vector<Mate> kind(n, Mate::Keep);
  kind[c] = Mate::Through;
  Removal rm = remove_crossings(f, kind);
  return {assemble(rm.raw), std::move(rm.new_index), static_cast<int>(flip.size())};
}

bool is_kink(const Diagram& d, int crossing) {
  if (crossing < 0 || crossing >= d.crossing_count())
    throw InputError("crossing index out of range");
  for (int s = 0; s < 4; ++s)
    if (d.partner(4 * crossing + s) / 4 == crossing) return true;
  return false;
}

bool is_r2_pair(const Diagram& d, int i, int j) {
  const int n = d.crossing_count();
  if (i < 0 || j < 0 || i >= n || j >= n) throw InputError("crossing index out of range");
  if (i == j) return false;
  for (int k = 0; k < 4; ++k) {
    // corner k at i: leave along ray k+1, arrive at (j, r), return along r+1
    int out = 4 * i + (k + 1) % 4;
    int e = d.partner(out);
    if (e / 4 != j) continue;
    int r = e % 4;
    if (d.partner(4 * j + (r + 1) % 4) != 4 * i + k) continue;
    if ((out % 2) == (r % 2)) return true;
  }
  return false;
}

Resolved remove_bigon(const Diagram& d, int i, int j) {
  if (!is_r2_pair(d, i, j))
    throw InputError("crossings " + std::to_string(i) + " and " + std::to_string(j) +
                     " are not a Reidemeister-II pair");
  std::vector<Mate> kind(d.crossing_count(), Mate::Keep);
  kind[i] = kind[j] = Mate::Through;
  Removal rm = remove_crossings(d.raw(), kind);
  return {assemble(rm.raw), std::move(rm.new_index)};
}

Diagram add_kink(const Diagram& d, int arc_label, int sign, bool under_first) {
  const bool bare = d.crossing_count() == 0;
  if (bare && d.component_count() != 1) throw InputError("add_kink needs a single loop");
  int a = -1;
  for (int k = 0; k < d.arc_count(); ++k)
    if (d.arc_label(k) == arc_label) a = k;
  if (!bare && a < 0)
    throw InputError("arc " + std::to_string(arc_label) + " not present in diagram");

  RawDiagram r = d.raw();
  const int c = r.crossings++;
  for (int s = 0; s < 4; ++s) {
    r.partner.push_back(-1);
    r.hint_label.push_back(INT_MAX / 2);
    r.hint_in.push_back(0);
  }
  r.origin.push_back(c);
  // (entry slot, loop start, loop end, exit slot); over runs 3->1 iff positive
  std::array<int, 4> path;
  if (sign > 0)
    path = under_first ? std::array<int, 4>{0, 2, 3, 1} : std::array<int, 4>{3, 1, 0, 2};
  else
    path = under_first ? std::array<int, 4>{0, 2, 1, 3} : std::array<int, 4>{1, 3, 0, 2};
  if (bare) r.loop_hints.clear();
  auto link = [&](int e1, int e2) {
    r.partner[e1] = e2;
    r.partner[e2] = e1;
  };
  int in = 4 * c + path[0], l0 = 4 * c + path[1], l1 = 4 * c + path[2], out = 4 * c + path[3];
  link(l0, l1);
  if (bare) {
    link(out, in);
  } else {
    link(d.arc_tail(a), in);
    link(out, d.arc_head(a));
  }
  r.hint_in[in] = 1;
  r.hint_in[l1] = 1;
  return assemble(r);
}

Diagram pretzel(std::span<const int> twists) {
  if (twists.empty()) throw InputError("pretzel needs at least one twist column");
  RawBuilder b;
  struct Column {
    int top, bottom;
  };
  std::vector<Column> cols;
  for (int t : twists) {
    if (t == 0) throw InputError("pretzel twist counts must be nonzero");
    // positive twist counts stack crossings whose over-strand runs SW-NE;
    // this makes K_{p,q} have negative signature
    bool over_sw_ne = t > 0;
    int first = -1, prev = -1;
    for (int k = 0; k < std::abs(t); ++k) {
      int c = b.add(over_sw_ne);
      if (prev >= 0) {
        b.connect(b.end(prev, RawBuilder::NW), b.end(c, RawBuilder::SW));
        b.connect(b.end(prev, RawBuilder::NE), b.end(c, RawBuilder::SE));
      } else {
        first = c;
      }
      prev = c;
    }
    cols.push_back({prev, first});
  }
  const std::size_t m = cols.size();
  for (std::size_t k = 0; k < m; ++k) {
    const auto& cur = cols[k];
    const auto& nxt = cols[(k + 1) % m];
    b.connect(b.end(cur.top, RawBuilder::NE), b.end(nxt.top, RawBuilder::NW));
    b.connect(b.end(cur.bottom, RawBuilder::SE), b.end(nxt.bottom, RawBuilder::SW));
  }
  return assemble(b.raw());
}

Diagram pretzel(const PretzelSpec& spec) {
  if (spec.q < 1 || spec.p < spec.q)
    throw InputError("pretzel K_{p,q} requires p >= q >= 1");
  const std::array<int, 3> twists{2 * spec.p + 1, -2 * spec.q - 1, 2};
  return pretzel(twists);
}

Diagram torus_knot(int p, int q) {
  if (p < 2 || q < 2 || std::gcd(p, q) != 1)
    throw InputError("torus_knot needs coprime p, q >= 2");
  RawBuilder b;
  std::vector<int> top(p, -1), bottom(p, -1);
  auto attach = [&](int pos, int lower_end) {
    if (top[pos] < 0)
      bottom[pos] = lower_end;
    else
      b.connect(top[pos], lower_end);
  };
  for (int rep = 0; rep < q; ++rep) {
    for (int i = 0; i + 1 < p; ++i) {
      int c = b.add(true);
      attach(i, b.end(c, RawBuilder::SW));
      attach(i + 1, b.end(c, RawBuilder::SE));
      top[i] = b.end(c, RawBuilder::NW);
      top[i + 1] = b.end(c, RawBuilder::NE);
    }
  }
  for (int k = 0; k < p; ++k) b.connect(top[k], bottom[k]);
  return assemble(b.raw());
}

Diagram connected_power(const Diagram& d, int copies) {
  if (copies < 1) throw InputError("connected_power needs at least one copy");
  Diagram out = d;
  for (int k = 1; k < copies; ++k) out = connected_sum(out, d);
  return out;
}

}  // namespace kb
