#pragma once

// Oriented link diagrams stored as PD codes.
//
// Each crossing is a 4-tuple of arc labels read counterclockwise starting at
// the incoming under-strand. A crossing is positive iff its over-strand runs
// from the 4th entry to the 2nd. Orientation follows from the under-strand
// rule, propagated along each component; a component that never passes under
// is oriented by arc-label succession.
//
// Internally every crossing owns four "ends" numbered 4*i + position; an arc
// joins two ends. Derived operations (smoothing, sums, untwisting) go through
// RawDiagram and are relabelled deterministically by assemble().

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kb {

enum class Smoothing : std::uint8_t { A, B };

struct ArcCycle {
  int component = 0;
  std::vector<int> arcs;  // labels in traversal order
};

// Unlabelled diagram used while building derived diagrams. Slots 0 and 2 of
// every crossing are the under-strand; the slot order is counterclockwise.
struct RawDiagram {
  int crossings = 0;
  std::vector<int> partner;      // 4*crossings
  std::vector<int> hint_label;   // relabel priority per end (smaller first)
  std::vector<char> hint_in;     // preferred "incoming" flag per end
  std::vector<int> origin;       // caller-defined id per crossing
  std::vector<int> loop_hints;   // one entry per crossing-free loop
};

class Diagram {
 public:
  Diagram();  // the 0-crossing unknot

  static Diagram parse(std::string_view text);
  static Diagram from_tuples(std::vector<std::array<int, 4>> crossings,
                             std::vector<int> loops = {});

  // Canonical PD text; parse(serialize()) reproduces the same code.
  std::string serialize() const;

  int crossing_count() const { return static_cast<int>(x_.size()); }
  const std::vector<std::array<int, 4>>& crossings() const { return x_; }
  const std::vector<int>& loops() const { return loops_; }
  int arc_count() const { return static_cast<int>(arc_labels_.size()); }

  int component_count() const { return static_cast<int>(cycles_.size()); }
  const std::vector<ArcCycle>& components() const { return cycles_; }

  const std::vector<int>& signs() const { return signs_; }
  int sign(int i) const { return signs_.at(i); }
  int n_plus() const;
  int n_minus() const;
  int writhe() const { return n_plus() - n_minus(); }

  // End-level access: end = 4*crossing + position.
  int partner(int end) const { return partner_[end]; }
  bool incoming(int end) const { return incoming_[end] != 0; }
  int arc_of_end(int end) const { return arc_of_end_[end]; }  // 0..arc_count-1
  int arc_label(int arc) const { return arc_labels_[arc]; }
  int component_of_arc(int arc) const { return arc_component_[arc]; }
  // Outgoing end at which the arc starts, incoming end where it stops.
  int arc_tail(int arc) const { return arc_tail_[arc]; }
  int arc_head(int arc) const { return arc_head_[arc]; }

  // One planar piece: the 4-valent graph is connected and, when crossings
  // exist, there are no crossing-free loops.
  bool is_connected() const;
  bool is_alternating() const;
  bool is_positive() const { return n_minus() == 0; }
  bool is_negative() const { return n_plus() == 0; }

  RawDiagram raw() const;

  bool operator==(const Diagram& o) const { return x_ == o.x_ && loops_ == o.loops_; }

 private:
  void derive();

  std::vector<std::array<int, 4>> x_;
  std::vector<int> loops_;

  std::vector<int> partner_;
  std::vector<char> incoming_;
  std::vector<int> arc_of_end_;
  std::vector<int> arc_labels_;
  std::vector<int> arc_tail_;
  std::vector<int> arc_head_;
  std::vector<int> arc_component_;
  std::vector<int> signs_;
  std::vector<ArcCycle> cycles_;
};

// Relabels a raw diagram: components ordered by their smallest hint, each
// oriented by the hint of its smallest-hint end, labels consecutive along the
// traversal. Crossing order is preserved.
Diagram assemble(const RawDiagram& raw);

struct Resolved {
  Diagram diagram;
  std::vector<int> new_index;  // old crossing -> new crossing, -1 if removed
};

// Smooths every crossing with a value in `choice`; others are kept.
// Resulting components are re-oriented per assemble().
Resolved resolve(const Diagram& d, std::span<const std::optional<Smoothing>> choice);

Diagram smooth(const Diagram& d, int crossing, Smoothing kind);
Smoothing oriented_smoothing(int sign);
Diagram oriented_resolution(const Diagram& d, int crossing);
Diagram mirror(const Diagram& d);

// Connected sum of two knot diagrams at the given arc labels (default: the
// lowest-numbered arc of each).
Diagram connected_sum(const Diagram& d1, const Diagram& d2,
                      std::optional<int> arc1 = std::nullopt,
                      std::optional<int> arc2 = std::nullopt);

// A crossing is nugatory when removing it disconnects the 4-valent graph.
bool is_nugatory(const Diagram& d, int crossing);

struct Untwist {
  Diagram diagram;
  std::vector<int> new_index;
  int flipped = 0;  // crossings on the side that was turned over
};

// Removes a nugatory crossing by turning over one side of it. Throws
// InvariantError when the crossing is not nugatory.
Untwist untwist(const Diagram& d, int crossing);

// Crossing with an arc joining two of its own slots.
bool is_kink(const Diagram& d, int crossing);

// Crossings i and j bound a bigon face whose two sides each pass over (or
// under) at both ends, i.e. a Reidemeister-II pair.
bool is_r2_pair(const Diagram& d, int i, int j);

// Pulls the two strands of a Reidemeister-II pair apart. Throws InputError
// when (i, j) is not such a pair.
Resolved remove_bigon(const Diagram& d, int i, int j);

// Adds a Reidemeister-I curl on the given arc (sign +1/-1, curl on the left
// or right of the arc). Produces another diagram of the same link.
Diagram add_kink(const Diagram& d, int arc_label, int sign, bool under_first);

struct PretzelSpec {
  int p = 1;
  int q = 1;
};

// Pretzel link with the given twist counts, one vertical twist column each.
Diagram pretzel(std::span<const int> twists);
// K_{p,q} = P(2p+1, -2q-1, 2), p >= q >= 1.
Diagram pretzel(const PretzelSpec& spec);
// Closure of the positive braid (s_1 ... s_{p-1})^q.
Diagram torus_knot(int p, int q);

// g copies of a knot diagram joined at the default sites.
Diagram connected_power(const Diagram& d, int copies);

}  // namespace kb
