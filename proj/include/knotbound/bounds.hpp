#pragma once

// DL-invariant checks, the spanning-tree reduction of a diagram to a
// connected negative one, and the Turaev genus lower bounds built on them.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "knotbound/diagram.hpp"

namespace kb {

// Exact closed interval; a point value has lo == hi.
struct Interval {
  mpq_class lo;
  mpq_class hi;

  static Interval point(const mpq_class& v) { return {v, v}; }
  bool is_point() const { return lo == hi; }
  bool contains(const mpq_class& v) const { return lo <= v && v <= hi; }
  Interval operator-() const { return {-hi, -lo}; }
  Interval scaled(const mpq_class& k) const;  // k >= 0
  bool operator==(const Interval& o) const { return lo == o.lo && hi == o.hi; }
};

std::string to_string(const Interval& v);

struct InjectedRecord {
  std::string knot;
  std::string invariant;
  Interval value;
  std::string citation;
};

// Read-only table of literature values. Every record needs a citation.
class InjectedTable {
 public:
  static InjectedTable parse(const std::string& json_text);
  static InjectedTable load(const std::string& path);
  void add(InjectedRecord r);
  const InjectedRecord* find(const std::string& knot, const std::string& invariant) const;
  const std::vector<InjectedRecord>& records() const { return records_; }
  std::string to_json() const;

 private:
  std::vector<InjectedRecord> records_;
  std::map<std::pair<std::string, std::string>, std::size_t> index_;
};

// Name of the injected record holding s_n/(1-n) at a fixed n.
std::string sn_normalized_name(int n);
inline constexpr const char* kLimsupSnOverN = "limsup_s_n_over_n";

class DLSource {
 public:
  enum class Mode { Computed, Injected };

  static DLSource s_invariant(int ceiling = 14);
  static DLSource neg_signature();
  // Looks `invariant` up by knot name; mirrors are not inferred.
  static DLSource injected(const std::string& invariant, const InjectedTable* table);

  const std::string& name() const { return name_; }
  Mode mode() const { return mode_; }

  // nullopt when the value is unavailable (missing record, ceiling exceeded).
  std::optional<Interval> evaluate(const Diagram& d, const std::string& knot) const;
  std::string citation(const std::string& knot) const;

 private:
  std::string name_;
  Mode mode_ = Mode::Computed;
  std::function<std::optional<Interval>(const Diagram&, const std::string&)> eval_;
  const InjectedTable* table_ = nullptr;
};

// ---- spanning-tree reduction

struct GammaEdge {
  int crossing;  // index in the input diagram
  int u, v;      // Gamma vertices
};

struct UntwistStep {
  int crossing;  // index in the input diagram
  int flipped;   // crossings turned over
};

struct ReductionResult {
  int gamma_vertices = 0;
  std::vector<GammaEdge> gamma_edges;
  std::vector<int> tree;       // input crossings forming the spanning tree
  Diagram connected;           // all non-tree crossings of the positive kind resolved
  Diagram reduced;             // after untwisting every tree crossing
  std::vector<UntwistStep> trace;
  int band_count = 0;          // resolved crossings = bands of the cobordism
};

struct TreeChoice {
  bool random = false;
  std::uint64_t seed = 0;
};

// Output diagram is connected and negative.
ReductionResult reduce_positive(const Diagram& d, TreeChoice choice = {});
// Dual: output is connected and positive (conjugated by mirror).
ReductionResult reduce_negative(const Diagram& d, TreeChoice choice = {});

// ---- DL axiom checks

struct DLBoundCheck {
  std::string invariant;
  int lower = 0;  // s_B - n_- - 1
  int upper = 0;  // 1 + n_+ - s_A
  Interval value;
  bool pass = false;
  mpq_class margin_low;   // value.lo - lower
  mpq_class margin_high;  // upper - value.hi
};

// Axiom (2): only for positive or negative connected diagrams.
DLBoundCheck dl_axiom2_check(const Diagram& d, const DLSource& nu, const std::string& knot = "");
// The same two-sided bound for an arbitrary connected knot diagram.
DLBoundCheck dl_knot_bounds(const Diagram& d, const DLSource& nu, const std::string& knot = "");

// ---- Theorem B

struct PairBound {
  std::string mu, nu;
  mpq_class guaranteed;  // min of |mu - nu| / 2 over the intervals
  mpq_class worst;       // max of the same
};

struct BoundReport {
  std::vector<PairBound> pairs;
  mpq_class bound;  // best guaranteed lower bound for g_T(K)
  std::optional<int> diagram_genus;
  bool violated = false;
};

BoundReport theorem_b_bound(const std::map<std::string, Interval>& values,
                            std::span<const Diagram> diagrams);

// ---- Theorem A and the additivity corollary

struct FiniteNBound {
  int n;
  mpq_class guaranteed;  // lower bound on g_T from s and s_n at this n
  int integer_bound;     // its ceiling
};

struct TheoremAReport {
  int g = 0, p = 0, q = 0;
  int s_summand = 0;                  // s(K_{p,q})
  bool s_from_khovanov = false;       // false: taken as -sigma (quasi-alternating path)
  std::vector<FiniteNBound> finite_n;
  std::optional<mpq_class> limit_bound;  // from the injected limsup
  int integer_lower_bound = 0;
  int diagram_genus = 0;              // of the constructed sum
  mpq_class sigma_only_bound;         // |s - (-sigma)| / 2 for the sum
  bool certified = false;             // lower bound meets the diagram genus
};

std::string pretzel_name(int p, int q);

// `s_summand`, when given, must be a Khovanov-computed s(K_{p,q}) (saves
// recomputing it for every g).
TheoremAReport theorem_a_bookkeeping(int g, int p, int q, const InjectedTable& injected,
                                     int kh_ceiling = 14, std::optional<int> s_summand = std::nullopt);

enum class CorollaryStatus { Equality, Consistent, Inconclusive, Violation };
std::string to_string(CorollaryStatus s);

struct CorollaryReport {
  CorollaryStatus status = CorollaryStatus::Inconclusive;
  std::optional<Interval> lhs;  // s + limsup s_n/n
  int diagram_genus = 0;
  std::string note;
};

// s must be exact; the limsup comes from injected data for `knot`.
CorollaryReport corollary_c_check(const std::string& knot, int s,
                                  std::span<const Diagram> diagrams,
                                  const InjectedTable& injected);

}  // namespace kb
