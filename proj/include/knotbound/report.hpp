#pragma once

// Per-diagram invariant bundle, its JSON form, and comparison against corpus
// annotations.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "knotbound/bounds.hpp"
#include "knotbound/corpus.hpp"
#include "knotbound/diagram.hpp"
#include "knotbound/khovanov.hpp"

namespace kb {

struct ReportOptions {
  int kh_ceiling = 14;
  int bracket_ceiling = 16;
  bool compute_s = true;
  bool compute_jones = true;
};

struct DLResult {
  std::string invariant;
  int lower = 0;
  int upper = 0;
  std::string value;  // interval text
  bool pass = false;
  bool operator==(const DLResult&) const = default;
};

struct InvariantReport {
  std::string name;
  std::string pd;
  int crossings = 0;
  int components = 1;
  int n_plus = 0, n_minus = 0;
  int writhe = 0;
  std::optional<int> s_A, s_B;
  std::optional<int> turaev_genus;  // of this diagram
  std::optional<std::int64_t> det;
  std::optional<int> sigma;
  std::optional<int> s;
  std::optional<std::string> jones;  // in t, exponents in half-units printed as t^(k/2)
  std::vector<DLResult> dl;
  std::optional<std::string> theorem_b_bound;
  bool theorem_b_violated = false;
  std::map<std::string, std::string> skipped;  // field -> reason

  // g_T(D) from the listed state counts; nullopt when a count is missing.
  std::optional<int> genus_from_counts() const;
  bool any_violation() const;

  std::string to_json() const;
  static InvariantReport from_json(const std::string& text);
  bool operator==(const InvariantReport&) const = default;
};

InvariantReport compute_report(const Diagram& d, const std::string& name, const ReportOptions& opt = {});

// One line per field, aligned; used by `invariants` without --json.
std::string format_report(const InvariantReport& r);

struct AnnotationMismatch {
  std::string key;
  std::string annotated;
  std::string computed;
};

// Exact keys (signature, determinant, s, alternating) must agree. The
// annotated turaev_genus is of the knot, so only g_T(D) >= annotated is
// checked. Fields the report skipped are not compared.
std::vector<AnnotationMismatch> check_annotations(const CorpusEntry& e, const InvariantReport& r);

}  // namespace kb
