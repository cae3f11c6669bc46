#pragma once

// Bounded search for quasi-alternating certificates via the determinant
// recursion det(L) = det(L0) + det(L1), with greedy R1/R2 simplification to
// recognise unknot leaves.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "knotbound/diagram.hpp"

namespace kb {

struct SimplifyMove {
  // R1: remove a kink. Untwist: remove a nugatory crossing by turning one
  // side over. R2: pull apart a bigon.
  enum class Kind { R1, Untwist, R2 };
  Kind kind = Kind::R1;
  int a = 0;
  int b = -1;  // second crossing of an R2 move
  bool operator==(const SimplifyMove&) const = default;
};

using SimplificationTrace = std::vector<SimplifyMove>;

// Applies one move, checking that it is legal. new_index maps old crossings.
Resolved apply_move(const Diagram& d, const SimplifyMove& m);
Diagram replay(const Diagram& d, const SimplificationTrace& trace);

struct Simplified {
  Diagram diagram;
  SimplificationTrace trace;
};

// Greedy: kinks first, then nugatory crossings, then bigons, until none apply.
Simplified simplify(const Diagram& d);

// Determinant of the link; 0 for split (disconnected) diagrams.
std::int64_t link_determinant(const Diagram& d);

// Minimal serialisation over a deterministic family of relabelings.
std::string canonical_key(const Diagram& d);

struct QANode {
  std::string pd;
  std::int64_t det = 0;
  SimplificationTrace trace;         // applied to pd before choosing `crossing`
  int crossing = -1;                 // -1: the traced diagram is the unknot
  std::array<int, 2> children{-1, -1};  // A-smoothing, B-smoothing
  bool leaf() const { return crossing < 0; }
};

// Root is node 0. Shared subtrees are allowed.
struct QACertificate {
  std::vector<QANode> nodes;
  std::string to_json() const;
  static QACertificate from_json(const std::string& text);
};

struct QABudget {
  std::int64_t max_nodes = 1'000'000;
  int max_depth = 64;
};

enum class QAStatus { Certified, Exhausted, Refuted };
std::string to_string(QAStatus s);

struct QAResult {
  QAStatus status = QAStatus::Exhausted;
  std::optional<QACertificate> certificate;
  std::int64_t nodes_explored = 0;
  std::string reason;
};

QAResult qa_certify(const Diagram& d, const QABudget& budget = {});

struct VerifyResult {
  bool ok = false;
  int failed_node = -1;
  std::string message;
};

VerifyResult verify_certificate(const QACertificate& cert);

struct Composition {
  QACertificate certificate;
  int fallbacks = 0;  // subtrees that had to be searched instead of transported
};

// Certificate for the connected sum of the two root knots (default site),
// following the first certificate and then the second.
Composition compose_connected_sum(const QACertificate& c1, const QACertificate& c2,
                                  const QABudget& budget = {});

}  // namespace kb
