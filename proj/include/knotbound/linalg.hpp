#pragma once

// Exact linear algebra: dense determinant and symmetric signature over GMP
// numbers, and a sparse column-echelon basis over GF(2) or Q.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace kb {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

// Fraction-free (Bareiss) elimination.
mpz_class determinant(const IntMatrix& m);

// Number of positive minus negative eigenvalues, by congruence diagonalisation.
int signature(const IntMatrix& m);

struct GF2 {
  using value_type = std::uint8_t;
  static bool is_zero(value_type v) { return v == 0; }
};

struct Rational {
  using value_type = mpq_class;
  static bool is_zero(const value_type& v) { return sgn(v) == 0; }
};

// Span over Q with machine-integer vectors: eliminations are fraction-free
// and each vector is divided by its content. Throws ArithmeticOverflow when
// an entry leaves 64 bits; callers then redo the work with Rational.
struct SmallRational {
  using value_type = std::int64_t;
  static bool is_zero(value_type v) { return v == 0; }
};

struct ArithmeticOverflow : std::overflow_error {
  ArithmeticOverflow() : std::overflow_error("64-bit overflow in exact elimination") {}
};

// Sparse vector: (index, value) pairs sorted by index, no zeros stored.
template <class Field>
using SparseVec = std::vector<std::pair<int, typename Field::value_type>>;

// Span of inserted vectors kept in echelon form keyed by the lowest index of
// each basis vector. reduce() removes pivot entries from the bottom up, so the
// residual's lowest index is as large as possible over the coset.
template <class Field>
class EchelonBasis {
 public:
  using Vec = SparseVec<Field>;

  // Returns true when v was independent of the current span.
  bool insert(Vec v);
  Vec reduce(Vec v) const;
  std::size_t rank() const { return pivots_.size(); }

 private:
  std::map<int, Vec> pivots_;
};

extern template class EchelonBasis<GF2>;
extern template class EchelonBasis<Rational>;
extern template class EchelonBasis<SmallRational>;

}  // namespace kb
