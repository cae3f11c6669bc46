#include "knotbound/linalg.hpp"

#include <numeric>

#include "knotbound/error.hpp"

namespace kb {

mpz_class determinant(const IntMatrix& in) {
  const std::size_t n = in.size();
  if (n == 0) return 1;
  std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (in[i].size() != n) throw InputError("determinant of a non-square matrix");
    for (std::size_t j = 0; j < n; ++j) a[i][j] = static_cast<long>(in[i][j]);
  }
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

int signature(const IntMatrix& in) {
  const std::size_t n = in.size();
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (in[i][j] != in[j][i]) throw InputError("signature of a non-symmetric matrix");
      a[i][j] = static_cast<long>(in[i][j]);
    }
  auto swap_index = [&](std::size_t p, std::size_t q) {
    std::swap(a[p], a[q]);
    for (auto& row : a) std::swap(row[p], row[q]);
  };
  int sig = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t j = k + 1;
      while (j < n && a[j][j] == 0) ++j;
      if (j < n) {
        swap_index(k, j);
      } else {
        j = k + 1;
        while (j < n && a[k][j] == 0) ++j;
        if (j == n) continue;  // zero row: null direction
        // e_k <- e_k + e_j makes the pivot 2 a_kj
        for (std::size_t c = 0; c < n; ++c) a[k][c] += a[j][c];
        for (std::size_t r = 0; r < n; ++r) a[r][k] += a[r][j];
      }
    }
    const mpq_class piv = a[k][k];
    sig += sgn(piv) > 0 ? 1 : -1;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k] == 0) continue;
      mpq_class f = a[i][k] / piv;
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
    for (std::size_t j = k + 1; j < n; ++j) a[k][j] = 0;
    for (std::size_t i = k + 1; i < n; ++i) a[i][k] = 0;
  }
  return sig;
}

namespace {

// Eliminates the lead of y using x (same lead index).
void eliminate(SparseVec<GF2>& y, const SparseVec<GF2>& x) {
  SparseVec<GF2> out;
  out.reserve(y.size() + x.size());
  std::size_t i = 0, j = 0;
  while (i < y.size() || j < x.size()) {
    if (j == x.size() || (i < y.size() && y[i].first < x[j].first)) {
      out.push_back(y[i++]);
    } else if (i == y.size() || x[j].first < y[i].first) {
      out.push_back(x[j++]);
    } else {
      ++i, ++j;
    }
  }
  y.swap(out);
}

void eliminate(SparseVec<Rational>& y, const SparseVec<Rational>& x) {
  const mpq_class a = -y.front().second / x.front().second;
  SparseVec<Rational> out;
  out.reserve(y.size() + x.size());
  std::size_t i = 0, j = 0;
  while (i < y.size() || j < x.size()) {
    if (j == x.size() || (i < y.size() && y[i].first < x[j].first)) {
      out.push_back(std::move(y[i++]));
    } else if (i == y.size() || x[j].first < y[i].first) {
      out.emplace_back(x[j].first, a * x[j].second);
      ++j;
    } else {
      mpq_class v = y[i].second + a * x[j].second;
      if (sgn(v) != 0) out.emplace_back(y[i].first, std::move(v));
      ++i, ++j;
    }
  }
  y.swap(out);
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow();
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow();
  return r;
}

void eliminate(SparseVec<SmallRational>& y, const SparseVec<SmallRational>& x) {
  // y <- xl*y - yl*x, scaled down by gcd(xl, yl) and then by the content
  std::int64_t g = std::gcd(y.front().second, x.front().second);
  const std::int64_t a = x.front().second / g, b = -y.front().second / g;
  SparseVec<SmallRational> out;
  out.reserve(y.size() + x.size());
  std::int64_t content = 0;
  std::size_t i = 0, j = 0;
  while (i < y.size() || j < x.size()) {
    std::int64_t v;
    int idx;
    if (j == x.size() || (i < y.size() && y[i].first < x[j].first)) {
      idx = y[i].first;
      v = checked_mul(a, y[i++].second);
    } else if (i == y.size() || x[j].first < y[i].first) {
      idx = x[j].first;
      v = checked_mul(b, x[j++].second);
    } else {
      idx = y[i].first;
      v = checked_add(checked_mul(a, y[i++].second), checked_mul(b, x[j++].second));
    }
    if (v != 0) {
      out.emplace_back(idx, v);
      content = std::gcd(content, v);
    }
  }
  if (content > 1)
    for (auto& e : out) e.second /= content;
  y.swap(out);
}

}  // namespace

template <class Field>
typename EchelonBasis<Field>::Vec EchelonBasis<Field>::reduce(Vec v) const {
  // Only the leading entry can hit a pivot that has not been cleared yet;
  // walk upward until the lead is free.
  while (!v.empty()) {
    auto it = pivots_.find(v.front().first);
    if (it == pivots_.end()) break;
    eliminate(v, it->second);
  }
  return v;
}

template <class Field>
bool EchelonBasis<Field>::insert(Vec v) {
  v = reduce(std::move(v));
  if (v.empty()) return false;
  int lead = v.front().first;
  pivots_.emplace(lead, std::move(v));
  return true;
}

template class EchelonBasis<GF2>;
template class EchelonBasis<Rational>;
template class EchelonBasis<SmallRational>;

}  // namespace kb
