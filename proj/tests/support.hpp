#pragma once

// Shared fixtures and brute-force oracles. The oracles work on PD labels
// directly and share no code with the library beyond Diagram parsing.

#include <gmpxx.h>

#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "knotbound/corpus.hpp"
#include "knotbound/diagram.hpp"

namespace testing {

inline const std::vector<kb::CorpusEntry>& corpus() {
  static const std::vector<kb::CorpusEntry> c = kb::ingest_corpus(kb::data_path("knots_10.csv"));
  return c;
}

inline const std::vector<kb::CorpusEntry>& genus_two() {
  static const std::vector<kb::CorpusEntry> c = kb::ingest_corpus(kb::data_path("genus_two.csv"));
  return c;
}

inline const kb::Diagram& knot(const std::string& name) {
  const kb::CorpusEntry* e = kb::find_entry(corpus(), name);
  if (!e) e = kb::find_entry(genus_two(), name);
  if (!e) throw std::runtime_error("no corpus entry " + name);
  return e->diagram;
}

inline int annotation(const kb::CorpusEntry& e, const std::string& key) {
  return std::stoi(e.annotations.at(key));
}

inline int crossing_number(const kb::CorpusEntry& e) {
  return e.name == "0_1" ? 0 : std::stoi(e.name.substr(0, e.name.find('_')));
}

// Union-find over PD labels.
struct LabelUF {
  std::map<int, int> p;
  int find(int x) {
    if (!p.count(x)) p[x] = x;
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int a, int b) { p[find(a)] = find(b); }
  int classes() {
    int n = 0;
    for (auto& [k, v] : p) n += find(k) == k;
    return n;
  }
};

// Circles of the state where bit k set means B at crossing k. A joins
// positions (0,1),(2,3); B joins (0,3),(1,2).
inline int brute_circles(const kb::Diagram& d, std::uint64_t state) {
  LabelUF uf;
  const auto& xs = d.crossings();
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const auto& x = xs[k];
    if (state >> k & 1) {
      uf.unite(x[0], x[3]);
      uf.unite(x[1], x[2]);
    } else {
      uf.unite(x[0], x[1]);
      uf.unite(x[2], x[3]);
    }
  }
  return uf.classes() + static_cast<int>(d.loops().size());
}

// Kauffman bracket by brute force, keyed by the exponent of A.
inline std::map<int, long> brute_bracket(const kb::Diagram& d) {
  const int n = d.crossing_count();
  std::map<int, long> out;
  for (std::uint64_t s = 0; s < (std::uint64_t(1) << n); ++s) {
    const int b = std::popcount(s);
    const int loops = brute_circles(d, s);
    // A^(a-b) (-A^2 - A^-2)^(loops-1)
    std::map<int, long> term{{n - 2 * b, 1}};
    for (int i = 1; i < loops; ++i) {
      std::map<int, long> next;
      for (auto [e, c] : term) {
        next[e + 2] -= c;
        next[e - 2] -= c;
      }
      term = std::move(next);
    }
    for (auto [e, c] : term) out[e] += c;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

// Jones polynomial keyed by the exponent of t^(1/2): V = (-A^3)^(-w) <D>,
// A = t^(-1/4).
inline std::map<int, long> brute_jones(const kb::Diagram& d) {
  const int w = d.writhe();
  std::map<int, long> out;
  for (auto [e, c] : brute_bracket(d)) {
    const int ea = e - 3 * w;
    const long sign = (w % 2 == 0) ? 1 : -1;
    // A^ea = t^(-ea/4) = (t^(1/2))^(-ea/2)
    out[-ea / 2] += sign * c;
  }
  return out;
}

// Determinant from the Fox colouring matrix: one row per crossing
// (2 * over - under_in - under_out), one column per over-arc.
inline long fox_determinant(const kb::Diagram& d) {
  const int n = d.crossing_count();
  if (n == 0) return 1;
  LabelUF uf;
  for (const auto& x : d.crossings()) uf.unite(x[1], x[3]);
  for (const auto& x : d.crossings()) {
    uf.find(x[0]);
    uf.find(x[2]);
  }
  std::map<int, int> col;
  for (auto& [k, v] : uf.p) {
    int r = uf.find(k);
    if (!col.count(r)) {
      int id = static_cast<int>(col.size());
      col[r] = id;
    }
  }
  const int m = static_cast<int>(col.size());
  std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(m, 0));
  for (int i = 0; i < n; ++i) {
    const auto& x = d.crossings()[i];
    a[i][col[uf.find(x[1])]] += 2;
    a[i][col[uf.find(x[0])]] -= 1;
    a[i][col[uf.find(x[2])]] -= 1;
  }
  // first minor, then Bareiss
  const int k = std::min(n, m) - 1;
  if (k == 0) return 1;
  std::vector<std::vector<mpz_class>> b(k, std::vector<mpz_class>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) b[i][j] = a[i][j];
  mpz_class prev = 1;
  int sign = 1;
  for (int p = 0; p < k; ++p) {
    if (b[p][p] == 0) {
      int r = p + 1;
      while (r < k && b[r][p] == 0) ++r;
      if (r == k) return 0;
      std::swap(b[p], b[r]);
      sign = -sign;
    }
    for (int i = p + 1; i < k; ++i)
      for (int j = p + 1; j < k; ++j) b[i][j] = (b[i][j] * b[p][p] - b[i][p] * b[p][j]) / prev;
    prev = b[p][p];
  }
  mpz_class det = abs(b[k - 1][k - 1]);
  return det.get_si();
}

}  // namespace testing
