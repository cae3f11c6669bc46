#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace kb {

// Laurent polynomial with integer coefficients in one variable.
class Laurent {
 public:
  Laurent() = default;
  static Laurent monomial(int exp, std::int64_t coef = 1);

  const std::map<int, std::int64_t>& terms() const { return t_; }
  std::int64_t coef(int exp) const;
  bool is_zero() const { return t_.empty(); }
  int min_exp() const;
  int max_exp() const;

  Laurent& operator+=(const Laurent& o);
  Laurent& operator-=(const Laurent& o);
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator*(const Laurent& a, const Laurent& b);
  bool operator==(const Laurent& o) const { return t_ == o.t_; }

  Laurent shifted(int by) const;
  Laurent substitute(int factor) const;  // x -> x^factor, factor may be negative
  Laurent scaled(std::int64_t by) const;

  // "x^-2 + 3 - x^4" style; the empty polynomial prints as "0".
  std::string str(const std::string& var = "x") const;

 private:
  void add(int exp, std::int64_t c);
  std::map<int, std::int64_t> t_;
};

}  // namespace kb
