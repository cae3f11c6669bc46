#include "knotbound/laurent.hpp"

#include <limits>

namespace kb {

Laurent Laurent::monomial(int exp, std::int64_t coef) {
  Laurent p;
  p.add(exp, coef);
  return p;
}

void Laurent::add(int exp, std::int64_t c) {
  if (c == 0) return;
  auto [it, fresh] = t_.emplace(exp, c);
  if (!fresh && (it->second += c) == 0) t_.erase(it);
}

std::int64_t Laurent::coef(int exp) const {
  auto it = t_.find(exp);
  return it == t_.end() ? 0 : it->second;
}

int Laurent::min_exp() const { return t_.empty() ? 0 : t_.begin()->first; }
int Laurent::max_exp() const { return t_.empty() ? 0 : t_.rbegin()->first; }

Laurent& Laurent::operator+=(const Laurent& o) {
  for (auto [e, c] : o.t_) add(e, c);
  return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) {
  for (auto [e, c] : o.t_) add(e, -c);
  return *this;
}

Laurent operator*(const Laurent& a, const Laurent& b) {
  Laurent p;
  for (auto [e1, c1] : a.t_)
    for (auto [e2, c2] : b.t_) p.add(e1 + e2, c1 * c2);
  return p;
}

Laurent Laurent::shifted(int by) const {
  Laurent p;
  for (auto [e, c] : t_) p.t_.emplace(e + by, c);
  return p;
}

Laurent Laurent::substitute(int factor) const {
  Laurent p;
  for (auto [e, c] : t_) p.add(e * factor, c);
  return p;
}

Laurent Laurent::scaled(std::int64_t by) const {
  Laurent p;
  for (auto [e, c] : t_) p.add(e, c * by);
  return p;
}

std::string Laurent::str(const std::string& var) const {
  if (t_.empty()) return "0";
  std::string s;
  for (auto [e, c] : t_) {
    std::int64_t a = c < 0 ? -c : c;
    if (s.empty())
      s += c < 0 ? "-" : "";
    else
      s += c < 0 ? " - " : " + ";
    if (e == 0) {
      s += std::to_string(a);
      continue;
    }
    if (a != 1) s += std::to_string(a) + "*";
    s += var;
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

}  // namespace kb
