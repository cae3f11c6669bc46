#include "knotbound/report.hpp"

#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "knotbound/classical.hpp"
#include "knotbound/error.hpp"
#include "knotbound/turaev.hpp"

namespace kb {

using nlohmann::json;

std::optional<int> InvariantReport::genus_from_counts() const {
  if (!s_A || !s_B) return std::nullopt;
  const int twice = crossings + 2 - *s_A - *s_B;
  if (twice < 0 || twice % 2) return std::nullopt;
  return twice / 2;
}

bool InvariantReport::any_violation() const {
  if (theorem_b_violated) return true;
  for (const auto& r : dl)
    if (!r.pass) return true;
  return false;
}

namespace {

std::string jones_text(const Laurent& v) {
  // stored in powers of t^(1/2); knots only use integer powers of t
  bool integral = true;
  for (auto [e, c] : v.terms()) integral = integral && e % 2 == 0;
  if (!integral) return v.str("t^(1/2)");
  Laurent t;
  for (auto [e, c] : v.terms()) t += Laurent::monomial(e / 2, c);
  return t.str("t");
}

template <class F>
void attempt(InvariantReport& r, const std::string& field, F&& f) {
  try {
    f();
  } catch (const CeilingError& e) {
    r.skipped[field] = e.what();
  } catch (const InputError& e) {
    r.skipped[field] = e.what();
  }
}

}  // namespace

InvariantReport compute_report(const Diagram& d, const std::string& name, const ReportOptions& opt) {
  InvariantReport r;
  r.name = name;
  r.pd = d.serialize();
  r.crossings = d.crossing_count();
  r.components = d.component_count();
  r.n_plus = d.n_plus();
  r.n_minus = d.n_minus();
  r.writhe = d.writhe();
  const bool connected = d.is_connected();
  const bool knot = r.components == 1;

  attempt(r, "s_A", [&] { r.s_A = s_A(d); });
  attempt(r, "s_B", [&] { r.s_B = s_B(d); });
  attempt(r, "turaev_genus", [&] { r.turaev_genus = turaev_genus_diagram(d); });
  if (connected) {
    attempt(r, "det", [&] { r.det = determinant(d); });
    attempt(r, "sigma", [&] { r.sigma = signature(d); });
  } else {
    r.skipped["det"] = r.skipped["sigma"] = "split diagram";
  }
  if (opt.compute_jones) attempt(r, "jones", [&] { r.jones = jones_text(jones(d, opt.bracket_ceiling)); });
  if (!knot) {
    r.skipped["s"] = "s is defined for knots only";
  } else if (!opt.compute_s) {
    r.skipped["s"] = "disabled";
  } else if (d.crossing_count() > opt.kh_ceiling) {
    r.skipped["s"] = "crossing count " + std::to_string(d.crossing_count()) + " exceeds Khovanov ceiling " +
                     std::to_string(opt.kh_ceiling);
  } else {
    attempt(r, "s", [&] { r.s = s_invariant(d, opt.kh_ceiling).s; });
  }

  if (knot && connected) {
    std::map<std::string, Interval> values;
    auto add_dl = [&](const std::string& inv, int v) {
      values[inv] = Interval::point(v);
      DLBoundCheck c;
      c.lower = *r.s_B - r.n_minus - 1;
      c.upper = 1 + r.n_plus - *r.s_A;
      c.value = Interval::point(v);
      c.pass = c.lower <= v && v <= c.upper;
      r.dl.push_back({inv, c.lower, c.upper, to_string(c.value), c.pass});
    };
    if (r.s_A && r.s_B) {
      if (r.s) add_dl("s", *r.s);
      if (r.sigma) add_dl("neg_sigma", -*r.sigma);
    }
    if (values.size() >= 2) {
      BoundReport b = theorem_b_bound(values, std::span<const Diagram>(&d, 1));
      r.theorem_b_bound = b.bound.get_str();
      r.theorem_b_violated = b.violated;
    } else {
      r.skipped["theorem_b"] = "needs both s and sigma";
    }
  } else {
    r.skipped["dl_bounds"] = r.skipped["theorem_b"] = knot ? "split diagram" : "link diagram";
  }
  return r;
}

// ---------------------------------------------------------------- JSON

namespace {

template <class T>
void put(json& j, const char* key, const std::optional<T>& v) {
  j[key] = v ? json(*v) : json(nullptr);
}

template <class T>
void get(const json& j, const char* key, std::optional<T>& v) {
  if (j.contains(key) && !j[key].is_null())
    v = j[key].get<T>();
  else
    v.reset();
}

}  // namespace

std::string InvariantReport::to_json() const {
  json j;
  j["name"] = name;
  j["pd"] = pd;
  j["crossings"] = crossings;
  j["components"] = components;
  j["n_plus"] = n_plus;
  j["n_minus"] = n_minus;
  j["writhe"] = writhe;
  put(j, "s_A", s_A);
  put(j, "s_B", s_B);
  put(j, "turaev_genus_diagram", turaev_genus);
  put(j, "det", det);
  put(j, "sigma", sigma);
  put(j, "s", s);
  put(j, "jones", jones);
  json dls = json::array();
  for (const auto& x : dl)
    dls.push_back({{"invariant", x.invariant}, {"lower", x.lower}, {"upper", x.upper}, {"value", x.value},
                   {"pass", x.pass}});
  j["dl_bounds"] = dls;
  put(j, "theorem_b_bound", theorem_b_bound);
  j["theorem_b_violated"] = theorem_b_violated;
  j["skipped"] = skipped;
  return j.dump(1);
}

InvariantReport InvariantReport::from_json(const std::string& text) {
  InvariantReport r;
  try {
    json j = json::parse(text);
    r.name = j.at("name").get<std::string>();
    r.pd = j.at("pd").get<std::string>();
    r.crossings = j.at("crossings").get<int>();
    r.components = j.at("components").get<int>();
    r.n_plus = j.at("n_plus").get<int>();
    r.n_minus = j.at("n_minus").get<int>();
    r.writhe = j.at("writhe").get<int>();
    get(j, "s_A", r.s_A);
    get(j, "s_B", r.s_B);
    get(j, "turaev_genus_diagram", r.turaev_genus);
    get(j, "det", r.det);
    get(j, "sigma", r.sigma);
    get(j, "s", r.s);
    get(j, "jones", r.jones);
    for (const auto& x : j.at("dl_bounds"))
      r.dl.push_back({x.at("invariant").get<std::string>(), x.at("lower").get<int>(), x.at("upper").get<int>(),
                      x.at("value").get<std::string>(), x.at("pass").get<bool>()});
    get(j, "theorem_b_bound", r.theorem_b_bound);
    r.theorem_b_violated = j.value("theorem_b_violated", false);
    r.skipped = j.value("skipped", std::map<std::string, std::string>{});
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed report: ") + e.what());
  }
  return r;
}

std::string format_report(const InvariantReport& r) {
  std::ostringstream os;
  auto line = [&](const std::string& k, const std::string& v) { os << std::left << std::setw(16) << k << v << "\n"; };
  auto opt = [&](const std::string& k, const auto& v, const std::string& field) {
    if (v) {
      std::ostringstream t;
      t << *v;
      line(k, t.str());
    } else {
      auto it = r.skipped.find(field);
      line(k, "skipped (" + (it == r.skipped.end() ? std::string("n/a") : it->second) + ")");
    }
  };
  line("name", r.name);
  line("pd", r.pd);
  line("crossings", std::to_string(r.crossings));
  line("components", std::to_string(r.components));
  line("n+ / n-", std::to_string(r.n_plus) + " / " + std::to_string(r.n_minus));
  opt("s_A", r.s_A, "s_A");
  opt("s_B", r.s_B, "s_B");
  opt("g_T(D)", r.turaev_genus, "turaev_genus");
  opt("det", r.det, "det");
  opt("sigma", r.sigma, "sigma");
  opt("s", r.s, "s");
  opt("jones", r.jones, "jones");
  for (const auto& x : r.dl)
    line("DL " + x.invariant, std::to_string(x.lower) + " <= " + x.value + " <= " + std::to_string(x.upper) +
                                  (x.pass ? "  ok" : "  VIOLATED"));
  opt("g_T lower bnd", r.theorem_b_bound, "theorem_b");
  if (r.theorem_b_violated) line("", "VIOLATION: lower bound exceeds g_T(D)");
  return os.str();
}

std::vector<AnnotationMismatch> check_annotations(const CorpusEntry& e, const InvariantReport& r) {
  std::vector<AnnotationMismatch> out;
  auto exact = [&](const std::string& key, const auto& computed) {
    auto it = e.annotations.find(key);
    if (it == e.annotations.end() || !computed) return;
    std::string c = std::to_string(*computed);
    if (c != it->second) out.push_back({key, it->second, c});
  };
  exact("signature", r.sigma);
  exact("determinant", r.det);
  exact("s", r.s);
  if (auto it = e.annotations.find("alternating"); it != e.annotations.end()) {
    // table diagrams of alternating knots are alternating; the converse is a theorem
    const bool alt = e.diagram.is_alternating();
    if ((it->second == "1") != alt) out.push_back({"alternating", it->second, alt ? "1" : "0"});
  }
  if (auto it = e.annotations.find("turaev_genus"); it != e.annotations.end() && r.turaev_genus) {
    if (*r.turaev_genus < std::stoi(it->second))
      out.push_back({"turaev_genus", it->second, "diagram genus " + std::to_string(*r.turaev_genus)});
  }
  return out;
}

}  // namespace kb
