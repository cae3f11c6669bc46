#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"
#include "knotbound/bounds.hpp"
#include "knotbound/error.hpp"
#include "knotbound/khovanov.hpp"
#include "knotbound/qa.hpp"
#include "knotbound/report.hpp"
#include "knotbound/turaev.hpp"

namespace kbcli {

using nlohmann::json;

std::vector<kb::CorpusEntry> load_corpus(const Options& o) {
  if (!o.corpus.empty()) return kb::ingest_corpus(o.corpus);
  auto all = kb::ingest_corpus(kb::data_path("knots_10.csv"));
  auto more = kb::ingest_corpus(kb::data_path("genus_two.csv"));
  all.insert(all.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return all;
}

std::string injected_path(const Options& o) {
  return o.injected.empty() ? kb::data_path("injected_sn.json") : o.injected;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw kb::InputError("cannot write " + path);
  f << text << "\n";
}

namespace {

int to_int(const std::string& s) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw kb::InputError("expected an integer, got '" + s + "'");
}

}  // namespace

Named resolve_input(const std::vector<std::string>& tokens, const std::vector<kb::CorpusEntry>& corpus) {
  if (tokens.empty()) throw kb::InputError("no input diagram");
  if (tokens[0] == "mirror") {
    Named n = resolve_input({tokens.begin() + 1, tokens.end()}, corpus);
    return {"mirror(" + n.name + ")", kb::mirror(n.diagram), nullptr};
  }
  if (tokens[0] == "pretzel") {
    std::vector<int> t;
    for (std::size_t i = 1; i < tokens.size(); ++i) t.push_back(to_int(tokens[i]));
    if (t.size() == 2) {
      if (!(t[0] >= t[1] && t[1] >= 1)) throw kb::InputError("K_{p,q} needs p >= q >= 1");
      return {kb::pretzel_name(t[0], t[1]), kb::pretzel(kb::PretzelSpec{t[0], t[1]}), nullptr};
    }
    if (t.size() < 3) throw kb::InputError("pretzel needs 'p q' or at least three twist counts");
    std::string name = "P(";
    for (std::size_t i = 0; i < t.size(); ++i) name += (i ? "," : "") + std::to_string(t[i]);
    return {name + ")", kb::pretzel(t), nullptr};
  }
  if (tokens[0] == "torus") {
    if (tokens.size() != 3) throw kb::InputError("torus needs 'p q'");
    int p = to_int(tokens[1]), q = to_int(tokens[2]);
    return {"T(" + tokens[1] + "," + tokens[2] + ")", kb::torus_knot(p, q), nullptr};
  }
  std::string text;
  for (const auto& t : tokens) text += t;
  if (text.rfind("PD[", 0) == 0 || text.rfind("[", 0) == 0) return {"input", kb::Diagram::parse(text), nullptr};
  if (const kb::CorpusEntry* e = kb::find_entry(corpus, text)) return {e->name, e->diagram, e};
  throw kb::InputError("unknown knot name '" + text + "'");
}

namespace {

kb::ReportOptions report_options(const Options& o, bool no_s) {
  kb::ReportOptions r;
  r.kh_ceiling = o.kh_ceiling;
  r.bracket_ceiling = o.bracket_ceiling;
  r.compute_s = !no_s;
  return r;
}

std::string ranks_table(const kb::KhRanks& ranks) {
  if (ranks.empty()) return "(zero)\n";
  int imin = 1 << 30, imax = -(1 << 30);
  std::set<int, std::greater<>> js;
  for (auto& [ij, r] : ranks) {
    imin = std::min(imin, ij.first);
    imax = std::max(imax, ij.first);
    js.insert(ij.second);
  }
  std::ostringstream os;
  os << std::setw(6) << "j\\i";
  for (int i = imin; i <= imax; ++i) os << std::setw(4) << i;
  os << "\n";
  for (int j : js) {
    os << std::setw(6) << j;
    for (int i = imin; i <= imax; ++i) {
      auto it = ranks.find({i, j});
      os << std::setw(4) << (it == ranks.end() ? std::string(".") : std::to_string(it->second));
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace

int cmd_invariants(const Options& o, const std::vector<std::string>& input, bool homology, bool no_s) {
  auto corpus = load_corpus(o);
  Named n = resolve_input(input, corpus);
  kb::InvariantReport r = kb::compute_report(n.diagram, n.name, report_options(o, no_s));
  std::vector<kb::AnnotationMismatch> mism;
  if (n.entry) mism = kb::check_annotations(*n.entry, r);
  std::optional<kb::KhRanks> kh;
  if (homology) kh = kb::khovanov_homology(n.diagram, o.field == "q" ? kb::Field::Q : kb::Field::GF2, o.kh_ceiling);

  if (o.json) {
    json j = json::parse(r.to_json());
    if (kh) {
      json list = json::array();
      for (auto& [ij, rank] : *kh) list.push_back({{"i", ij.first}, {"j", ij.second}, {"rank", rank}});
      j = {{"report", j}, {"khovanov", {{"field", o.field}, {"ranks", list}}}};
    }
    if (!mism.empty()) {
      json m = json::array();
      for (auto& x : mism) m.push_back({{"key", x.key}, {"annotated", x.annotated}, {"computed", x.computed}});
      j["annotation_mismatches"] = m;
    }
    std::cout << j.dump(1) << "\n";
  } else {
    std::cout << kb::format_report(r);
    if (kh) std::cout << "Khovanov homology over " << o.field << ":\n" << ranks_table(*kh);
    for (auto& x : mism)
      std::cout << "annotation mismatch: " << x.key << " annotated " << x.annotated << ", computed " << x.computed
                << "\n";
  }
  return r.any_violation() || !mism.empty() ? kViolation : kOk;
}

int cmd_reduce(const Options& o, const std::vector<std::string>& input, bool negative, bool random,
               std::uint64_t seed) {
  auto corpus = load_corpus(o);
  Named n = resolve_input(input, corpus);
  kb::TreeChoice tc{random, seed};
  kb::ReductionResult r = negative ? kb::reduce_negative(n.diagram, tc) : kb::reduce_positive(n.diagram, tc);
  const int sa = kb::s_A(n.diagram), sb = kb::s_B(n.diagram);
  const int sa2 = negative ? kb::s_B(r.reduced) : kb::s_A(r.reduced);
  const bool ok = r.reduced.is_connected() && (negative ? r.reduced.is_positive() : r.reduced.is_negative()) &&
                  sa2 == (negative ? sb : sa) - static_cast<int>(r.tree.size());
  if (o.json) {
    json edges = json::array();
    for (auto& e : r.gamma_edges) edges.push_back({{"crossing", e.crossing}, {"u", e.u}, {"v", e.v}});
    json trace = json::array();
    for (auto& t : r.trace) trace.push_back({{"crossing", t.crossing}, {"flipped", t.flipped}});
    json j{{"name", n.name},
           {"input", n.diagram.serialize()},
           {"gamma_vertices", r.gamma_vertices},
           {"gamma_edges", edges},
           {"tree", r.tree},
           {"connected", r.connected.serialize()},
           {"reduced", r.reduced.serialize()},
           {"untwist_trace", trace},
           {"band_count", r.band_count},
           {"state_count_identity", ok}};
    std::cout << j.dump(1) << "\n";
  } else {
    const char* kind = negative ? "negative" : "positive";
    std::cout << n.name << ": " << n.diagram.crossing_count() << " crossings, n+ = " << n.diagram.n_plus()
              << ", n- = " << n.diagram.n_minus() << "\n";
    std::cout << "Gamma: " << r.gamma_vertices << " vertices (" << (negative ? "all-B" : "all-A")
              << " circles), " << r.gamma_edges.size() << " edges (" << kind << " crossings)\n";
    for (auto& e : r.gamma_edges) std::cout << "  crossing " << e.crossing << ": " << e.u << " -- " << e.v << "\n";
    std::cout << "spanning tree:";
    for (int c : r.tree) std::cout << " " << c;
    std::cout << "\nresolve " << r.band_count << " " << kind << " crossings off the tree -> D^conn with "
              << r.connected.crossing_count() << " crossings\n";
    for (auto& t : r.trace)
      std::cout << "  untwist crossing " << t.crossing << " (turn over " << t.flipped << " crossings)\n";
    std::cout << "D' = " << r.reduced.serialize() << "\n";
    std::cout << "D' has " << r.reduced.crossing_count() << " crossings, connected = " << r.reduced.is_connected()
              << ", " << (negative ? "s_B" : "s_A") << "(D') = " << sa2 << " = " << (negative ? sb : sa) << " - "
              << r.tree.size() << (ok ? "  ok" : "  MISMATCH") << "\n";
  }
  return ok ? kOk : kViolation;
}

int cmd_qa(const Options& o, const std::vector<std::string>& input, const std::string& cert_out,
           const std::string& verify) {
  if (!verify.empty()) {
    std::ifstream f(verify);
    if (!f) throw kb::InputError("cannot open " + verify);
    std::stringstream ss;
    ss << f.rdbuf();
    kb::VerifyResult v = kb::verify_certificate(kb::QACertificate::from_json(ss.str()));
    if (o.json)
      std::cout << json{{"ok", v.ok}, {"failed_node", v.failed_node}, {"message", v.message}}.dump(1) << "\n";
    else
      std::cout << (v.ok ? "certificate verified" : "certificate rejected at node " + std::to_string(v.failed_node) +
                                                        ": " + v.message)
                << "\n";
    return v.ok ? kOk : kViolation;
  }
  auto corpus = load_corpus(o);
  Named n = resolve_input(input, corpus);
  kb::QABudget b;
  b.max_nodes = o.qa_budget;
  kb::QAResult r = kb::qa_certify(n.diagram, b);
  bool verified = false;
  if (r.certificate) {
    verified = kb::verify_certificate(*r.certificate).ok;
    if (!cert_out.empty()) write_file(cert_out, r.certificate->to_json());
  }
  if (o.json) {
    json j{{"name", n.name},
           {"status", kb::to_string(r.status)},
           {"nodes_explored", r.nodes_explored},
           {"reason", r.reason}};
    if (r.certificate) {
      j["verified"] = verified;
      j["certificate"] = json::parse(r.certificate->to_json());
    }
    std::cout << j.dump(1) << "\n";
  } else {
    std::cout << n.name << ": " << kb::to_string(r.status) << " after " << r.nodes_explored << " nodes";
    if (!r.reason.empty()) std::cout << " (" << r.reason << ")";
    if (r.certificate)
      std::cout << "; certificate with " << r.certificate->nodes.size() << " nodes, "
                << (verified ? "verified" : "FAILED verification");
    std::cout << "\n";
  }
  if (r.certificate && !verified) return kViolation;
  return r.status == kb::QAStatus::Exhausted ? kBudget : kOk;
}

int cmd_table(const Options& o, int max_crossings, bool no_s) {
  auto corpus = load_corpus(o);
  std::vector<const kb::CorpusEntry*> rows;
  for (auto& e : corpus)
    if (e.diagram.crossing_count() <= max_crossings) rows.push_back(&e);
  std::vector<kb::InvariantReport> reps(rows.size());
  std::vector<std::vector<kb::AnnotationMismatch>> mism(rows.size());
  auto opt = report_options(o, no_s);
  opt.compute_jones = false;
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < rows.size(); ++i) {
    reps[i] = kb::compute_report(rows[i]->diagram, rows[i]->name, opt);
    mism[i] = kb::check_annotations(*rows[i], reps[i]);
  }
  bool bad = false;
  auto cell = [](const auto& v) {
    if (!v) return std::string("-");
    std::ostringstream t;
    t << *v;
    return t.str();
  };
  if (o.json) {
    json list = json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      json j = json::parse(reps[i].to_json());
      json m = json::array();
      for (auto& x : mism[i]) m.push_back({{"key", x.key}, {"annotated", x.annotated}, {"computed", x.computed}});
      j["annotation_mismatches"] = m;
      list.push_back(j);
      bad = bad || reps[i].any_violation() || !mism[i].empty();
    }
    std::cout << list.dump(1) << "\n";
  } else {
    std::cout << std::left << std::setw(10) << "name" << std::right << std::setw(4) << "c" << std::setw(4) << "n+"
              << std::setw(4) << "n-" << std::setw(5) << "s_A" << std::setw(5) << "s_B" << std::setw(5) << "gT"
              << std::setw(7) << "det" << std::setw(5) << "sig" << std::setw(5) << "s" << std::setw(8) << "bound"
              << "  status\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = reps[i];
      std::string status = r.any_violation() ? "VIOLATION" : "ok";
      for (auto& x : mism[i]) status += " [" + x.key + ": " + x.annotated + " vs " + x.computed + "]";
      bad = bad || r.any_violation() || !mism[i].empty();
      std::cout << std::left << std::setw(10) << r.name << std::right << std::setw(4) << r.crossings << std::setw(4)
                << r.n_plus << std::setw(4) << r.n_minus << std::setw(5) << cell(r.s_A) << std::setw(5)
                << cell(r.s_B) << std::setw(5) << cell(r.turaev_genus) << std::setw(7) << cell(r.det)
                << std::setw(5) << cell(r.sigma) << std::setw(5) << cell(r.s) << std::setw(8)
                << cell(r.theorem_b_bound) << "  " << status << "\n";
    }
  }
  return bad ? kViolation : kOk;
}

}  // namespace kbcli
