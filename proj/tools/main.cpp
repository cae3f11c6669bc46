#include <iostream>

#include "CLI11.hpp"
#include "cli.hpp"
#include "knotbound/error.hpp"

int main(int argc, char** argv) {
  using namespace kbcli;
  CLI::App app{"Turaev genus bounds from DL invariants"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--ceiling-kh", o.kh_ceiling, "max crossings for Khovanov/Lee computations")
      ->envname("KBOUND_CEILING_KH");
  app.add_option("--ceiling-bracket", o.bracket_ceiling, "max crossings for the Kauffman bracket")
      ->envname("KBOUND_CEILING_BRACKET");
  app.add_option("--field", o.field, "coefficients for Khovanov homology tables")
      ->check(CLI::IsMember({"gf2", "q"}))
      ->envname("KBOUND_FIELD");
  app.add_option("--qa-budget", o.qa_budget, "node budget of the quasi-alternating search")
      ->envname("KBOUND_QA_BUDGET");
  app.add_flag("--json", o.json, "JSON output")->envname("KBOUND_JSON");
  app.add_option("--corpus", o.corpus, "corpus file (CSV or JSON)")->envname("KBOUND_CORPUS");
  app.add_option("--injected", o.injected, "injected invariant table (JSON)")->envname("KBOUND_INJECTED");

  std::vector<std::string> input;
  bool homology = false, no_s = false, negative = false, random = false;
  std::uint64_t seed = 0;
  std::string cert_out, verify, section;
  int max_crossings = 10;

  auto* inv = app.add_subcommand("invariants", "invariant report for one diagram");
  inv->add_option("input", input, "PD code, corpus name, 'pretzel p q' or 'torus p q'")->required();
  inv->add_flag("--homology", homology, "also print Khovanov homology ranks over --field");
  inv->add_flag("--no-s", no_s, "skip the s-invariant");

  auto* red = app.add_subcommand("reduce", "spanning-tree reduction to a connected negative diagram");
  red->add_option("input", input)->required();
  red->add_flag("--negative", negative, "reduce to a positive diagram instead");
  red->add_flag("--random", random, "random spanning tree");
  red->add_option("--seed", seed, "seed for --random");

  auto* qa = app.add_subcommand("qa-check", "search for or verify a quasi-alternating certificate");
  qa->add_option("input", input);
  qa->add_option("--cert-out", cert_out, "write the certificate here");
  qa->add_option("--verify", verify, "verify a certificate file instead of searching");

  auto* tab = app.add_subcommand("table", "invariant table over the corpus");
  tab->add_option("--max-crossings", max_crossings, "skip larger diagrams");
  tab->add_flag("--no-s", no_s, "skip the s-invariant");

  auto* rep = app.add_subcommand("reproduce", "rerun a group of checks and write a report");
  rep->add_option("section", section)->required()->check(
      CLI::IsMember({"theoremA", "lemma_checks", "genus_two_corpus"}));
  rep->add_option("--out", o.out, "report file (default <section>_report.json)");
  rep->add_flag("--no-s", no_s, "skip s where it is optional");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    if (*inv) return cmd_invariants(o, input, homology, no_s);
    if (*red) return cmd_reduce(o, input, negative, random, seed);
    if (*qa) return cmd_qa(o, input, cert_out, verify);
    if (*tab) return cmd_table(o, max_crossings, no_s);
    if (*rep) return cmd_reproduce(o, section, no_s);
  } catch (const kb::CeilingError& e) {
    std::cerr << "ceiling: " << e.what() << "\n";
    return kBudget;
  } catch (const kb::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInputError;
}
