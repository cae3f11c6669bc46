#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "knotbound/corpus.hpp"
#include "knotbound/diagram.hpp"

namespace kbcli {

enum Exit { kOk = 0, kViolation = 1, kInputError = 2, kBudget = 3, kInternal = 4 };

struct Options {
  int kh_ceiling = 14;
  int bracket_ceiling = 16;
  std::string field = "gf2";
  std::int64_t qa_budget = 1'000'000;
  bool json = false;
  std::string corpus;    // empty: the bundled tables
  std::string injected;  // empty: the bundled s_n table
  std::string out;       // report file for reproduce
};

struct Named {
  std::string name;
  kb::Diagram diagram;
  const kb::CorpusEntry* entry = nullptr;
};

std::vector<kb::CorpusEntry> load_corpus(const Options& o);
std::string injected_path(const Options& o);
// "PD[...]", a corpus name, "pretzel p q", "pretzel a b c ...", "torus p q",
// optionally prefixed by "mirror".
Named resolve_input(const std::vector<std::string>& tokens, const std::vector<kb::CorpusEntry>& corpus);

int cmd_invariants(const Options& o, const std::vector<std::string>& input, bool homology, bool no_s);
int cmd_reduce(const Options& o, const std::vector<std::string>& input, bool negative, bool random,
               std::uint64_t seed);
int cmd_qa(const Options& o, const std::vector<std::string>& input, const std::string& cert_out,
           const std::string& verify);
int cmd_table(const Options& o, int max_crossings, bool no_s);
int cmd_reproduce(const Options& o, const std::string& section, bool no_s);

void write_file(const std::string& path, const std::string& text);

}  // namespace kbcli
