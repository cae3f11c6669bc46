#pragma once

// Knot tables: CSV (name,pd,components,citations[,annotations]) or a JSON
// array of objects with the same keys. Entries come back sorted by name.

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "knotbound/diagram.hpp"

namespace kb {

struct CorpusEntry {
  std::string name;
  std::string pd;
  Diagram diagram;
  int components = 1;
  std::vector<std::string> citations;             // '|'-separated in CSV
  std::map<std::string, std::string> annotations;  // key=value;key=value
  int row = 0;                                     // 1-based source line or array index
};

std::vector<CorpusEntry> parse_corpus_csv(std::string_view text, const std::string& source = "<csv>");
std::vector<CorpusEntry> parse_corpus_json(std::string_view text, const std::string& source = "<json>");
// Picks the format from the extension (.json) or a leading '[' / '{'.
std::vector<CorpusEntry> ingest_corpus(const std::string& path);

// Bundled data directory; KBOUND_DATA_DIR overrides the build-time default.
std::string data_path(const std::string& file);

const CorpusEntry* find_entry(std::span<const CorpusEntry> corpus, const std::string& name);

}  // namespace kb
