#include "knotbound/corpus.hpp"

#include <boost/algorithm/string.hpp>
#include <boost/tokenizer.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "knotbound/error.hpp"

namespace kb {

namespace {

[[noreturn]] void row_error(const std::string& source, int row, const std::string& what) {
  throw InputError(source + ": row " + std::to_string(row) + ": " + what);
}

std::map<std::string, std::string> parse_annotations(const std::string& text, const std::string& source,
                                                     int row) {
  std::map<std::string, std::string> out;
  std::vector<std::string> parts;
  boost::split(parts, text, boost::is_any_of(";"));
  for (auto& p : parts) {
    boost::trim(p);
    if (p.empty()) continue;
    auto eq = p.find('=');
    if (eq == std::string::npos) row_error(source, row, "annotation '" + p + "' is not key=value");
    std::string key = boost::trim_copy(p.substr(0, eq));
    if (!out.emplace(key, boost::trim_copy(p.substr(eq + 1))).second)
      row_error(source, row, "annotation '" + key + "' given twice");
  }
  return out;
}

CorpusEntry make_entry(std::string name, std::string pd, int components, std::vector<std::string> cites,
                       std::map<std::string, std::string> ann, const std::string& source, int row) {
  CorpusEntry e;
  if (name.empty()) row_error(source, row, "empty name");
  e.name = std::move(name);
  e.pd = std::move(pd);
  try {
    e.diagram = Diagram::parse(e.pd);
  } catch (const InputError& ex) {
    row_error(source, row, "PD code of '" + e.name + "' does not parse: " + ex.what());
  }
  if (components != e.diagram.component_count())
    row_error(source, row,
              "'" + e.name + "' declares " + std::to_string(components) + " components, PD code has " +
                  std::to_string(e.diagram.component_count()));
  e.components = components;
  e.citations = std::move(cites);
  e.annotations = std::move(ann);
  e.row = row;
  return e;
}

void finish(std::vector<CorpusEntry>& out, const std::string& source) {
  std::sort(out.begin(), out.end(), [](const CorpusEntry& a, const CorpusEntry& b) { return a.name < b.name; });
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i].name == out[i - 1].name)
      row_error(source, std::max(out[i].row, out[i - 1].row), "duplicate name '" + out[i].name + "'");
}

}  // namespace

std::vector<CorpusEntry> parse_corpus_csv(std::string_view text, const std::string& source) {
  std::vector<CorpusEntry> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int row = 0;
  bool header_seen = false;
  using Tok = boost::tokenizer<boost::escaped_list_separator<char>>;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string trimmed = boost::trim_copy(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    std::vector<std::string> f;
    try {
      Tok tok(line, boost::escaped_list_separator<char>('\\', ',', '"'));
      for (auto& t : tok) f.push_back(boost::trim_copy(t));
    } catch (const boost::escaped_list_error& e) {
      row_error(source, row, std::string("bad quoting: ") + e.what());
    }
    if (!header_seen && !f.empty() && f[0] == "name") {
      header_seen = true;  // optional uncommented header line
      continue;
    }
    if (f.size() < 4 || f.size() > 5)
      row_error(source, row, "expected 4 or 5 fields (name,pd,components,citations[,annotations]), got " +
                                 std::to_string(f.size()));
    int components = 0;
    try {
      std::size_t used = 0;
      components = std::stoi(f[2], &used);
      if (used != f[2].size() || components < 1) throw std::invalid_argument("");
    } catch (const std::exception&) {
      row_error(source, row, "components '" + f[2] + "' is not a positive integer");
    }
    std::vector<std::string> cites;
    boost::split(cites, f[3], boost::is_any_of("|"));
    for (auto& c : cites) boost::trim(c);
    std::erase_if(cites, [](const std::string& c) { return c.empty(); });
    auto ann = f.size() == 5 ? parse_annotations(f[4], source, row) : std::map<std::string, std::string>{};
    out.push_back(make_entry(f[0], f[1], components, std::move(cites), std::move(ann), source, row));
  }
  finish(out, source);
  return out;
}

std::vector<CorpusEntry> parse_corpus_json(std::string_view text, const std::string& source) {
  using nlohmann::json;
  std::vector<CorpusEntry> out;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(source + ": " + e.what());
  }
  if (j.is_object() && j.contains("knots")) j = j["knots"];
  if (!j.is_array()) throw InputError(source + ": expected an array of knot records");
  int row = 0;
  for (const auto& r : j) {
    ++row;
    try {
      std::vector<std::string> cites;
      if (r.contains("citations")) {
        if (r["citations"].is_string())
          cites.push_back(r["citations"].get<std::string>());
        else
          cites = r["citations"].get<std::vector<std::string>>();
      }
      std::map<std::string, std::string> ann;
      if (r.contains("annotations"))
        for (auto& [k, v] : r["annotations"].items()) ann[k] = v.is_string() ? v.get<std::string>() : v.dump();
      out.push_back(make_entry(r.at("name").get<std::string>(), r.at("pd").get<std::string>(),
                               r.value("components", 1), std::move(cites), std::move(ann), source, row));
    } catch (const json::exception& e) {
      row_error(source, row, e.what());
    }
  }
  finish(out, source);
  return out;
}

std::vector<CorpusEntry> ingest_corpus(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open corpus file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  const std::string text = ss.str();
  auto first = text.find_first_not_of(" \t\r\n");
  bool json = boost::ends_with(path, ".json") || (first != std::string::npos && (text[first] == '[' || text[first] == '{'));
  return json ? parse_corpus_json(text, path) : parse_corpus_csv(text, path);
}

std::string data_path(const std::string& file) {
  if (const char* dir = std::getenv("KBOUND_DATA_DIR"); dir && *dir) return std::string(dir) + "/" + file;
  return std::string(KNOTBOUND_DATA_DIR) + "/" + file;
}

const CorpusEntry* find_entry(std::span<const CorpusEntry> corpus, const std::string& name) {
  auto it = std::lower_bound(corpus.begin(), corpus.end(), name,
                             [](const CorpusEntry& e, const std::string& n) { return e.name < n; });
  return it != corpus.end() && it->name == name ? &*it : nullptr;
}

}  // namespace kb
