#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "glen/group.hpp"
#include "glen/structure.hpp"

namespace glen {

enum class Tier { FullSurvey, Structural };

std::string tier_name(Tier t);

/// One group of the corpus, read from a "glen-corpus/1" JSON file.
struct CorpusEntry {
  std::string name;
  std::size_t degree = 0;
  std::vector<std::string> generators;
  Tier tier = Tier::FullSurvey;
  StructureHints hints;
  Budget budget;
  /// Invariant name -> value, e.g. "order", "lambda_2", "fitting_height".
  std::map<std::string, std::int64_t> expected;
  /// Variety specs that the Sylow subgroups are declared to satisfy.
  std::vector<VarietySpec> varieties;

  Group group() const;
};

/// Throws ParseError with the offending field on malformed input.
CorpusEntry parse_corpus_entry(const std::string& json_text);
CorpusEntry load_corpus_entry(const std::filesystem::path& path);
/// Every *.json file in dir, sorted by file name.
std::vector<CorpusEntry> load_corpus(const std::filesystem::path& dir);

/// Reads a whole file; throws Error when it cannot be opened.
std::string read_file(const std::filesystem::path& path);

}  // namespace glen
