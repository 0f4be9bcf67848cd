#include "glen/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "glen/error.hpp"
#include "json.hpp"

namespace glen {

using nlohmann::json;

std::string tier_name(Tier t) { return t == Tier::FullSurvey ? "FULL_SURVEY" : "STRUCTURAL"; }

Group CorpusEntry::group() const { return Group(degree, parse_generators(degree, generators)); }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

namespace {

std::vector<std::string> strings(const json& j, const std::string& field) {
  if (!j.is_array()) throw ParseError(field + " must be an array of cycle strings");
  std::vector<std::string> out;
  for (const auto& x : j) {
    if (!x.is_string()) throw ParseError(field + " must contain only strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

std::vector<Permutation> perms(std::size_t degree, const json& j, const std::string& field) {
  try {
    return parse_generators(degree, strings(j, field));
  } catch (const ParseError& e) {
    throw ParseError(field + ": " + e.what());
  }
}

std::uint64_t positive(const json& j, const std::string& field) {
  if (!j.is_number_integer() || j.get<std::int64_t>() <= 0) {
    throw ParseError(field + " must be a positive integer");
  }
  return j.get<std::uint64_t>();
}

}  // namespace

CorpusEntry parse_corpus_entry(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("corpus entry must be a JSON object");
  if (j.value("format", "") != "glen-corpus/1") throw ParseError("format must be glen-corpus/1");

  CorpusEntry e;
  if (!j.contains("name") || !j["name"].is_string()) throw ParseError("name is required");
  e.name = j["name"].get<std::string>();
  if (!j.contains("degree")) throw ParseError("degree is required");
  e.degree = positive(j["degree"], "degree");
  if (!j.contains("generators")) throw ParseError("generators are required");
  e.generators = strings(j["generators"], "generators");
  perms(e.degree, j["generators"], "generators");

  const std::string tier = j.value("tier", "FULL_SURVEY");
  if (tier == "FULL_SURVEY") {
    e.tier = Tier::FullSurvey;
  } else if (tier == "STRUCTURAL") {
    e.tier = Tier::Structural;
  } else {
    throw ParseError("tier must be FULL_SURVEY or STRUCTURAL");
  }

  if (j.contains("hints")) {
    const json& h = j["hints"];
    if (!h.is_object()) throw ParseError("hints must be an object");
    if (h.contains("socle_factors")) {
      for (const auto& f : h["socle_factors"]) {
        e.hints.socle_factors.push_back(perms(e.degree, f, "hints.socle_factors"));
      }
    }
    if (h.contains("minimal_normals")) {
      for (const auto& f : h["minimal_normals"]) {
        e.hints.minimal_normals.push_back(perms(e.degree, f, "hints.minimal_normals"));
      }
    }
    if (h.contains("sylow")) {
      if (!h["sylow"].is_object()) throw ParseError("hints.sylow must map primes to generators");
      for (const auto& [key, gens] : h["sylow"].items()) {
        std::uint64_t p = 0;
        try {
          p = std::stoull(key);
        } catch (const std::exception&) {
          throw ParseError("hints.sylow key " + key + " is not a prime");
        }
        if (!is_prime(p)) throw ParseError("hints.sylow key " + key + " is not a prime");
        e.hints.sylow[p] = perms(e.degree, gens, "hints.sylow." + key);
      }
    }
  }

  if (j.contains("budgets")) {
    const json& b = j["budgets"];
    if (b.contains("max_enumeration")) e.budget.max_enumeration = positive(b["max_enumeration"], "budgets.max_enumeration");
    if (b.contains("max_index")) e.budget.max_index = positive(b["max_index"], "budgets.max_index");
    if (b.contains("max_subgroup_order")) {
      e.budget.max_subgroup_order = positive(b["max_subgroup_order"], "budgets.max_subgroup_order");
    }
  }

  if (j.contains("expected")) {
    if (!j["expected"].is_object()) throw ParseError("expected must be an object");
    for (const auto& [key, v] : j["expected"].items()) {
      if (!v.is_number_integer()) throw ParseError("expected." + key + " must be an integer");
      e.expected[key] = v.get<std::int64_t>();
    }
  }

  if (j.contains("varieties")) {
    for (const auto& v : j["varieties"]) {
      VarietySpec spec;
      spec.prime = positive(v.at("prime"), "varieties.prime");
      for (const auto& pair : v.at("pairs")) {
        if (!pair.is_array() || pair.size() != 2) throw ParseError("variety pairs are [a, d]");
        spec.pairs.emplace_back(pair[0].get<unsigned>(), pair[1].get<unsigned>());
      }
      try {
        spec.validate();
      } catch (const Error& err) {
        throw ParseError(std::string("varieties: ") + err.what());
      }
      e.varieties.push_back(std::move(spec));
    }
  }
  return e;
}

CorpusEntry load_corpus_entry(const std::filesystem::path& path) {
  try {
    return parse_corpus_entry(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.filename().string() + ": " + e.what());
  }
}

std::vector<CorpusEntry> load_corpus(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& f : std::filesystem::directory_iterator(dir)) {
    if (f.is_regular_file() && f.path().extension() == ".json") files.push_back(f.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<CorpusEntry> out;
  for (const auto& f : files) out.push_back(load_corpus_entry(f));
  return out;
}

}  // namespace glen
