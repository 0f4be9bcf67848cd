#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "glen/corpus.hpp"
#include "glen/group.hpp"
#include "glen/structure.hpp"
#include "json.hpp"

namespace glen {

enum class Status { Pass, Fail, Skipped };
enum class SkipReason { None, Budget, Tier, Inapplicable, InconclusiveWitness };

std::string status_name(Status s);
std::string reason_name(SkipReason r);

struct CheckReport {
  std::string group;
  /// "C1".."C14", or "EXPECTED" / "HINTS" for the entry's own claims.
  std::string check;
  /// 0 for checks that are not indexed by a prime.
  std::uint64_t prime = 0;
  Status status = Status::Pass;
  SkipReason reason = SkipReason::None;
  nlohmann::json data = nlohmann::json::object();
  std::vector<std::vector<std::string>> witnesses;
};

/// C1..C14, EXPECTED, HINTS in report order.
const std::vector<std::string>& check_ids();
/// Position of an id in check_ids(); unknown ids sort last.
std::size_t check_rank(const std::string& id);
bool report_less(const CheckReport& a, const CheckReport& b);

struct CheckOptions {
  /// Empty means every check.
  std::set<std::string> selection;
  std::uint64_t seed = 42;
  /// Restricts prime-indexed checks to one prime.
  std::optional<std::uint64_t> prime;
};

/// Never throws for group-theoretic reasons: budget overruns become
/// SKIPPED(BUDGET) and any other engine error is reported as FAIL.
std::vector<CheckReport> run_checks(const CorpusEntry& entry, const CheckOptions& options);

struct MixedSeries {
  /// 1 < G_1 < ... < G_k = G, each factor nilpotent or semisimple.
  std::vector<Group> terms;
  std::size_t length = 0;
  std::size_t bound = 0;  // h^2 + 2h
  bool within_bound() const noexcept { return length <= bound; }
};

/// The canonical nonsoluble series with every soluble factor refined by its
/// Fitting series.
MixedSeries build_mixed_series(const Group& g, std::size_t h, const Budget& budget,
                               const StructureHints& hints = {});

/// Minimum number of semisimple factors over all alternating normal series,
/// by shortest path through the normal subgroup lattice. Needs |G| small
/// enough for subgroup enumeration.
std::size_t brute_force_lambda(const Group& g, std::uint64_t p, const Budget& budget);

/// Normal subgroups of a p-group P used as lemma instances: P, its derived
/// series and, when P is small, every normal subgroup.
struct NormalSelection {
  std::vector<Group> subgroups;
  bool exhaustive = false;
};

NormalSelection normal_subgroup_selection(const Group& p, const Budget& budget);

}  // namespace glen
