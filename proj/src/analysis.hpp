#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "glen/checks.hpp"
#include "glen/corpus.hpp"
#include "glen/survey.hpp"

namespace glen::detail {

/// Per-entry caches shared by the checks. Not thread-safe; one per entry.
class Analysis {
 public:
  Analysis(const CorpusEntry& entry, std::uint64_t seed);

  const CorpusEntry& entry;
  const Group g;
  const Budget& budget;
  const StructureHints& hints;
  /// Prime divisors of |G|.
  std::vector<std::uint64_t> primes;

  const SeriesCertificate& lambda(std::uint64_t p);
  const SeriesCertificate& nonsoluble();
  const KernelSubgroup& kernel(std::uint64_t p);
  const Group& sylow(std::uint64_t p);
  /// Null unless the tier is FULL_SURVEY and |G| fits the survey budget.
  const SubgroupInventory* inventory();

  struct Bound {
    std::size_t value;
    bool exhaustive;
    Group witness;
  };
  /// Exhaustive maximum when the inventory exists, else a witness scoring at
  /// least target (nullopt when the search is inconclusive).
  std::optional<Bound> at_least(Quantity q, std::uint64_t p, std::size_t target,
                                const std::string& label);
  std::uint64_t seed_for(const std::string& label) const;

 private:
  std::uint64_t seed_;
  std::map<std::uint64_t, SeriesCertificate> lambda_;
  std::optional<SeriesCertificate> nonsoluble_;
  std::map<std::uint64_t, KernelSubgroup> kernel_;
  std::map<std::uint64_t, Group> sylow_;
  bool inventory_tried_ = false;
  std::unique_ptr<SubgroupInventory> inventory_;
  std::map<std::pair<int, std::uint64_t>, Bound> exact_;
  std::vector<Permutation> pool_;
};

CheckReport make_report(const Analysis& a, const std::string& id, std::uint64_t prime);
void skip(CheckReport& r, SkipReason reason, const std::string& note);
void verdict(CheckReport& r, bool holds);
std::vector<std::string> cycles_of(const Group& h);

// Lemma checks, implemented in lemmas.cpp. Each appends one report per
// instance prime.
void check_c8(Analysis& a, std::uint64_t p, CheckReport& r);
void check_c9(Analysis& a, std::uint64_t p, CheckReport& r);
void check_c10(Analysis& a, std::uint64_t p, CheckReport& r);
void check_c11(Analysis& a, CheckReport& r);
void check_c12(Analysis& a, std::uint64_t p, CheckReport& r);

}  // namespace glen::detail
