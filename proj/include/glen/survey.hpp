#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "glen/group.hpp"

namespace glen {

/// Subgroups of a desk-sized group up to conjugacy.
class SubgroupInventory {
 public:
  const Group& ambient() const noexcept { return ambient_; }
  const std::vector<Group>& class_representatives() const noexcept { return reps_; }
  const std::vector<std::uint64_t>& class_sizes() const noexcept { return sizes_; }
  std::uint64_t total() const noexcept { return total_; }

  /// Representatives of singleton classes, in inventory order.
  std::vector<Group> normal_subgroups() const;
  /// Every conjugate in class i.
  std::vector<Group> class_members(std::size_t i) const;
  /// Pairs (i, j) such that representative i lies in some member of class j.
  std::vector<std::pair<std::size_t, std::size_t>> containments() const;

 private:
  friend SubgroupInventory enumerate_subgroups(const Group&, const Budget&);
  struct Detail;
  explicit SubgroupInventory(Group ambient) : ambient_(std::move(ambient)) {}

  Group ambient_;
  std::vector<Group> reps_;
  std::vector<std::uint64_t> sizes_;
  std::uint64_t total_ = 0;
  std::shared_ptr<const Detail> detail_;
};

/// Breadth-first: cyclic seeds, then every class representative extended by
/// each element outside it, deduplicated by element set and merged by
/// conjugation. Throws BudgetExceeded above max_subgroup_order.
SubgroupInventory enumerate_subgroups(const Group& g, const Budget& budget);

enum class Quantity { L2, L2x2p, MaxFittingHeight, MaxPLength };
enum class SurveyMode { Exhaustive, WitnessOnly };

std::string quantity_name(Quantity q, std::uint64_t p);

struct MaxInvariantReport {
  Quantity quantity;
  std::uint64_t prime;
  std::size_t value;
  Group witness;
  SurveyMode mode;
};

/// Score of one subgroup, or nullopt when it is outside the quantified family
/// (not soluble, or not p-soluble for MaxPLength).
std::optional<std::size_t> score(const Group& h, Quantity q, std::uint64_t p,
                                 const Budget& budget);

/// Exhaustive maximum over the subgroup classes of g.
MaxInvariantReport max_invariant(const Group& g, Quantity q, std::uint64_t p,
                                 const Budget& budget);
MaxInvariantReport max_invariant(const SubgroupInventory& inv, Quantity q, std::uint64_t p,
                                 const Budget& budget);

/// Seeded search for a subgroup scoring at least target. Candidates are
/// grown greedily from a pool of prime-power-order elements (the supplied
/// pool plus random ones). nullopt means inconclusive.
std::optional<MaxInvariantReport> witness_search(const Group& g, Quantity q, std::uint64_t p,
                                                 std::size_t target, std::uint64_t seed,
                                                 const Budget& budget,
                                                 const std::vector<Permutation>& pool = {});

}  // namespace glen
