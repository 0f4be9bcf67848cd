#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "glen/permutation.hpp"
#include "glen/rng.hpp"

namespace glen {

/// Desk-scale caps. All three must be positive.
struct Budget {
  std::uint64_t max_enumeration = 1'000'000;
  std::uint64_t max_index = 100'000;
  std::uint64_t max_subgroup_order = 2000;

  void validate() const;
  /// Defaults, with GLEN_BUDGET_ELEMS overriding max_enumeration when set.
  static Budget from_environment();
};

/// Base and strong generating set built by deterministic Schreier-Sims.
///
/// Level i stores the strong generators fixing base points 0..i-1, the orbit
/// of base point i under them and an explicit transversal.
class StabilizerChain {
 public:
  explicit StabilizerChain(std::size_t degree, std::vector<Point> base_prefix = {});

  /// Adds g to the group. Returns false when g was already a member.
  bool extend(const Permutation& g);

  std::size_t degree() const noexcept { return degree_; }
  std::size_t depth() const noexcept { return levels_.size(); }
  std::uint64_t order() const noexcept;
  bool contains(const Permutation& g) const;

  Point base_point(std::size_t level) const { return levels_[level].base; }
  std::size_t orbit_size(std::size_t level) const { return levels_[level].orbit.size(); }
  const std::vector<Permutation>& level_generators(std::size_t level) const {
    return levels_[level].gens;
  }
  const std::vector<Point>& orbit(std::size_t level) const { return levels_[level].orbit; }
  /// Element mapping the level's base point to orbit(level)[k].
  const Permutation& transversal(std::size_t level, std::size_t k) const {
    return levels_[level].transversal[k];
  }
  const Permutation& inverse_transversal(std::size_t level, std::size_t k) const {
    return levels_[level].inverse_transversal[k];
  }

  /// Sifts g from `from` downwards. Returns the residue and the level at
  /// which sifting stopped (depth() when every level was passed).
  std::pair<Permutation, std::size_t> strip(Permutation g, std::size_t from = 0) const;

  /// Bijection between the group and {0..order-1}. rank() requires membership.
  std::uint64_t rank(const Permutation& g) const;
  Permutation unrank(std::uint64_t r) const;

 private:
  struct Level {
    Point base = 0;
    std::vector<Permutation> gens;
    std::vector<std::int32_t> position;  // point -> index in orbit, -1 if absent
    std::vector<Point> orbit;
    std::vector<Permutation> transversal;  // maps base -> orbit[k]
    std::vector<Permutation> inverse_transversal;
  };

  void add_level(Point base);
  void rebuild_orbit(std::size_t level);
  void insert_strong_generator(const Permutation& g, std::size_t from_level, std::size_t to_level);
  void complete(std::size_t from_level);

  std::size_t degree_;
  std::vector<Level> levels_;
};

/// Immutable finitely generated permutation group. Copies share state.
class Group {
 public:
  /// Group on `degree` points generated by `generators`. Redundant
  /// generators (already in the span of earlier ones) are dropped.
  Group(std::size_t degree, const std::vector<Permutation>& generators);
  static Group trivial(std::size_t degree);
  static Group symmetric(std::size_t degree);

  std::size_t degree() const noexcept;
  const std::vector<Permutation>& generators() const noexcept;
  std::uint64_t order() const noexcept;
  bool is_trivial() const noexcept { return order() == 1; }
  bool contains(const Permutation& g) const;
  const StabilizerChain& chain() const noexcept;

  bool is_subgroup_of(const Group& other) const;
  bool same_as(const Group& other) const;
  /// True when every generator of `ambient` normalizes this group.
  bool is_normal_in(const Group& ambient) const;
  bool is_abelian() const;

  /// The group generated by this one together with `extra`.
  Group join(const std::vector<Permutation>& extra) const;
  Group join(const Group& other) const { return join(other.generators()); }

  std::uint64_t rank(const Permutation& g) const { return chain().rank(g); }
  Permutation element_at(std::uint64_t r) const { return chain().unrank(r); }
  Permutation random_element(Rng& rng) const;
  Permutation identity() const { return Permutation(degree()); }

 private:
  struct State;
  explicit Group(std::shared_ptr<const State> state) : state_(std::move(state)) {}
  friend class GroupBuilder;
  std::shared_ptr<const State> state_;
};

/// Incremental construction of a group, keeping only non-redundant generators.
class GroupBuilder {
 public:
  explicit GroupBuilder(std::size_t degree);
  explicit GroupBuilder(const Group& start);

  /// Returns true when g enlarged the group.
  bool add(const Permutation& g);
  bool contains(const Permutation& g) const { return chain_.contains(g); }
  std::uint64_t order() const noexcept { return chain_.order(); }
  const std::vector<Permutation>& generators() const noexcept { return gens_; }
  Group build() const;

 private:
  std::size_t degree_;
  StabilizerChain chain_;
  std::vector<Permutation> gens_;
};

Group group(std::size_t degree, const std::vector<Permutation>& generators);
bool contains(const Group& g, const Permutation& x);

/// All elements in rank order; throws BudgetExceeded above max_enumeration.
std::vector<Permutation> elements(const Group& g, const Budget& budget);
/// Visits every element in rank order; the visitor may return false to stop.
void for_each_element(const Group& g, const Budget& budget,
                      const std::function<bool(std::uint64_t, const Permutation&)>& visit);

Group normal_closure(const Group& ambient, const std::vector<Permutation>& seeds);
Group commutator_subgroup(const Group& a, const Group& b, const Group& ambient);
Group derived_subgroup(const Group& g);
std::vector<Group> derived_series(const Group& g);
bool is_soluble(const Group& g);
/// nullopt when the group is not soluble.
std::optional<std::size_t> derived_length(const Group& g);
bool is_nilpotent_class_at_most(const Group& g, std::size_t c);

enum class PowerMode { Enumeration, GeneratorClosure };

struct PowerSubgroup {
  Group group;
  PowerMode mode;
};

/// <g^k : g in G>. Auto picks enumeration when |G| fits the budget.
PowerSubgroup power_subgroup(const Group& g, std::uint64_t k, const Group& ambient,
                             const Budget& budget,
                             std::optional<PowerMode> mode = std::nullopt);

/// O^p(G), the smallest normal subgroup with p-group quotient.
Group p_residual(const Group& g, std::uint64_t p);
/// O^{p'}(G) as the normal closure of a Sylow p-subgroup supplied by the caller.
Group p_prime_residual(const Group& g, std::uint64_t p, const Group& sylow);

Group subgroup_intersection(const Group& a, const Group& b, const Budget& budget);

/// Kernel of the homomorphism sending generator i of g to action[i].
/// Computed as a pointwise stabilizer in the combined representation.
Group action_kernel(const Group& g, const std::vector<Permutation>& action);

/// Centralizer of <gens> in g, where g normalizes <gens>: the kernel of the
/// conjugation action of g on the g-orbits of the generators.
Group centralizer_of_normal(const Group& g, const std::vector<Permutation>& gens,
                            const Budget& budget);

/// Canonical representative of the coset N g (equivalently g N for normal N).
Permutation canonical_coset_rep(const StabilizerChain& n, const Permutation& g);

/// Coset representatives of N in G in breadth-first generator order, the
/// first being the identity. Throws BudgetExceeded past max_index.
std::vector<Permutation> coset_transversal(const Group& g, const Group& n,
                                           const Budget& budget);

/// Primes dividing n, ascending.
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);
bool is_prime(std::uint64_t n);
/// Largest power of p dividing n.
std::uint64_t p_part(std::uint64_t n, std::uint64_t p);
bool is_power_of(std::uint64_t n, std::uint64_t p);

}  // namespace glen
