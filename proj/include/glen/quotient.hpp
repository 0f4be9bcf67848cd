#pragma once

#include <memory>
#include <unordered_map>
#include <vector>

#include "glen/group.hpp"

namespace glen {

/// Faithful permutation representation of G/N through the right-coset action.
///
/// A trivial kernel gives the identity context (image is G itself) and a
/// kernel equal to G gives the trivial image on one point.
class QuotientContext {
 public:
  const Group& source() const noexcept { return source_; }
  const Group& kernel() const noexcept { return kernel_; }
  const Group& image() const noexcept { return image_; }
  const std::vector<Permutation>& transversal() const noexcept { return transversal_; }
  std::uint64_t index() const noexcept { return source_.order() / kernel_.order(); }
  bool is_identity() const noexcept { return identity_; }

  Permutation push(const Permutation& g) const;
  Group push(const Group& h) const;
  /// A source element mapping to s.
  Permutation lift(const Permutation& s) const;
  std::vector<Permutation> lift(const std::vector<Permutation>& s) const;
  /// Full preimage of a subgroup of the image.
  Group pull(const Group& s) const;

  /// Index of the coset containing g.
  std::size_t coset_of(const Permutation& g) const;

 private:
  friend QuotientContext quotient(const Group&, const Group&, const Budget&);
  QuotientContext(Group source, Group kernel, Group image)
      : source_(std::move(source)), kernel_(std::move(kernel)), image_(std::move(image)) {}

  Group source_;
  Group kernel_;
  Group image_;
  std::vector<Permutation> transversal_;
  std::shared_ptr<std::unordered_map<Permutation, std::size_t, PermutationHash>> coset_index_;
  bool identity_ = false;
};

/// Throws NotNormal with a witness when N is not normal in G, and
/// BudgetExceeded when [G:N] exceeds max_index.
QuotientContext quotient(const Group& g, const Group& n, const Budget& budget);

Permutation push(const QuotientContext& ctx, const Permutation& g);
Group pull(const QuotientContext& ctx, const Group& s);

/// Conjugation action of G on a family of subgroups it permutes.
struct FactorAction {
  Group source;
  std::vector<Group> factors;
  /// Action of each source generator on factor indices.
  std::vector<Permutation> generator_actions;
  /// Image on max(m, 1) points.
  Group image;
  /// Elements normalizing every factor.
  Group kernel;

  /// Action of an arbitrary source element; throws NotPermuted on failure.
  Permutation act(const Permutation& g) const;
};

/// Throws NotPermuted when some conjugate of a factor matches no factor, or
/// matches more than one.
FactorAction induced_factor_action(const Group& g, const std::vector<Group>& factors);

}  // namespace glen
