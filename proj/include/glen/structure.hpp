#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "glen/group.hpp"
#include "glen/quotient.hpp"

namespace glen {

/// Optional subgroup hints for groups too large to enumerate. Hints are always
/// verified before use and never trusted.
struct StructureHints {
  /// Generators of the nonabelian simple direct factors of the socle.
  std::vector<std::vector<Permutation>> socle_factors;
  /// Generators of minimal normal subgroups; used as a cross-check.
  std::vector<std::vector<Permutation>> minimal_normals;
  std::map<std::uint64_t, std::vector<Permutation>> sylow;

  bool empty() const noexcept {
    return socle_factors.empty() && minimal_normals.empty() && sylow.empty();
  }
};

struct MinimalNormals {
  std::vector<Group> subgroups;
  /// True when the result came from verified socle hints instead of discovery.
  bool hinted = false;
};

/// Discovery mode enumerates G, takes normal closures of conjugacy class
/// representatives of prime order and keeps the inclusion-minimal ones.
/// Hint mode applies when the socle-factor hints all lie in G and are
/// permuted by G; it falls back to discovery when verification fails.
MinimalNormals minimal_normal_subgroups(const Group& g, const Budget& budget,
                                        const StructureHints& hints = {});

/// Perfect, and discovery inside it finds no proper minimal normal subgroup.
bool is_nonabelian_simple(const Group& s, const Budget& budget);

Group soluble_radical(const Group& g, const Budget& budget, const StructureHints& hints = {});
Group p_soluble_radical(const Group& g, std::uint64_t p, const Budget& budget,
                        const StructureHints& hints = {});
bool is_p_soluble(const Group& g, std::uint64_t p, const Budget& budget,
                  const StructureHints& hints = {});
/// O_p(G), the largest normal p-subgroup.
Group p_core(const Group& g, std::uint64_t p, const Budget& budget,
             const StructureHints& hints = {});
/// O_{p'}(G), the largest normal subgroup of order prime to p.
Group p_prime_core(const Group& g, std::uint64_t p, const Budget& budget,
                   const StructureHints& hints = {});

struct SocleDecomposition {
  Group socle;
  std::vector<Group> minimal_normals;
  /// Nonabelian simple direct factors of the nonabelian minimal normals.
  std::vector<Group> simple_factors;
  /// Product of the abelian minimal normal subgroups.
  Group abelian_part;
  bool hinted = false;
};

SocleDecomposition socle_decomposition(const Group& g, const Budget& budget,
                                       const StructureHints& hints = {});

struct KernelSubgroup {
  Group kernel;
  /// G is p-soluble, so the factor set was empty and K_p(G) = G by convention.
  bool degenerate = false;
};

/// K_p(G): preimage of the kernel of the conjugation action of G/R_p(G) on
/// the simple socle factors of order divisible by p.
KernelSubgroup kernel_subgroup(const Group& g, std::uint64_t p, const Budget& budget,
                               const StructureHints& hints = {});
/// K_{p,i}(G) for i >= 1.
Group higher_kernel(const Group& g, std::uint64_t p, std::size_t i, const Budget& budget,
                    const StructureHints& hints = {});

enum class LayerKind { PSoluble, Semisimple };

struct SeriesLayer {
  /// G_i as a subgroup of the original group.
  Group subgroup;
  /// Kind of the factor G_i / G_{i-1}.
  LayerKind kind;
  /// For semisimple layers: generators in G of each simple factor modulo G_{i-1}.
  std::vector<std::vector<Permutation>> factors;
};

/// Alternating normal series 1 < G_1 < ... < G_k = G. The trivial bottom is implicit.
struct SeriesCertificate {
  Group group;
  std::uint64_t prime;
  std::vector<SeriesLayer> layers;
  std::size_t lambda = 0;
};

/// Canonical upper series: strip R_p, then the product of the simple socle
/// factors (all of which have order divisible by p), and repeat.
SeriesCertificate non_p_soluble_length(const Group& g, std::uint64_t p, const Budget& budget,
                                       const StructureHints& hints = {});
/// The same series built from the soluble radical and all nonabelian socle factors.
SeriesCertificate nonsoluble_length(const Group& g, const Budget& budget,
                                    const StructureHints& hints = {});

/// Sylow p-subgroup, from hints.sylow[p] when present (verified), else discovery.
Group sylow(const Group& g, std::uint64_t p, const Budget& budget,
            const StructureHints& hints = {});

Group fitting_subgroup(const Group& g, const Budget& budget);
/// Ascending Fitting series 1 = F_0 < F_1 < ... < F_h = G of a soluble group.
std::vector<Group> fitting_series(const Group& g, const Budget& budget);
std::size_t fitting_height(const Group& g, const Budget& budget);

/// Number of p-factors in the upper p-series; throws NotPSoluble.
std::size_t p_length(const Group& g, std::uint64_t p, const Budget& budget);

/// D_1 = H and D_{i+1} = O^2(D_i) ∩ O^{2'}(D_i), down to the trivial group.
std::vector<Group> lower_2x2_series(const Group& h, const Budget& budget);
/// Number of nontrivial terms of the lower (2x2')-series.
std::size_t l_2x2prime(const Group& h, const Budget& budget);

/// B_{p^{a_1}} A^{d_1} ... B_{p^{a_n}} A^{d_n}, leftmost pair first.
struct VarietySpec {
  std::uint64_t prime = 2;
  std::vector<std::pair<unsigned, unsigned>> pairs;

  void validate() const;
};

struct VarietyResult {
  bool member = false;
  /// P followed by every intermediate verbal residual.
  std::vector<Group> chain;
};

/// Peels verbal residuals from the rightmost factor; member iff the last is trivial.
VarietyResult variety_residual_chain(const Group& p_group, const VarietySpec& spec,
                                     const Group& ambient, const Budget& budget);

std::uint64_t exponent_of(const Group& g, const Budget& budget);

/// Chains quotient contexts so subgroups of the last image can be pulled
/// back to the original group.
class QuotientTower {
 public:
  explicit QuotientTower(Group base) : base_(std::move(base)), top_(base_) {}

  const Group& base() const noexcept { return base_; }
  const Group& top() const noexcept { return top_; }
  /// True while every step so far had a trivial kernel.
  bool faithful() const noexcept { return faithful_; }

  /// Replaces the top by top/n.
  void divide(const Group& n, const Budget& budget);
  Group pull(const Group& s) const;
  Permutation lift(const Permutation& x) const;

 private:
  Group base_;
  Group top_;
  std::vector<QuotientContext> steps_;
  bool faithful_ = true;
};

}  // namespace glen
