#include "glen/quotient.hpp"

#include <algorithm>

#include "glen/error.hpp"

namespace glen {

QuotientContext quotient(const Group& g, const Group& n, const Budget& budget) {
  if (!n.is_subgroup_of(g)) throw NotASubgroup("quotient kernel is not a subgroup");
  for (const auto& a : g.generators()) {
    for (const auto& x : n.generators()) {
      Permutation c = x.conjugate_by(a);
      if (!n.contains(c)) throw NotNormal("kernel not normal: conjugate " + c.to_cycles() +
                                          " of " + x.to_cycles() + " lies outside");
    }
  }

  if (n.is_trivial()) {
    QuotientContext ctx(g, n, g);
    ctx.identity_ = true;
    return ctx;
  }

  const std::uint64_t index = g.order() / n.order();
  if (index > budget.max_index) throw BudgetExceeded("quotient index over budget", index);

  auto lookup = std::make_shared<std::unordered_map<Permutation, std::size_t, PermutationHash>>();
  std::vector<Permutation> reps{g.identity()};
  lookup->emplace(canonical_coset_rep(n.chain(), reps[0]), 0);
  // breadth-first over generator application from the identity coset
  std::vector<std::vector<Point>> images(g.generators().size());
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t s = 0; s < g.generators().size(); ++s) {
      Permutation next = reps[i] * g.generators()[s];
      Permutation key = canonical_coset_rep(n.chain(), next);
      auto [it, inserted] = lookup->emplace(std::move(key), reps.size());
      if (inserted) reps.push_back(std::move(next));
      images[s].push_back(static_cast<Point>(it->second));
    }
  }

  std::vector<Permutation> image_gens;
  for (auto& im : images) image_gens.emplace_back(std::move(im));
  Group image(reps.size(), image_gens);
  if (image.order() != index) {
    throw ConsistencyError("coset image has order " + std::to_string(image.order()) +
                           ", expected " + std::to_string(index));
  }
  QuotientContext ctx(g, n, std::move(image));
  ctx.transversal_ = std::move(reps);
  ctx.coset_index_ = std::move(lookup);
  return ctx;
}

std::size_t QuotientContext::coset_of(const Permutation& g) const {
  if (identity_) throw Error("coset_of on the identity context");
  auto it = coset_index_->find(canonical_coset_rep(kernel_.chain(), g));
  if (it == coset_index_->end()) throw NotASubgroup("element outside the quotient source");
  return it->second;
}

Permutation QuotientContext::push(const Permutation& g) const {
  if (!source_.contains(g)) throw NotASubgroup("push of an element outside the source");
  if (identity_) return g;
  std::vector<Point> images(transversal_.size());
  for (std::size_t i = 0; i < transversal_.size(); ++i) {
    images[i] = static_cast<Point>(coset_of(transversal_[i] * g));
  }
  return Permutation(std::move(images));
}

Group QuotientContext::push(const Group& h) const {
  std::vector<Permutation> gens;
  for (const auto& x : h.generators()) gens.push_back(push(x));
  return Group(image_.degree(), gens);
}

Permutation QuotientContext::lift(const Permutation& s) const {
  if (!image_.contains(s)) throw NotASubgroup("lift of an element outside the image");
  if (identity_) return s;
  // the coset action is regular, so s is determined by where it sends coset 0
  return transversal_[s[0]];
}

std::vector<Permutation> QuotientContext::lift(const std::vector<Permutation>& s) const {
  std::vector<Permutation> out;
  out.reserve(s.size());
  for (const auto& x : s) out.push_back(lift(x));
  return out;
}

Group QuotientContext::pull(const Group& s) const {
  if (!s.is_subgroup_of(image_)) throw NotASubgroup("pull of a non-subgroup of the image");
  if (identity_) return s;
  std::vector<Permutation> gens = kernel_.generators();
  for (const auto& x : s.generators()) gens.push_back(lift(x));
  return Group(source_.degree(), gens);
}

Permutation push(const QuotientContext& ctx, const Permutation& g) { return ctx.push(g); }
Group pull(const QuotientContext& ctx, const Group& s) { return ctx.pull(s); }

// ------------------------------------------------------------ FactorAction

namespace {

std::size_t match_factor(const std::vector<Group>& factors, std::size_t i, const Permutation& g) {
  const Group& f = factors[i];
  std::vector<Permutation> conj;
  conj.reserve(f.generators().size());
  for (const auto& x : f.generators()) conj.push_back(x.conjugate_by(g));
  std::optional<std::size_t> found;
  for (std::size_t j = 0; j < factors.size(); ++j) {
    if (factors[j].order() != f.order()) continue;
    bool all = std::all_of(conj.begin(), conj.end(),
                           [&](const Permutation& c) { return factors[j].contains(c); });
    if (!all) continue;
    if (found) throw NotPermuted("conjugate of factor " + std::to_string(i) + " matches two factors");
    found = j;
  }
  if (!found) throw NotPermuted("conjugate of factor " + std::to_string(i) + " matches no factor");
  return *found;
}

Permutation factor_permutation(const std::vector<Group>& factors, const Permutation& g) {
  std::vector<Point> images(factors.size());
  for (std::size_t i = 0; i < factors.size(); ++i) {
    images[i] = static_cast<Point>(match_factor(factors, i, g));
  }
  try {
    return Permutation(std::move(images));
  } catch (const ParseError&) {
    throw NotPermuted("conjugation does not permute the factors bijectively");
  }
}

}  // namespace

Permutation FactorAction::act(const Permutation& g) const {
  if (factors.empty()) return Permutation(1);
  return factor_permutation(factors, g);
}

FactorAction induced_factor_action(const Group& g, const std::vector<Group>& factors) {
  for (const auto& f : factors) {
    if (f.degree() != g.degree()) throw DegreeMismatch("factor degree differs from the group");
  }
  if (factors.empty()) {
    std::vector<Permutation> acts(g.generators().size(), Permutation(1));
    return FactorAction{g, factors, acts, Group::trivial(1), g};
  }
  std::vector<Permutation> acts;
  for (const auto& a : g.generators()) acts.push_back(factor_permutation(factors, a));
  Group image(factors.size(), acts);
  Group kernel = action_kernel(g, acts);
  if (kernel.order() * image.order() != g.order()) {
    throw ConsistencyError("factor action kernel and image orders disagree");
  }
  return FactorAction{g, factors, std::move(acts), std::move(image), std::move(kernel)};
}

}  // namespace glen
