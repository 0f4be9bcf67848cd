#include "glen/group.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <string>
#include <unordered_map>

#include "glen/error.hpp"

namespace glen {

// ---------------------------------------------------------------- Budget

void Budget::validate() const {
  if (max_enumeration == 0 || max_index == 0 || max_subgroup_order == 0) {
    throw Error("budget caps must be positive");
  }
}

Budget Budget::from_environment() {
  Budget b;
  if (const char* env = std::getenv("GLEN_BUDGET_ELEMS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != nullptr && *end == '\0' && v > 0) b.max_enumeration = v;
  }
  return b;
}

// -------------------------------------------------------- StabilizerChain

StabilizerChain::StabilizerChain(std::size_t degree, std::vector<Point> base_prefix)
    : degree_(degree) {
  for (Point b : base_prefix) {
    if (b >= degree) throw Error("base point out of range");
    add_level(b);
  }
}

void StabilizerChain::add_level(Point base) {
  Level level;
  level.base = base;
  level.position.assign(degree_, -1);
  level.position[base] = 0;
  level.orbit.push_back(base);
  level.transversal.emplace_back(degree_);
  level.inverse_transversal.emplace_back(degree_);
  levels_.push_back(std::move(level));
}

void StabilizerChain::rebuild_orbit(std::size_t li) {
  Level& level = levels_[li];
  // keep already known orbit points and their transversal elements
  for (std::size_t k = 0; k < level.orbit.size(); ++k) {
    for (const auto& s : level.gens) {
      Point beta = level.orbit[k];
      Point gamma = s[beta];
      if (level.position[gamma] >= 0) continue;
      level.position[gamma] = static_cast<std::int32_t>(level.orbit.size());
      level.orbit.push_back(gamma);
      Permutation u = level.transversal[k] * s;
      level.inverse_transversal.push_back(u.inverse());
      level.transversal.push_back(std::move(u));
    }
  }
}

std::uint64_t StabilizerChain::order() const noexcept {
  std::uint64_t ord = 1;
  for (const auto& level : levels_) ord *= level.orbit.size();
  return ord;
}

std::pair<Permutation, std::size_t> StabilizerChain::strip(Permutation g,
                                                           std::size_t from) const {
  for (std::size_t li = from; li < levels_.size(); ++li) {
    const Level& level = levels_[li];
    const std::int32_t pos = level.position[g[level.base]];
    if (pos < 0) return {std::move(g), li};
    g *= level.inverse_transversal[static_cast<std::size_t>(pos)];
  }
  return {std::move(g), levels_.size()};
}

bool StabilizerChain::contains(const Permutation& g) const {
  if (g.degree() != degree_) {
    throw DegreeMismatch("element of degree " + std::to_string(g.degree()) +
                         " tested against group of degree " + std::to_string(degree_));
  }
  auto [residue, level] = strip(g);
  return level == levels_.size() && residue.is_identity();
}

void StabilizerChain::insert_strong_generator(const Permutation& g, std::size_t from_level,
                                              std::size_t to_level) {
  // g fixes base points 0..to_level-1; a new level takes its first moved point
  if (to_level == levels_.size()) add_level(*g.first_moved_point());
  for (std::size_t l = from_level; l <= to_level; ++l) {
    levels_[l].gens.push_back(g);
    rebuild_orbit(l);
  }
}

void StabilizerChain::complete(std::size_t from_level) {
  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(from_level);
  while (i >= 0) {
    const auto li = static_cast<std::size_t>(i);
    bool grown = false;
    for (std::size_t k = 0; k < levels_[li].orbit.size() && !grown; ++k) {
      for (std::size_t s = 0; s < levels_[li].gens.size(); ++s) {
        const Level& level = levels_[li];
        const Permutation& gen = level.gens[s];
        const Point gamma = gen[level.orbit[k]];
        Permutation h = level.transversal[k] * gen;
        h *= level.inverse_transversal[static_cast<std::size_t>(level.position[gamma])];
        if (h.is_identity()) continue;
        auto [residue, j] = strip(std::move(h), li + 1);
        if (residue.is_identity()) continue;
        insert_strong_generator(residue, li + 1, j);
        i = static_cast<std::ptrdiff_t>(j);
        grown = true;
        break;
      }
    }
    if (!grown) --i;
  }
}

bool StabilizerChain::extend(const Permutation& g) {
  if (g.degree() != degree_) {
    throw DegreeMismatch("generator of degree " + std::to_string(g.degree()) +
                         " added to chain of degree " + std::to_string(degree_));
  }
  auto [residue, j] = strip(g);
  if (residue.is_identity()) return false;
  // residue fixes base points 0..j-1; give it to levels 0..j
  insert_strong_generator(residue, 0, j);
  complete(j);
  return true;
}

std::uint64_t StabilizerChain::rank(const Permutation& g) const {
  Permutation h = g;
  std::uint64_t r = 0;
  for (const auto& level : levels_) {
    const std::int32_t pos = level.position[h[level.base]];
    if (pos < 0) throw NotASubgroup("rank of a non-member");
    r = r * level.orbit.size() + static_cast<std::uint64_t>(pos);
    h *= level.inverse_transversal[static_cast<std::size_t>(pos)];
  }
  if (!h.is_identity()) throw NotASubgroup("rank of a non-member");
  return r;
}

Permutation StabilizerChain::unrank(std::uint64_t r) const {
  std::vector<std::size_t> digits(levels_.size());
  for (std::size_t li = levels_.size(); li-- > 0;) {
    digits[li] = static_cast<std::size_t>(r % levels_[li].orbit.size());
    r /= levels_[li].orbit.size();
  }
  // element = t_{k-1} * ... * t_1 * t_0
  Permutation g(degree_);
  for (std::size_t li = levels_.size(); li-- > 0;) g *= levels_[li].transversal[digits[li]];
  return g;
}

// ------------------------------------------------------------------ Group

struct Group::State {
  std::size_t degree;
  std::vector<Permutation> generators;
  StabilizerChain chain;
};

Group::Group(std::size_t degree, const std::vector<Permutation>& generators) {
  if (degree == 0) throw Error("group degree must be positive");
  GroupBuilder b(degree);
  for (const auto& g : generators) {
    if (g.degree() != degree) {
      throw DegreeMismatch("generator of degree " + std::to_string(g.degree()) +
                           " for group of degree " + std::to_string(degree));
    }
    b.add(g);
  }
  state_ = b.build().state_;
}

Group Group::trivial(std::size_t degree) { return Group(degree, {}); }

Group Group::symmetric(std::size_t degree) {
  std::vector<Permutation> gens;
  if (degree >= 2) {
    std::vector<Point> cyc(degree);
    for (Point x = 0; x < degree; ++x) cyc[x] = static_cast<Point>((x + 1) % degree);
    gens.emplace_back(std::move(cyc));
    gens.push_back(Permutation::from_cycles(degree, "(0 1)"));
  }
  return Group(degree, gens);
}

std::size_t Group::degree() const noexcept { return state_->degree; }
const std::vector<Permutation>& Group::generators() const noexcept { return state_->generators; }
std::uint64_t Group::order() const noexcept { return state_->chain.order(); }
const StabilizerChain& Group::chain() const noexcept { return state_->chain; }

bool Group::contains(const Permutation& g) const { return state_->chain.contains(g); }

bool Group::is_subgroup_of(const Group& other) const {
  if (degree() != other.degree()) throw DegreeMismatch("subgroup test across degrees");
  return std::all_of(generators().begin(), generators().end(),
                     [&](const Permutation& g) { return other.contains(g); });
}

bool Group::same_as(const Group& other) const {
  return order() == other.order() && is_subgroup_of(other);
}

bool Group::is_normal_in(const Group& ambient) const {
  for (const auto& a : ambient.generators()) {
    for (const auto& g : generators()) {
      if (!contains(g.conjugate_by(a))) return false;
    }
  }
  return true;
}

bool Group::is_abelian() const {
  const auto& gens = generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      if (gens[i] * gens[j] != gens[j] * gens[i]) return false;
    }
  }
  return true;
}

Group Group::join(const std::vector<Permutation>& extra) const {
  GroupBuilder b(*this);
  for (const auto& g : extra) b.add(g);
  return b.build();
}

Permutation Group::random_element(Rng& rng) const {
  return element_at(rng.below(order()));
}

// ----------------------------------------------------------- GroupBuilder

GroupBuilder::GroupBuilder(std::size_t degree) : degree_(degree), chain_(degree) {}

GroupBuilder::GroupBuilder(const Group& start)
    : degree_(start.degree()), chain_(start.chain()), gens_(start.generators()) {}

bool GroupBuilder::add(const Permutation& g) {
  if (g.degree() != degree_) throw DegreeMismatch("generator degree mismatch");
  if (!chain_.extend(g)) return false;
  gens_.push_back(g);
  return true;
}

Group GroupBuilder::build() const {
  return Group(std::make_shared<const Group::State>(Group::State{degree_, gens_, chain_}));
}

// -------------------------------------------------------- basic operations

Group group(std::size_t degree, const std::vector<Permutation>& generators) {
  return Group(degree, generators);
}

bool contains(const Group& g, const Permutation& x) { return g.contains(x); }

void for_each_element(const Group& g, const Budget& budget,
                      const std::function<bool(std::uint64_t, const Permutation&)>& visit) {
  if (g.order() > budget.max_enumeration) {
    throw BudgetExceeded("element enumeration over budget", g.order());
  }
  for (std::uint64_t r = 0; r < g.order(); ++r) {
    if (!visit(r, g.element_at(r))) return;
  }
}

std::vector<Permutation> elements(const Group& g, const Budget& budget) {
  std::vector<Permutation> out;
  out.reserve(static_cast<std::size_t>(std::min(g.order(), budget.max_enumeration)));
  for_each_element(g, budget, [&](std::uint64_t, const Permutation& x) {
    out.push_back(x);
    return true;
  });
  return out;
}

Group normal_closure(const Group& ambient, const std::vector<Permutation>& seeds) {
  for (const auto& s : seeds) {
    if (!ambient.contains(s)) throw NotASubgroup("normal closure seed outside the ambient group");
  }
  GroupBuilder b(ambient.degree());
  for (const auto& s : seeds) b.add(s);
  // closing the generator list under conjugation by ambient generators
  for (std::size_t i = 0; i < b.generators().size(); ++i) {
    const Permutation h = b.generators()[i];
    for (const auto& a : ambient.generators()) b.add(h.conjugate_by(a));
  }
  return b.build();
}

Group commutator_subgroup(const Group& a, const Group& b, const Group& ambient) {
  if (!a.is_subgroup_of(ambient) || !b.is_subgroup_of(ambient)) {
    throw NotASubgroup("commutator arguments must lie in the ambient group");
  }
  std::vector<Permutation> seeds;
  for (const auto& x : a.generators()) {
    for (const auto& y : b.generators()) {
      Permutation c = commutator(x, y);
      if (!c.is_identity()) seeds.push_back(std::move(c));
    }
  }
  return normal_closure(a.join(b), seeds);
}

Group derived_subgroup(const Group& g) { return commutator_subgroup(g, g, g); }

std::vector<Group> derived_series(const Group& g) {
  std::vector<Group> series{g};
  for (;;) {
    Group next = derived_subgroup(series.back());
    if (next.order() == series.back().order()) {
      // a nontrivial perfect term is listed twice to show where it stabilized
      if (!next.is_trivial()) series.push_back(std::move(next));
      break;
    }
    series.push_back(std::move(next));
  }
  return series;
}

bool is_soluble(const Group& g) { return derived_series(g).back().is_trivial(); }

std::optional<std::size_t> derived_length(const Group& g) {
  auto series = derived_series(g);
  if (!series.back().is_trivial()) return std::nullopt;
  return series.size() - 1;
}

bool is_nilpotent_class_at_most(const Group& g, std::size_t c) {
  Group term = g;
  for (std::size_t i = 0; i < c; ++i) {
    if (term.is_trivial()) return true;
    term = commutator_subgroup(term, g, g);
  }
  return term.is_trivial();
}

// ------------------------------------------------------------------ cosets

Permutation canonical_coset_rep(const StabilizerChain& n, const Permutation& g) {
  // Replacing h by u*h with u in the level-i stabilizer of N sends the base
  // point to h(beta) for any beta in the level-i orbit; take the smallest.
  // Earlier base images stay fixed, so the result is unique per coset.
  Permutation h = g;
  for (std::size_t li = 0; li < n.depth(); ++li) {
    const auto& orbit = n.orbit(li);
    std::size_t best = 0;
    for (std::size_t k = 1; k < orbit.size(); ++k) {
      if (h[orbit[k]] < h[orbit[best]]) best = k;
    }
    if (best != 0) h = n.transversal(li, best) * h;
  }
  return h;
}

std::vector<Permutation> coset_transversal(const Group& g, const Group& n, const Budget& budget) {
  const std::uint64_t index = g.order() / n.order();
  if (index > budget.max_index) throw BudgetExceeded("coset count over budget", index);
  std::vector<Permutation> reps{g.identity()};
  std::unordered_map<Permutation, std::size_t, PermutationHash> seen;
  seen.emplace(canonical_coset_rep(n.chain(), reps[0]), 0);
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (const auto& s : g.generators()) {
      Permutation next = reps[i] * s;
      Permutation key = canonical_coset_rep(n.chain(), next);
      if (seen.emplace(std::move(key), reps.size()).second) reps.push_back(std::move(next));
    }
  }
  return reps;
}

// ---------------------------------------------------------- number theory

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t p_part(std::uint64_t n, std::uint64_t p) {
  std::uint64_t r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

bool is_power_of(std::uint64_t n, std::uint64_t p) { return n >= 1 && p_part(n, p) == n; }

}  // namespace glen
