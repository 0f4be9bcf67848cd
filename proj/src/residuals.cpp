#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "glen/error.hpp"
#include "glen/group.hpp"

namespace glen {

namespace {


Group power_by_enumeration(const Group& g, std::uint64_t k, const Budget& budget) {
  GroupBuilder b(g.degree());
  std::unordered_set<Permutation, PermutationHash> seen;
  for_each_element(g, budget, [&](std::uint64_t, const Permutation& x) {
    Permutation y = x.pow(static_cast<long long>(k));
    if (!y.is_identity() && seen.insert(y).second) b.add(y);
    return true;
  });
  return b.build();
}

// Normal closure of generator powers, then enlarged until every coset
// representative's k-th power lands inside. (xn)^k = x^k n' for normal N, so
// checking one representative per coset is exhaustive.
Group power_by_generators(const Group& g, std::uint64_t k, const Budget& budget) {
  std::vector<Permutation> seeds;
  for (const auto& x : g.generators()) {
    Permutation y = x.pow(static_cast<long long>(k));
    if (!y.is_identity()) seeds.push_back(std::move(y));
  }
  Group n = normal_closure(g, seeds);
  for (;;) {
    bool grown = false;
    for (const auto& t : coset_transversal(g, n, budget)) {
      Permutation y = t.pow(static_cast<long long>(k));
      if (!n.contains(y)) {
        seeds.push_back(std::move(y));
        n = normal_closure(g, seeds);
        grown = true;
        break;
      }
    }
    if (!grown) return n;
  }
}

}  // namespace

PowerSubgroup power_subgroup(const Group& g, std::uint64_t k, const Group& ambient,
                             const Budget& budget, std::optional<PowerMode> mode) {
  if (k == 0) throw Error("power exponent must be positive");
  if (!g.is_subgroup_of(ambient)) throw NotASubgroup("power_subgroup argument outside ambient");
  const PowerMode chosen =
      mode.value_or(g.order() <= budget.max_enumeration ? PowerMode::Enumeration
                                                        : PowerMode::GeneratorClosure);
  if (chosen == PowerMode::Enumeration) {
    return {power_by_enumeration(g, k, budget), PowerMode::Enumeration};
  }
  return {power_by_generators(g, k, budget), PowerMode::GeneratorClosure};
}

Group p_residual(const Group& g, std::uint64_t p) {
  if (!is_prime(p)) throw Error("p_residual needs a prime");
  Group x = g;
  for (;;) {
    // X/next is elementary abelian of exponent p and next contains O^p(X)
    std::vector<Permutation> seeds = derived_subgroup(x).generators();
    for (const auto& h : x.generators()) {
      Permutation y = h.pow(static_cast<long long>(p));
      if (!y.is_identity()) seeds.push_back(std::move(y));
    }
    Group next = normal_closure(g, seeds);
    if (next.order() == x.order()) return x;
    x = std::move(next);
  }
}

Group p_prime_residual(const Group& g, std::uint64_t p, const Group& sylow) {
  if (!sylow.is_subgroup_of(g)) throw NotASubgroup("Sylow subgroup outside the group");
  if (!is_power_of(sylow.order(), p) || sylow.order() != p_part(g.order(), p)) {
    throw HintError("supplied subgroup is not a Sylow " + std::to_string(p) + "-subgroup");
  }
  return normal_closure(g, sylow.generators());
}

Group subgroup_intersection(const Group& a, const Group& b, const Budget& budget) {
  if (a.degree() != b.degree()) throw DegreeMismatch("intersection across degrees");
  const Group& small = a.order() <= b.order() ? a : b;
  const Group& large = a.order() <= b.order() ? b : a;
  if (small.is_subgroup_of(large)) return small;
  GroupBuilder out(a.degree());
  for_each_element(small, budget, [&](std::uint64_t, const Permutation& x) {
    if (!x.is_identity() && large.contains(x)) out.add(x);
    return true;
  });
  return out.build();
}

Group action_kernel(const Group& g, const std::vector<Permutation>& action) {
  if (action.size() != g.generators().size()) {
    throw Error("action needs one image per generator");
  }
  const std::size_t n = g.degree();
  const std::size_t m = action.empty() ? 0 : action.front().degree();
  if (m == 0) return g;
  std::vector<Point> prefix(m);
  for (std::size_t i = 0; i < m; ++i) prefix[i] = static_cast<Point>(n + i);
  StabilizerChain chain(n + m, prefix);
  for (std::size_t i = 0; i < action.size(); ++i) {
    std::vector<Point> images(n + m);
    for (Point x = 0; x < n; ++x) images[x] = g.generators()[i][x];
    for (Point y = 0; y < m; ++y) images[n + y] = static_cast<Point>(n + action[i][y]);
    chain.extend(Permutation(std::move(images)));
  }
  if (chain.depth() <= m) return Group::trivial(n);
  std::vector<Permutation> gens;
  for (const auto& s : chain.level_generators(m)) gens.push_back(s.restrict_to(n));
  return Group(n, gens);
}

Group centralizer_of_normal(const Group& g, const std::vector<Permutation>& gens,
                            const Budget& budget) {
  std::vector<Permutation> points;
  std::unordered_map<Permutation, Point, PermutationHash> index;
  for (const auto& s : gens) {
    if (s.is_identity() || index.count(s) != 0) continue;
    index.emplace(s, static_cast<Point>(points.size()));
    points.push_back(s);
    for (std::size_t i = points.size() - 1; i < points.size(); ++i) {
      for (const auto& a : g.generators()) {
        Permutation c = points[i].conjugate_by(a);
        if (index.emplace(c, static_cast<Point>(points.size())).second) {
          points.push_back(std::move(c));
          if (points.size() > budget.max_index) {
            throw BudgetExceeded("conjugation orbit over budget", points.size());
          }
        }
      }
    }
  }
  if (points.empty()) return g;
  std::vector<Permutation> action;
  for (const auto& a : g.generators()) {
    std::vector<Point> images(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      auto it = index.find(points[i].conjugate_by(a));
      if (it == index.end()) throw NotNormal("generator set is not closed under conjugation");
      images[i] = it->second;
    }
    action.emplace_back(std::move(images));
  }
  return action_kernel(g, action);
}

}  // namespace glen
