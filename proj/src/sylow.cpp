#include <numeric>

#include "glen/error.hpp"
#include "glen/structure.hpp"

namespace glen {

namespace {

bool normalizes(const Permutation& x, const Group& p) {
  for (const auto& s : p.generators()) {
    if (!p.contains(s.conjugate_by(x))) return false;
  }
  return true;
}

// Each pass extends P by a p-element of N_G(P) outside P; one exists until P
// is Sylow because p divides [N_G(P) : P].
Group discover_sylow(const Group& g, std::uint64_t p, std::uint64_t target, const Budget& budget) {
  std::vector<Permutation> p_elements;
  for_each_element(g, budget, [&](std::uint64_t, const Permutation& x) {
    if (!x.is_identity() && is_power_of(x.order(), p)) p_elements.push_back(x);
    return true;
  });
  Group sylow_p = Group::trivial(g.degree());
  while (sylow_p.order() < target) {
    bool grown = false;
    for (const auto& x : p_elements) {
      if (sylow_p.contains(x) || !normalizes(x, sylow_p)) continue;
      sylow_p = sylow_p.join({x});
      grown = true;
      break;
    }
    if (!grown) throw ConsistencyError("no normalizing p-element found below the Sylow order");
  }
  return sylow_p;
}

}  // namespace

Group sylow(const Group& g, std::uint64_t p, const Budget& budget, const StructureHints& hints) {
  if (!is_prime(p)) throw Error("sylow needs a prime");
  const std::uint64_t target = p_part(g.order(), p);
  if (auto it = hints.sylow.find(p); it != hints.sylow.end()) {
    for (const auto& x : it->second) {
      if (x.degree() != g.degree()) throw HintError("Sylow hint has the wrong degree");
    }
    Group hinted(g.degree(), it->second);
    if (!hinted.is_subgroup_of(g) || hinted.order() != target) {
      throw HintError("Sylow " + std::to_string(p) + "-subgroup hint has order " +
                      std::to_string(hinted.order()) + ", expected " + std::to_string(target));
    }
    return hinted;
  }
  if (target == 1) return Group::trivial(g.degree());
  if (target == g.order()) return g;
  return discover_sylow(g, p, target, budget);
}

// ------------------------------------------------------------------ Fitting

Group fitting_subgroup(const Group& g, const Budget& budget) {
  std::vector<Permutation> gens;
  for (auto p : prime_divisors(g.order())) {
    Group o = p_core(g, p, budget);
    gens.insert(gens.end(), o.generators().begin(), o.generators().end());
  }
  return Group(g.degree(), gens);
}

std::vector<Group> fitting_series(const Group& g, const Budget& budget) {
  if (!is_soluble(g)) throw NotSoluble("Fitting series of a nonsoluble group");
  std::vector<Group> series{Group::trivial(g.degree())};
  QuotientTower tower(g);
  while (!tower.top().is_trivial()) {
    Group f = fitting_subgroup(tower.top(), budget);
    if (f.is_trivial()) throw ConsistencyError("soluble group with trivial Fitting subgroup");
    series.push_back(tower.pull(f));
    if (f.order() == tower.top().order()) break;
    tower.divide(f, budget);
  }
  return series;
}

std::size_t fitting_height(const Group& g, const Budget& budget) {
  return fitting_series(g, budget).size() - 1;
}

std::size_t p_length(const Group& g, std::uint64_t p, const Budget& budget) {
  if (!is_p_soluble(g, p, budget)) {
    throw NotPSoluble("p-length of a group that is not " + std::to_string(p) + "-soluble");
  }
  std::size_t count = 0;
  QuotientTower tower(g);
  for (;;) {
    if (tower.top().is_trivial()) return count;
    Group q = p_prime_core(tower.top(), p, budget);
    if (q.order() == tower.top().order()) return count;
    tower.divide(q, budget);
    Group o = p_core(tower.top(), p, budget);
    if (o.is_trivial()) throw ConsistencyError("p-soluble quotient with trivial O_p");
    ++count;
    if (o.order() == tower.top().order()) return count;
    tower.divide(o, budget);
  }
}

// ------------------------------------------------------- (2 x 2')-series

std::vector<Group> lower_2x2_series(const Group& h, const Budget& budget) {
  if (!is_soluble(h)) throw NotSoluble("lower (2x2')-series of a nonsoluble group");
  std::vector<Group> series{h};
  while (!series.back().is_trivial()) {
    const Group d = series.back();
    Group two = p_residual(d, 2);
    Group odd = p_prime_residual(d, 2, sylow(d, 2, budget));
    Group next = subgroup_intersection(two, odd, budget);
    if (next.order() == d.order()) throw ConsistencyError("lower (2x2')-series stalled");
    series.push_back(std::move(next));
  }
  return series;
}

std::size_t l_2x2prime(const Group& h, const Budget& budget) {
  return lower_2x2_series(h, budget).size() - 1;
}

// ---------------------------------------------------------------- varieties

void VarietySpec::validate() const {
  if (!is_prime(prime)) throw Error("variety prime is not prime");
  if (pairs.empty()) throw Error("variety spec needs at least one pair");
  if (pairs.size() > 1) {
    for (const auto& [a, d] : pairs) {
      if (a == 0 && d == 0) throw Error("variety pair (0, 0) only allowed as the identity spec");
    }
  }
}

VarietyResult variety_residual_chain(const Group& p_group, const VarietySpec& spec,
                                     const Group& ambient, const Budget& budget) {
  spec.validate();
  if (!is_power_of(p_group.order(), spec.prime)) {
    throw NotAPGroup("variety test needs a " + std::to_string(spec.prime) + "-group");
  }
  VarietyResult out;
  out.chain.push_back(p_group);
  Group x = p_group;
  for (auto it = spec.pairs.rbegin(); it != spec.pairs.rend(); ++it) {
    const auto [a, d] = *it;
    for (unsigned i = 0; i < d && !x.is_trivial(); ++i) {
      x = derived_subgroup(x);
      out.chain.push_back(x);
    }
    if (a > 0 && !x.is_trivial()) {
      std::uint64_t k = 1;
      for (unsigned i = 0; i < a; ++i) k *= spec.prime;
      x = power_subgroup(x, k, ambient, budget).group;
      out.chain.push_back(x);
    }
  }
  out.member = x.is_trivial();
  return out;
}

std::uint64_t exponent_of(const Group& g, const Budget& budget) {
  std::uint64_t e = 1;
  for_each_element(g, budget, [&](std::uint64_t, const Permutation& x) {
    e = std::lcm(e, x.order());
    return true;
  });
  return e;
}

}  // namespace glen
