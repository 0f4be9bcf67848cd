#include "glen/structure.hpp"

#include <algorithm>
#include <optional>

#include "glen/error.hpp"

namespace glen {

// ------------------------------------------------------------ QuotientTower

void QuotientTower::divide(const Group& n, const Budget& budget) {
  QuotientContext ctx = quotient(top_, n, budget);
  faithful_ = faithful_ && ctx.is_identity();
  top_ = ctx.image();
  steps_.push_back(std::move(ctx));
}

Group QuotientTower::pull(const Group& s) const {
  Group out = s;
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) out = it->pull(out);
  return out;
}

Permutation QuotientTower::lift(const Permutation& x) const {
  Permutation out = x;
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) out = it->lift(out);
  return out;
}

namespace {

const StructureHints kNoHints{};

std::vector<Group> discover_minimal_normals(const Group& g, const Budget& budget) {
  if (g.is_trivial()) return {};
  if (g.order() > budget.max_enumeration) {
    throw BudgetExceeded("minimal normal discovery needs enumeration", g.order());
  }
  // one normal closure per conjugacy class of elements of prime order
  std::vector<bool> seen(g.order(), false);
  std::vector<Group> candidates;
  seen[0] = true;
  for (std::uint64_t r = 1; r < g.order(); ++r) {
    if (seen[r]) continue;
    Permutation x = g.element_at(r);
    seen[r] = true;
    std::vector<Permutation> frontier{x};
    while (!frontier.empty()) {
      std::vector<Permutation> next;
      for (const auto& y : frontier) {
        for (const auto& a : g.generators()) {
          Permutation c = y.conjugate_by(a);
          std::uint64_t k = g.rank(c);
          if (!seen[k]) {
            seen[k] = true;
            next.push_back(std::move(c));
          }
        }
      }
      frontier.swap(next);
    }
    if (is_prime(x.order())) candidates.push_back(normal_closure(g, {x}));
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Group& a, const Group& b) { return a.order() < b.order(); });
  std::vector<Group> minimal;
  for (const auto& c : candidates) {
    bool covered = std::any_of(minimal.begin(), minimal.end(),
                               [&](const Group& m) { return m.is_subgroup_of(c); });
    if (!covered) minimal.push_back(c);
  }
  return minimal;
}

void require_commuting(const std::vector<Group>& factors) {
  for (std::size_t i = 0; i < factors.size(); ++i) {
    for (std::size_t j = i + 1; j < factors.size(); ++j) {
      for (const auto& a : factors[i].generators()) {
        for (const auto& b : factors[j].generators()) {
          if (a * b != b * a) {
            throw ConsistencyError("simple factors " + std::to_string(i) + " and " +
                                   std::to_string(j) + " do not commute");
          }
        }
      }
    }
  }
}

struct HintedSocle {
  std::vector<Group> minimal_normals;
  std::vector<std::vector<Group>> factors;  // per minimal normal
};

std::optional<HintedSocle> hinted_socle(const Group& g, const Budget& budget,
                                        const StructureHints& hints) {
  if (hints.socle_factors.empty() || g.is_trivial()) return std::nullopt;
  std::vector<Group> factors;
  for (const auto& gens : hints.socle_factors) {
    for (const auto& x : gens) {
      if (x.degree() != g.degree()) throw HintError("socle factor hint has the wrong degree");
    }
    Group f(g.degree(), gens);
    if (!f.is_subgroup_of(g)) return std::nullopt;
    factors.push_back(std::move(f));
  }
  std::optional<FactorAction> action;
  try {
    action = induced_factor_action(g, factors);
  } catch (const NotPermuted&) {
    return std::nullopt;
  }

  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (!is_nonabelian_simple(factors[i], budget)) {
      throw HintError("socle factor hint " + std::to_string(i) + " is not nonabelian simple");
    }
  }
  require_commuting(factors);

  std::vector<Permutation> product;
  for (const auto& f : factors) {
    product.insert(product.end(), f.generators().begin(), f.generators().end());
  }
  // the hinted product is the whole socle iff its centralizer is trivial
  if (!centralizer_of_normal(g, product, budget).is_trivial()) return std::nullopt;

  HintedSocle out;
  std::vector<bool> placed(factors.size(), false);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (placed[i]) continue;
    std::vector<std::size_t> orbit{i};
    placed[i] = true;
    for (std::size_t k = 0; k < orbit.size(); ++k) {
      for (const auto& s : action->generator_actions) {
        std::size_t j = s[static_cast<Point>(orbit[k])];
        if (!placed[j]) {
          placed[j] = true;
          orbit.push_back(j);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    std::vector<Permutation> gens;
    std::vector<Group> members;
    for (auto j : orbit) {
      gens.insert(gens.end(), factors[j].generators().begin(), factors[j].generators().end());
      members.push_back(factors[j]);
    }
    out.minimal_normals.emplace_back(g.degree(), gens);
    out.factors.push_back(std::move(members));
  }
  return out;
}

template <class Qualifies>
Group radical_by(const Group& g, const Budget& budget, const StructureHints& hints,
                 Qualifies qualifies) {
  QuotientTower tower(g);
  for (;;) {
    Group h = tower.top();
    if (h.is_trivial()) return g;
    auto mins = minimal_normal_subgroups(h, budget, tower.faithful() ? hints : kNoHints);
    std::vector<Permutation> gens;
    for (const auto& m : mins.subgroups) {
      if (qualifies(m)) gens.insert(gens.end(), m.generators().begin(), m.generators().end());
    }
    if (gens.empty()) return tower.pull(Group::trivial(h.degree()));
    tower.divide(Group(h.degree(), gens), budget);
  }
}

SeriesCertificate upper_series(const Group& g, std::uint64_t p, const Budget& budget,
                               const StructureHints& hints, bool soluble_mode) {
  SeriesCertificate cert{g, p, {}, 0};
  QuotientTower tower(g);
  auto current_hints = [&]() -> const StructureHints& {
    return tower.faithful() ? hints : kNoHints;
  };
  for (;;) {
    Group h = tower.top();
    Group r = soluble_mode ? soluble_radical(h, budget, current_hints())
                           : p_soluble_radical(h, p, budget, current_hints());
    if (!r.is_trivial() || h.is_trivial()) {
      cert.layers.push_back({tower.pull(r), LayerKind::PSoluble, {}});
      if (r.order() == h.order()) break;
      tower.divide(r, budget);
      h = tower.top();
    }
    auto soc = socle_decomposition(h, budget, current_hints());
    std::vector<Group> factors;
    for (const auto& f : soc.simple_factors) {
      if (soluble_mode || f.order() % p == 0) factors.push_back(f);
    }
    if (factors.empty() || !soc.abelian_part.is_trivial()) {
      throw ConsistencyError("quotient by the radical has an unexpected socle");
    }
    std::vector<Permutation> gens;
    std::vector<std::vector<Permutation>> lifted;
    for (const auto& f : factors) {
      gens.insert(gens.end(), f.generators().begin(), f.generators().end());
      std::vector<Permutation> fl;
      for (const auto& x : f.generators()) fl.push_back(tower.lift(x));
      lifted.push_back(std::move(fl));
    }
    Group n(h.degree(), gens);
    cert.layers.push_back({tower.pull(n), LayerKind::Semisimple, std::move(lifted)});
    ++cert.lambda;
    if (n.order() == h.order()) break;
    tower.divide(n, budget);
  }
  return cert;
}

}  // namespace

MinimalNormals minimal_normal_subgroups(const Group& g, const Budget& budget,
                                        const StructureHints& hints) {
  if (auto hinted = hinted_socle(g, budget, hints)) {
    return {std::move(hinted->minimal_normals), true};
  }
  return {discover_minimal_normals(g, budget), false};
}

bool is_nonabelian_simple(const Group& s, const Budget& budget) {
  if (s.is_trivial() || s.is_abelian()) return false;
  if (derived_subgroup(s).order() != s.order()) return false;
  auto mins = discover_minimal_normals(s, budget);
  return mins.size() == 1 && mins.front().order() == s.order();
}

Group soluble_radical(const Group& g, const Budget& budget, const StructureHints& hints) {
  return radical_by(g, budget, hints, [](const Group& a) { return a.is_abelian(); });
}

Group p_soluble_radical(const Group& g, std::uint64_t p, const Budget& budget,
                        const StructureHints& hints) {
  if (!is_prime(p)) throw Error("p_soluble_radical needs a prime");
  return radical_by(g, budget, hints,
                    [p](const Group& a) { return a.order() % p != 0 || a.is_abelian(); });
}

bool is_p_soluble(const Group& g, std::uint64_t p, const Budget& budget,
                  const StructureHints& hints) {
  return p_soluble_radical(g, p, budget, hints).order() == g.order();
}

Group p_core(const Group& g, std::uint64_t p, const Budget& budget, const StructureHints& hints) {
  if (!is_prime(p)) throw Error("p_core needs a prime");
  return radical_by(g, budget, hints, [p](const Group& a) { return is_power_of(a.order(), p); });
}

Group p_prime_core(const Group& g, std::uint64_t p, const Budget& budget,
                   const StructureHints& hints) {
  if (!is_prime(p)) throw Error("p_prime_core needs a prime");
  return radical_by(g, budget, hints, [p](const Group& a) { return a.order() % p != 0; });
}

SocleDecomposition socle_decomposition(const Group& g, const Budget& budget,
                                       const StructureHints& hints) {
  const std::size_t n = g.degree();
  SocleDecomposition out{Group::trivial(n), {}, {}, Group::trivial(n), false};
  std::vector<std::vector<Group>> per_min;
  if (auto hinted = hinted_socle(g, budget, hints)) {
    out.minimal_normals = std::move(hinted->minimal_normals);
    per_min = std::move(hinted->factors);
    out.hinted = true;
  } else {
    out.minimal_normals = discover_minimal_normals(g, budget);
    for (const auto& m : out.minimal_normals) {
      if (m.is_abelian()) {
        per_min.emplace_back();
        continue;
      }
      auto factors = discover_minimal_normals(m, budget);
      for (const auto& f : factors) {
        if (!is_nonabelian_simple(f, budget)) {
          throw ConsistencyError("socle factor of order " + std::to_string(f.order()) +
                                 " is not simple");
        }
      }
      require_commuting(factors);
      std::uint64_t product = 1;
      for (const auto& f : factors) product *= f.order();
      if (product != m.order()) throw ConsistencyError("simple factors do not fill the minimal normal");
      per_min.push_back(std::move(factors));
    }
  }

  std::vector<Permutation> socle_gens;
  std::vector<Permutation> abelian_gens;
  for (std::size_t i = 0; i < out.minimal_normals.size(); ++i) {
    const Group& m = out.minimal_normals[i];
    socle_gens.insert(socle_gens.end(), m.generators().begin(), m.generators().end());
    if (per_min[i].empty()) {
      abelian_gens.insert(abelian_gens.end(), m.generators().begin(), m.generators().end());
    }
    for (auto& f : per_min[i]) out.simple_factors.push_back(std::move(f));
  }
  out.socle = Group(n, socle_gens);
  out.abelian_part = Group(n, abelian_gens);
  return out;
}

KernelSubgroup kernel_subgroup(const Group& g, std::uint64_t p, const Budget& budget,
                               const StructureHints& hints) {
  Group r = p_soluble_radical(g, p, budget, hints);
  if (r.order() == g.order()) return {g, true};
  QuotientTower tower(g);
  tower.divide(r, budget);
  auto soc = socle_decomposition(tower.top(), budget, tower.faithful() ? hints : kNoHints);
  std::vector<Group> factors;
  for (const auto& f : soc.simple_factors) {
    if (f.order() % p == 0) factors.push_back(f);
  }
  if (factors.empty()) return {g, true};
  FactorAction action = induced_factor_action(tower.top(), factors);
  return {tower.pull(action.kernel), false};
}

Group higher_kernel(const Group& g, std::uint64_t p, std::size_t i, const Budget& budget,
                    const StructureHints& hints) {
  if (i == 0) throw Error("higher kernels are indexed from 1");
  QuotientTower tower(g);
  Group k = g;
  for (std::size_t step = 0; step < i; ++step) {
    Group top = tower.top();
    Group next = kernel_subgroup(top, p, budget, tower.faithful() ? hints : kNoHints).kernel;
    k = tower.pull(next);
    if (next.order() == top.order()) break;
    tower.divide(next, budget);
  }
  return k;
}

SeriesCertificate non_p_soluble_length(const Group& g, std::uint64_t p, const Budget& budget,
                                       const StructureHints& hints) {
  if (!is_prime(p)) throw Error("non_p_soluble_length needs a prime");
  return upper_series(g, p, budget, hints, false);
}

SeriesCertificate nonsoluble_length(const Group& g, const Budget& budget,
                                    const StructureHints& hints) {
  return upper_series(g, 2, budget, hints, true);
}

}  // namespace glen
