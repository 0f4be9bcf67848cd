#include <set>
#include <unordered_set>

#include "analysis.hpp"
#include "glen/error.hpp"
#include "glen/quotient.hpp"

namespace glen {

using nlohmann::json;

NormalSelection normal_subgroup_selection(const Group& p, const Budget& budget) {
  NormalSelection out;
  auto& subs = out.subgroups;
  auto add = [&](const Group& h) {
    for (const auto& s : subs) {
      if (s.order() == h.order() && h.is_subgroup_of(s)) return false;
    }
    subs.push_back(h);
    return true;
  };
  add(p);
  for (const auto& d : derived_series(p)) add(d);
  if (p.is_trivial()) {
    out.exhaustive = true;
    return out;
  }
  const std::uint64_t prime = prime_divisors(p.order()).front();

  if (p.order() > budget.max_subgroup_order) {
    Group c = p;
    while (!c.is_trivial()) {
      Group next = commutator_subgroup(c, p, p);
      if (next.order() == c.order()) break;
      add(next);
      c = next;
    }
    for (std::uint64_t k = prime; k < p.order(); k *= prime) {
      Group pw = power_subgroup(p, k, p, budget).group;
      add(pw);
      if (pw.is_trivial()) break;
    }
    for (const auto& x : p.generators()) add(normal_closure(p, {x}));
    return out;
  }

  // every normal subgroup is a join of normal closures of single elements
  std::unordered_set<std::uint64_t> seen;
  for_each_element(p, budget, [&](std::uint64_t r, const Permutation& x) {
    if (!seen.insert(r).second) return true;
    std::vector<Permutation> cls{x};
    for (std::size_t i = 0; i < cls.size(); ++i) {
      for (const auto& a : p.generators()) {
        Permutation y = cls[i].conjugate_by(a);
        if (seen.insert(p.rank(y)).second) cls.push_back(std::move(y));
      }
    }
    if (!x.is_identity()) add(normal_closure(p, {x}));
    return true;
  });
  constexpr std::size_t kCap = 512;
  for (std::size_t i = 0; i < subs.size() && subs.size() < kCap; ++i) {
    for (std::size_t j = 0; j < i && subs.size() < kCap; ++j) {
      if (subs[j].is_subgroup_of(subs[i]) || subs[i].is_subgroup_of(subs[j])) continue;
      add(subs[i].join(subs[j]));
    }
  }
  out.exhaustive = subs.size() < kCap;
  return out;
}

namespace detail {

namespace {

std::size_t log_of(std::uint64_t m, std::uint64_t p) {
  std::size_t e = 0;
  while (m > 1) {
    m /= p;
    ++e;
  }
  return e;
}

bool kernel_applies(Analysis& a, std::uint64_t p, CheckReport& r) {
  if (a.kernel(p).degenerate) {
    skip(r, SkipReason::Inapplicable, "G is p-soluble, so K_p(G) = G by convention");
    return false;
  }
  return true;
}

std::vector<Group> derived_terms(const Group& q) {
  std::vector<Group> terms{q};
  while (!terms.back().is_trivial()) {
    Group next = derived_subgroup(terms.back());
    if (next.order() == terms.back().order()) throw NotSoluble("derived series stalls");
    terms.push_back(std::move(next));
  }
  return terms;
}

}  // namespace

void check_c8(Analysis& a, std::uint64_t p, CheckReport& r) {
  const Group rp = p_soluble_radical(a.g, p, a.budget, a.hints);
  if (rp.order() == a.g.order()) {
    skip(r, SkipReason::Inapplicable, "G is p-soluble, so there are no socle factors to permute");
    return;
  }
  const auto ctx = quotient(a.g, rp, a.budget);
  const Group& gbar = ctx.image();
  const auto soc = socle_decomposition(gbar, a.budget, ctx.is_identity() ? a.hints : StructureHints{});
  std::vector<Group> factors;
  for (const auto& f : soc.simple_factors) {
    if (f.order() % p == 0) factors.push_back(f);
  }
  const auto action = induced_factor_action(gbar, factors);
  const Group pbar = ctx.push(a.sylow(p));
  const auto sel = normal_subgroup_selection(pbar, a.budget);

  std::size_t instances = 0;
  std::size_t orbits = 0;
  bool ok = true;
  for (const auto& n : sel.subgroups) {
    if (n.is_trivial()) continue;
    ++instances;
    const std::uint64_t m = exponent_of(n, a.budget);
    if (m > factors.size()) continue;
    std::vector<Permutation> gen_actions;
    for (const auto& x : n.generators()) gen_actions.push_back(action.act(x));
    for_each_element(n, a.budget, [&](std::uint64_t, const Permutation& x) {
      for (const auto& cyc : action.act(x).cycles()) {
        if (cyc.size() != m) continue;
        ++orbits;
        const std::set<Point> orbit(cyc.begin(), cyc.end());
        for (const auto& s : gen_actions) {
          for (auto i : cyc) {
            if (!orbit.count(s[i])) {
              ok = false;
              r.data["element"] = x.to_cycles();
              return false;
            }
          }
        }
      }
      return true;
    });
    if (!ok) {
      r.witnesses.push_back(cycles_of(n));
      break;
    }
  }
  r.data["socle_factors"] = factors.size();
  r.data["normal_subgroups"] = instances;
  r.data["orbits_checked"] = orbits;
  r.data["selection_exhaustive"] = sel.exhaustive;
  verdict(r, ok);
}

void check_c9(Analysis& a, std::uint64_t p, CheckReport& r) {
  if (!kernel_applies(a, p, r)) return;
  const Group& k = a.kernel(p).kernel;
  const auto sel = normal_subgroup_selection(a.sylow(p), a.budget);
  std::size_t instances = 0;
  bool ok = true;
  for (const auto& n : sel.subgroups) {
    if (n.is_trivial()) continue;
    ++instances;
    const std::uint64_t m = exponent_of(n, a.budget);
    Group d = n;
    for (std::size_t i = 0; i < log_of(m, p); ++i) d = derived_subgroup(d);
    const Group x = power_subgroup(d, m / p, n, a.budget).group;
    if (!x.is_subgroup_of(k)) {
      ok = false;
      r.data["exponent"] = m;
      r.witnesses.push_back(cycles_of(n));
      break;
    }
  }
  r.data["kernel_order"] = k.order();
  r.data["normal_subgroups"] = instances;
  r.data["selection_exhaustive"] = sel.exhaustive;
  verdict(r, ok);
}

void check_c10(Analysis& a, std::uint64_t p, CheckReport& r) {
  if (!kernel_applies(a, p, r)) return;
  const Group& k = a.kernel(p).kernel;
  const auto sel = normal_subgroup_selection(a.sylow(p), a.budget);
  std::size_t instances = 0;
  bool ok = true;
  for (const auto& n : sel.subgroups) {
    if (n.is_trivial() || !n.is_abelian()) continue;
    ++instances;
    const Group x = p == 2 ? power_subgroup(n, 2, n, a.budget).group : n;
    if (!x.is_subgroup_of(k)) {
      ok = false;
      r.witnesses.push_back(cycles_of(n));
      break;
    }
  }
  r.data["kernel_order"] = k.order();
  r.data["abelian_normal_subgroups"] = instances;
  r.data["selection_exhaustive"] = sel.exhaustive;
  verdict(r, ok);
}

void check_c11(Analysis& a, CheckReport& r) {
  if (!kernel_applies(a, 2, r)) return;
  struct Level {
    Group h;
    Group p;
    Group k;
  };
  std::vector<Level> levels{{a.g, a.sylow(2), a.kernel(2).kernel}};
  {
    const auto top = quotient(a.g, a.kernel(2).kernel, a.budget);
    const Group& h = top.image();
    if (!is_soluble(h)) {
      levels.push_back({h, top.push(a.sylow(2)), kernel_subgroup(h, 2, a.budget).kernel});
    }
  }
  std::size_t part_a = 0;
  std::size_t part_b = 0;
  std::size_t part_c = 0;
  bool ok = true;
  json failures = json::array();
  for (std::size_t level = 0; level < levels.size() && ok; ++level) {
    const auto& [h, p, k] = levels[level];
    const auto ctx = quotient(h, k, a.budget);
    for (const auto& q : normal_subgroup_selection(p, a.budget).subgroups) {
      if (q.is_trivial()) continue;
      const auto terms = derived_terms(q);
      const std::size_t d = terms.size() - 1;
      const Group& last = terms[d - 1];
      const Group sq = power_subgroup(last, 2, q, a.budget).group;
      ++part_a;
      if (!sq.is_subgroup_of(k)) {
        failures.push_back({{"level", level}, {"part", "a"}, {"derived_length", d}});
        ok = false;
      }
      if (d >= 2 && sq.is_trivial() && !last.is_subgroup_of(k)) {
        ++part_b;
        const Group& prev = terms[d - 2];
        const Group img = ctx.push(prev);
        const Group img_sq = ctx.push(power_subgroup(prev, 2, q, a.budget).group);
        if (!is_nilpotent_class_at_most(img, 2) || !img_sq.is_abelian()) {
          failures.push_back({{"level", level}, {"part", "b"}, {"derived_length", d}});
          ok = false;
        }
        if (is_nilpotent_class_at_most(prev, 2)) {
          ++part_c;
          if (d != 2) {
            failures.push_back({{"level", level}, {"part", "c"}, {"derived_length", d}});
            ok = false;
          }
        }
      }
      if (!ok) {
        r.witnesses.push_back(cycles_of(q));
        break;
      }
    }
  }
  r.data["levels"] = levels.size();
  r.data["part_a_instances"] = part_a;
  r.data["part_b_instances"] = part_b;
  r.data["part_c_instances"] = part_c;
  if (!failures.empty()) r.data["failures"] = failures;
  verdict(r, ok);
}

void check_c12(Analysis& a, std::uint64_t p, CheckReport& r) {
  if (a.g.order() % p != 0) {
    skip(r, SkipReason::Inapplicable, "p does not divide |G|");
    return;
  }
  const Group& sy = a.sylow(p);
  json specs = json::array();
  std::size_t applicable = 0;
  bool ok = true;
  for (const auto& spec : a.entry.varieties) {
    if (spec.prime != p) continue;
    json item{{"pairs", spec.pairs}};
    const auto hyp = variety_residual_chain(sy, spec, sy, a.budget);
    item["sylow_in_spec"] = hyp.member;
    const auto [a1, d1] = spec.pairs.front();
    std::vector<std::pair<unsigned, unsigned>> rest(spec.pairs.begin() + 1, spec.pairs.end());
    if (!hyp.member || (a1 == 0 && d1 == 0)) {
      specs.push_back(item);
      continue;
    }
    std::size_t i = 0;
    VarietySpec claim{p, {}};
    if (a1 >= 1) {
      i = a1;
      claim.pairs.emplace_back(0, d1 + a1 * (a1 + 1) / 2);
      claim.pairs.insert(claim.pairs.end(), rest.begin(), rest.end());
    } else if (p != 2) {
      i = d1;
      claim.pairs = rest.empty() ? std::vector<std::pair<unsigned, unsigned>>{{0, 0}} : rest;
    } else {
      i = 3 * d1;
      const auto [a2, d2] = rest.empty() ? std::pair<unsigned, unsigned>{0, 0} : rest.front();
      claim.pairs.emplace_back(a2 + 2, d2);
      if (!rest.empty()) claim.pairs.insert(claim.pairs.end(), rest.begin() + 1, rest.end());
    }
    const Group k = higher_kernel(a.g, p, i, a.budget, a.hints);
    const auto ctx = quotient(a.g, k, a.budget);
    const auto res = variety_residual_chain(ctx.push(sy), claim, ctx.image(), a.budget);
    item["kernel_depth"] = i;
    item["quotient_order"] = ctx.index();
    item["claim_pairs"] = claim.pairs;
    item["member"] = res.member;
    specs.push_back(item);
    ++applicable;
    if (!res.member) {
      ok = false;
      r.witnesses.push_back(cycles_of(sy));
    }
  }
  r.data["specs"] = specs;
  if (applicable == 0) {
    skip(r, SkipReason::Inapplicable, "no declared variety contains the Sylow subgroup");
    return;
  }
  verdict(r, ok);
}

}  // namespace detail

}  // namespace glen
