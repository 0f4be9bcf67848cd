#include "glen/checks.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <tuple>

#include "analysis.hpp"
#include "glen/error.hpp"
#include "glen/quotient.hpp"

namespace glen {

using nlohmann::json;

std::string status_name(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Skipped: return "SKIPPED";
  }
  return "?";
}

std::string reason_name(SkipReason r) {
  switch (r) {
    case SkipReason::None: return "";
    case SkipReason::Budget: return "BUDGET";
    case SkipReason::Tier: return "TIER";
    case SkipReason::Inapplicable: return "INAPPLICABLE";
    case SkipReason::InconclusiveWitness: return "INCONCLUSIVE_WITNESS";
  }
  return "?";
}

const std::vector<std::string>& check_ids() {
  static const std::vector<std::string> ids{"C1", "C2",  "C3",  "C4",  "C5",  "C6",       "C7",   "C8",
                                            "C9", "C10", "C11", "C12", "C13", "C14", "EXPECTED", "HINTS"};
  return ids;
}

std::size_t check_rank(const std::string& id) {
  const auto& ids = check_ids();
  return static_cast<std::size_t>(std::find(ids.begin(), ids.end(), id) - ids.begin());
}

bool report_less(const CheckReport& a, const CheckReport& b) {
  return std::forward_as_tuple(a.group, check_rank(a.check), a.prime) <
         std::forward_as_tuple(b.group, check_rank(b.check), b.prime);
}

namespace detail {

Analysis::Analysis(const CorpusEntry& e, std::uint64_t seed)
    : entry(e), g(e.group()), budget(e.budget), hints(e.hints), primes(prime_divisors(g.order())), seed_(seed) {
  pool_ = g.generators();
  for (const auto& [p, gens] : hints.sylow) pool_.insert(pool_.end(), gens.begin(), gens.end());
  for (const auto& f : hints.socle_factors) pool_.insert(pool_.end(), f.begin(), f.end());
}

const SeriesCertificate& Analysis::lambda(std::uint64_t p) {
  auto it = lambda_.find(p);
  if (it == lambda_.end()) it = lambda_.emplace(p, non_p_soluble_length(g, p, budget, hints)).first;
  return it->second;
}

const SeriesCertificate& Analysis::nonsoluble() {
  if (!nonsoluble_) nonsoluble_ = nonsoluble_length(g, budget, hints);
  return *nonsoluble_;
}

const KernelSubgroup& Analysis::kernel(std::uint64_t p) {
  auto it = kernel_.find(p);
  if (it == kernel_.end()) it = kernel_.emplace(p, kernel_subgroup(g, p, budget, hints)).first;
  return it->second;
}

const Group& Analysis::sylow(std::uint64_t p) {
  auto it = sylow_.find(p);
  if (it == sylow_.end()) it = sylow_.emplace(p, glen::sylow(g, p, budget, hints)).first;
  return it->second;
}

const SubgroupInventory* Analysis::inventory() {
  if (!inventory_tried_) {
    inventory_tried_ = true;
    if (entry.tier == Tier::FullSurvey && g.order() <= budget.max_subgroup_order) {
      inventory_ = std::make_unique<SubgroupInventory>(enumerate_subgroups(g, budget));
    }
  }
  return inventory_.get();
}

std::optional<Analysis::Bound> Analysis::at_least(Quantity q, std::uint64_t p, std::size_t target,
                                                  const std::string& label) {
  if (const auto* inv = inventory()) {
    const auto key = std::make_pair(static_cast<int>(q), p);
    auto it = exact_.find(key);
    if (it == exact_.end()) {
      auto m = max_invariant(*inv, q, p, budget);
      it = exact_.emplace(key, Bound{m.value, true, m.witness}).first;
    }
    return it->second;
  }
  auto w = witness_search(g, q, p, target, seed_for(label), budget, pool_);
  if (!w) return std::nullopt;
  return Bound{w->value, false, w->witness};
}

std::uint64_t Analysis::seed_for(const std::string& label) const {
  return Rng(seed_).split(entry.name + "/" + label).next();
}

CheckReport make_report(const Analysis& a, const std::string& id, std::uint64_t prime) {
  CheckReport r;
  r.group = a.entry.name;
  r.check = id;
  r.prime = prime;
  return r;
}

void skip(CheckReport& r, SkipReason reason, const std::string& note) {
  r.status = Status::Skipped;
  r.reason = reason;
  r.data["note"] = note;
}

void verdict(CheckReport& r, bool holds) { r.status = holds ? Status::Pass : Status::Fail; }

std::vector<std::string> cycles_of(const Group& h) { return format_generators(h.generators()); }

}  // namespace detail

namespace {

using detail::Analysis;

void record_bound(Analysis& a, CheckReport& r, Quantity q, std::uint64_t p, std::size_t target,
                  const std::string& key, const std::function<bool(std::size_t)>& holds) {
  auto b = a.at_least(q, p, target, r.check + "/" + std::to_string(p));
  if (!b) {
    r.data["mode"] = "WITNESS_ONLY";
    r.data["target"] = target;
    detail::skip(r, SkipReason::InconclusiveWitness,
                 "no subgroup with " + quantity_name(q, p) + " >= " + std::to_string(target) + " found");
    return;
  }
  r.data["mode"] = b->exhaustive ? "EXHAUSTIVE" : "WITNESS_ONLY";
  if (b->exhaustive) {
    r.data[key] = b->value;
  } else {
    r.data["target"] = target;
    r.data[key + "_at_least"] = b->value;
  }
  r.witnesses.push_back(detail::cycles_of(b->witness));
  detail::verdict(r, holds(b->value));
}

void c1(Analysis& a, CheckReport& r) {
  const std::size_t lam = a.nonsoluble().lambda;
  const std::size_t lam2 = a.lambda(2).lambda;
  r.data["lambda"] = lam;
  r.data["lambda_2"] = lam2;
  if (lam != lam2) {
    r.status = Status::Fail;
    r.data["note"] = "nonsoluble length differs from lambda_2";
    return;
  }
  record_bound(a, r, Quantity::L2, 2, lam / 2, "L2", [&](std::size_t l) { return lam <= 2 * l + 1; });
}

void c2(Analysis& a, CheckReport& r) {
  const std::size_t lam = a.nonsoluble().lambda;
  r.data["lambda"] = lam;
  record_bound(a, r, Quantity::L2x2p, 2, lam, "L2x2p", [&](std::size_t l) { return lam <= l; });
}

void c3(Analysis& a, CheckReport& r) {
  const std::size_t lam = a.nonsoluble().lambda;
  r.data["lambda"] = lam;
  record_bound(a, r, Quantity::MaxFittingHeight, 2, lam, "max_fitting_height",
               [&](std::size_t h) { return lam <= h; });
}

void c4(Analysis& a, std::uint64_t p, CheckReport& r) {
  const std::size_t lam = a.lambda(p).lambda;
  r.data["lambda_p"] = lam;
  record_bound(a, r, Quantity::MaxPLength, p, lam, "max_p_length", [&](std::size_t l) { return lam <= l; });
}

void c5(Analysis& a, std::uint64_t p, CheckReport& r) {
  const auto& k = a.kernel(p);
  if (k.degenerate) {
    detail::skip(r, SkipReason::Inapplicable, "G is p-soluble, so K_p(G) = G by convention");
    return;
  }
  const auto cert = non_p_soluble_length(k.kernel, p, a.budget, a.hints);
  r.data["kernel_order"] = k.kernel.order();
  r.data["lambda_p_group"] = a.lambda(p).lambda;
  r.data["lambda_p_kernel"] = cert.lambda;
  r.witnesses.push_back(detail::cycles_of(k.kernel));
  detail::verdict(r, cert.lambda <= 1);
}

void c6(Analysis& a, CheckReport& r) {
  if (a.entry.tier != Tier::FullSurvey) {
    detail::skip(r, SkipReason::Tier, "needs every normal subgroup and quotient survey");
    return;
  }
  const auto* inv = a.inventory();
  if (!inv) {
    detail::skip(r, SkipReason::Budget, "group order above the subgroup survey cap");
    return;
  }
  const std::size_t l = a.at_least(Quantity::L2x2p, 2, 0, "C6")->value;
  r.data["L2x2p"] = l;
  json quotients = json::array();
  bool ok = true;
  for (const auto& n : inv->normal_subgroups()) {
    std::size_t lq = l;
    if (!n.is_trivial()) {
      const auto ctx = quotient(a.g, n, a.budget);
      lq = max_invariant(ctx.image(), Quantity::L2x2p, 2, a.budget).value;
    }
    quotients.push_back({{"normal_order", n.order()}, {"L2x2p_quotient", lq}});
    if (lq > l) {
      ok = false;
      r.witnesses.push_back(detail::cycles_of(n));
    }
  }
  r.data["quotients"] = quotients;
  detail::verdict(r, ok);
}

void c7(Analysis& a, CheckReport& r) {
  const auto soc = socle_decomposition(a.g, a.budget, a.hints);
  if (soc.simple_factors.empty()) {
    detail::skip(r, SkipReason::Inapplicable, "no nonabelian minimal normal subgroup");
    return;
  }
  const auto action = induced_factor_action(a.g, soc.simple_factors);
  const auto ctx = quotient(a.g, action.kernel, a.budget);
  const std::size_t lq = max_invariant(ctx.image(), Quantity::L2x2p, 2, a.budget).value;
  r.data["simple_factors"] = soc.simple_factors.size();
  r.data["kernel_order"] = action.kernel.order();
  r.data["L2x2p_quotient"] = lq;
  record_bound(a, r, Quantity::L2x2p, 2, lq + 1, "L2x2p", [&](std::size_t l) { return lq < l; });
}

void c13(Analysis& a, CheckReport& r) {
  MixedSeries ms = build_mixed_series(a.g, 0, a.budget, a.hints);
  std::size_t need = 1;
  while (need * need + 2 * need < ms.length) ++need;
  auto b = a.at_least(Quantity::MaxFittingHeight, 2, need, "C13");
  r.data["length"] = ms.length;
  json orders = json::array();
  for (const auto& t : ms.terms) orders.push_back(t.order());
  r.data["series_orders"] = orders;
  if (!b) {
    r.data["mode"] = "WITNESS_ONLY";
    detail::skip(r, SkipReason::InconclusiveWitness,
                 "no soluble subgroup of Fitting height " + std::to_string(need) + " found");
    return;
  }
  const std::size_t h = b->value;
  r.data["mode"] = b->exhaustive ? "EXHAUSTIVE" : "WITNESS_ONLY";
  r.data[b->exhaustive ? "h" : "h_at_least"] = h;
  r.data["bound"] = h * h + 2 * h;
  r.witnesses.push_back(detail::cycles_of(b->witness));
  if (h == 0) {
    detail::skip(r, SkipReason::Inapplicable, "trivial group");
    return;
  }
  detail::verdict(r, ms.length <= h * h + 2 * h);
}

void c14(Analysis& a, std::uint64_t p, CheckReport& r) {
  if (a.entry.tier != Tier::FullSurvey) {
    detail::skip(r, SkipReason::Tier, "brute force runs on the desk tier only");
    return;
  }
  if (a.g.order() > 200) {
    detail::skip(r, SkipReason::Budget, "brute force limited to order 200");
    return;
  }
  const std::size_t canonical = a.lambda(p).lambda;
  const std::size_t brute = brute_force_lambda(a.g, p, a.budget);
  r.data["lambda_p"] = canonical;
  r.data["brute_force"] = brute;
  detail::verdict(r, canonical == brute);
}

void hints_check(Analysis& a, CheckReport& r) {
  bool ok = true;
  if (!a.hints.socle_factors.empty()) {
    const auto soc = socle_decomposition(a.g, a.budget, a.hints);
    r.data["socle_hints_used"] = soc.hinted;
    ok = ok && soc.hinted;
  }
  if (!a.hints.minimal_normals.empty()) {
    const auto computed = minimal_normal_subgroups(a.g, a.budget, a.hints).subgroups;
    std::size_t matched = 0;
    for (const auto& gens : a.hints.minimal_normals) {
      const Group h(a.g.degree(), gens);
      if (std::any_of(computed.begin(), computed.end(), [&](const Group& m) { return m.same_as(h); })) {
        ++matched;
      } else {
        r.witnesses.push_back(detail::cycles_of(h));
      }
    }
    r.data["minimal_normals_matched"] = matched;
    r.data["minimal_normals_hinted"] = a.hints.minimal_normals.size();
    ok = ok && matched == a.hints.minimal_normals.size();
  }
  json sylows = json::object();
  for (const auto& [p, gens] : a.hints.sylow) {
    try {
      sylows[std::to_string(p)] = a.sylow(p).order();
    } catch (const HintError& e) {
      sylows[std::to_string(p)] = e.what();
      ok = false;
    }
  }
  if (!a.hints.sylow.empty()) r.data["sylow_orders"] = sylows;
  detail::verdict(r, ok);
}

std::optional<std::int64_t> computed_invariant(Analysis& a, const std::string& key) {
  auto prime_suffix = [&](const std::string& prefix) -> std::optional<std::uint64_t> {
    if (key.rfind(prefix, 0) != 0) return std::nullopt;
    return std::stoull(key.substr(prefix.size()));
  };
  if (key == "order") return static_cast<std::int64_t>(a.g.order());
  if (auto p = prime_suffix("lambda_")) return static_cast<std::int64_t>(a.lambda(*p).lambda);
  if (auto p = prime_suffix("p_length_")) return static_cast<std::int64_t>(p_length(a.g, *p, a.budget));
  if (key == "fitting_height") return static_cast<std::int64_t>(fitting_height(a.g, a.budget));
  if (key == "l_2x2prime") return static_cast<std::int64_t>(l_2x2prime(a.g, a.budget));
  const auto* inv = a.inventory();
  if (!inv) return std::nullopt;
  if (key == "subgroups") return static_cast<std::int64_t>(inv->total());
  if (key == "subgroup_classes") return static_cast<std::int64_t>(inv->class_representatives().size());
  if (key == "L2x2p") return static_cast<std::int64_t>(a.at_least(Quantity::L2x2p, 2, 0, key)->value);
  if (key == "L2") return static_cast<std::int64_t>(a.at_least(Quantity::L2, 2, 0, key)->value);
  if (key == "MAX_FH") return static_cast<std::int64_t>(a.at_least(Quantity::MaxFittingHeight, 2, 0, key)->value);
  throw Error("unknown invariant " + key);
}

void expected_check(Analysis& a, CheckReport& r) {
  bool ok = true;
  for (const auto& [key, want] : a.entry.expected) {
    json item{{"expected", want}};
    try {
      auto got = computed_invariant(a, key);
      if (got) {
        item["computed"] = *got;
        ok = ok && *got == want;
      } else {
        item["computed"] = "unavailable";
      }
    } catch (const BudgetExceeded& e) {
      item["computed"] = "unavailable";
    } catch (const Error& e) {
      item["computed"] = e.what();
      ok = false;
    }
    r.data[key] = item;
  }
  detail::verdict(r, ok);
}

// ---------------------------------------------------------- brute force

// O^{p'} and O^p by enumeration: the subgroups generated by the p-elements
// and by the p'-elements.
Group generated_by_orders(const Group& x, std::uint64_t p, bool p_elements, const Budget& budget) {
  GroupBuilder b(x.degree());
  for_each_element(x, budget, [&](std::uint64_t, const Permutation& y) {
    const std::uint64_t o = y.order();
    const bool is_p = is_power_of(o, p);
    const bool coprime = o % p != 0;
    if (o > 1 && (p_elements ? is_p : coprime) && !b.contains(y)) b.add(y);
    return true;
  });
  return b.build();
}

bool enumerated_p_soluble(Group x, std::uint64_t p, const Budget& budget) {
  while (!x.is_trivial()) {
    Group y = generated_by_orders(x, p, true, budget);
    Group z = generated_by_orders(y, p, false, budget);
    if (z.order() == x.order()) return false;
    x = z;
  }
  return true;
}

bool enumerated_semisimple(const Group& q, const Budget& budget) {
  if (q.is_trivial()) return false;
  std::vector<Group> closures;
  for_each_element(q, budget, [&](std::uint64_t, const Permutation& x) {
    if (x.is_identity()) return true;
    Group c = normal_closure(q, {x});
    if (std::none_of(closures.begin(), closures.end(), [&](const Group& d) { return d.same_as(c); })) {
      closures.push_back(std::move(c));
    }
    return true;
  });
  std::vector<Permutation> gens;
  for (const auto& c : closures) {
    bool minimal = std::none_of(closures.begin(), closures.end(), [&](const Group& d) {
      return d.order() < c.order() && d.is_subgroup_of(c);
    });
    if (!minimal) continue;
    if (c.is_abelian()) return false;
    gens.insert(gens.end(), c.generators().begin(), c.generators().end());
  }
  return Group(q.degree(), gens).order() == q.order();
}

}  // namespace

std::size_t brute_force_lambda(const Group& g, std::uint64_t p, const Budget& budget) {
  auto normals = enumerate_subgroups(g, budget).normal_subgroups();
  std::stable_sort(normals.begin(), normals.end(),
                   [](const Group& x, const Group& y) { return x.order() < y.order(); });
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> best(normals.size(), kNone);
  for (std::size_t i = 0; i < normals.size(); ++i) {
    if (normals[i].is_trivial()) {
      best[i] = 0;
      continue;
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (best[j] == kNone || normals[j].order() >= normals[i].order()) continue;
      if (!normals[j].is_subgroup_of(normals[i])) continue;
      const Group q = quotient(normals[i], normals[j], budget).image();
      std::size_t cost = kNone;
      if (enumerated_p_soluble(q, p, budget)) {
        cost = 0;
      } else if (enumerated_semisimple(q, budget)) {
        cost = 1;
      }
      if (cost != kNone) best[i] = std::min(best[i], best[j] + cost);
    }
  }
  return best.back();
}

MixedSeries build_mixed_series(const Group& g, std::size_t h, const Budget& budget,
                               const StructureHints& hints) {
  MixedSeries out;
  out.bound = h * h + 2 * h;
  const auto cert = nonsoluble_length(g, budget, hints);
  Group below = Group::trivial(g.degree());
  for (const auto& layer : cert.layers) {
    if (layer.kind == LayerKind::Semisimple) {
      out.terms.push_back(layer.subgroup);
    } else {
      const auto ctx = quotient(layer.subgroup, below, budget);
      const auto fs = fitting_series(ctx.image(), budget);
      for (std::size_t i = 1; i < fs.size(); ++i) out.terms.push_back(ctx.pull(fs[i]));
    }
    below = layer.subgroup;
  }
  out.length = out.terms.size();
  return out;
}

std::vector<CheckReport> run_checks(const CorpusEntry& entry, const CheckOptions& options) {
  detail::Analysis a(entry, options.seed);
  std::vector<CheckReport> out;
  auto selected = [&](const std::string& id) {
    return options.selection.empty() || options.selection.count(id) > 0;
  };
  auto primes = [&](bool odd_only) {
    std::vector<std::uint64_t> ps;
    for (auto p : a.primes) {
      if (odd_only && p == 2) continue;
      if (options.prime && *options.prime != p) continue;
      ps.push_back(p);
    }
    return ps;
  };
  auto run = [&](const std::string& id, std::uint64_t p, const std::function<void(CheckReport&)>& body) {
    if (!selected(id)) return;
    CheckReport r = detail::make_report(a, id, p);
    try {
      body(r);
    } catch (const BudgetExceeded& e) {
      r.witnesses.clear();
      detail::skip(r, SkipReason::Budget, e.what());
    } catch (const Error& e) {
      r.status = Status::Fail;
      r.data["error"] = e.what();
    }
    out.push_back(std::move(r));
  };

  run("C1", 0, [&](CheckReport& r) { c1(a, r); });
  run("C2", 0, [&](CheckReport& r) { c2(a, r); });
  run("C3", 0, [&](CheckReport& r) { c3(a, r); });
  for (auto p : primes(true)) run("C4", p, [&](CheckReport& r) { c4(a, p, r); });
  for (auto p : primes(false)) run("C5", p, [&](CheckReport& r) { c5(a, p, r); });
  run("C6", 0, [&](CheckReport& r) { c6(a, r); });
  run("C7", 0, [&](CheckReport& r) { c7(a, r); });
  for (auto p : primes(false)) run("C8", p, [&](CheckReport& r) { detail::check_c8(a, p, r); });
  for (auto p : primes(false)) run("C9", p, [&](CheckReport& r) { detail::check_c9(a, p, r); });
  for (auto p : primes(false)) run("C10", p, [&](CheckReport& r) { detail::check_c10(a, p, r); });
  if (a.g.order() % 2 == 0 && (!options.prime || *options.prime == 2)) {
    run("C11", 2, [&](CheckReport& r) { detail::check_c11(a, r); });
  }
  std::set<std::uint64_t> variety_primes;
  for (const auto& v : entry.varieties) {
    if (!options.prime || *options.prime == v.prime) variety_primes.insert(v.prime);
  }
  if (entry.varieties.empty()) {
    run("C12", 0, [&](CheckReport& r) { detail::skip(r, SkipReason::Inapplicable, "no variety spec declared"); });
  }
  for (auto p : variety_primes) run("C12", p, [&](CheckReport& r) { detail::check_c12(a, p, r); });
  run("C13", 0, [&](CheckReport& r) { c13(a, r); });
  for (auto p : primes(false)) run("C14", p, [&](CheckReport& r) { c14(a, p, r); });
  if (!entry.expected.empty()) run("EXPECTED", 0, [&](CheckReport& r) { expected_check(a, r); });
  if (!entry.hints.empty()) run("HINTS", 0, [&](CheckReport& r) { hints_check(a, r); });

  std::sort(out.begin(), out.end(), report_less);
  return out;
}

}  // namespace glen
