#include "glen/survey.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "glen/error.hpp"
#include "glen/structure.hpp"

namespace glen {

namespace {

using Bits = std::vector<std::uint64_t>;

struct BitsHash {
  std::size_t operator()(const Bits& b) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto w : b) {
      h ^= w;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

bool test(const Bits& b, std::uint32_t i) { return (b[i >> 6] >> (i & 63)) & 1U; }
void set(Bits& b, std::uint32_t i) { b[i >> 6] |= std::uint64_t{1} << (i & 63); }

bool is_subset(const Bits& a, const Bits& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a[i] & ~b[i]) != 0) return false;
  }
  return true;
}

}  // namespace

struct SubgroupInventory::Detail {
  std::vector<Permutation> elements;
  std::vector<std::vector<std::uint32_t>> rep_gens;
  std::vector<std::vector<Bits>> members;
  std::vector<std::vector<std::uint32_t>> conjugators;  // member k = rep ^ elements[c]
};

SubgroupInventory enumerate_subgroups(const Group& g, const Budget& budget) {
  const std::uint64_t order = g.order();
  if (order > budget.max_subgroup_order) {
    throw BudgetExceeded("subgroup survey above the full-survey order", order);
  }
  const auto n = static_cast<std::uint32_t>(order);
  const std::size_t words = (n + 63) / 64;
  auto detail = std::make_shared<SubgroupInventory::Detail>();
  detail->elements = elements(g, budget);
  const auto& els = detail->elements;

  std::vector<std::uint32_t> mul(static_cast<std::size_t>(n) * n);
  const std::size_t degree = g.degree();
  if (degree <= 16) {
    // pack the image sequence into 4-bit digits to skip sifting
    auto pack = [&](const Permutation& a, const Permutation& b) {
      std::uint64_t k = 0;
      for (std::size_t i = 0; i < degree; ++i) k |= std::uint64_t{b[a[static_cast<Point>(i)]]} << (4 * i);
      return k;
    };
    const Permutation id(degree);
    std::unordered_map<std::uint64_t, std::uint32_t> index;
    index.reserve(n);
    for (std::uint32_t a = 0; a < n; ++a) index.emplace(pack(els[a], id), a);
    for (std::uint32_t a = 0; a < n; ++a) {
      for (std::uint32_t b = 0; b < n; ++b) {
        mul[static_cast<std::size_t>(a) * n + b] = index.at(pack(els[a], els[b]));
      }
    }
  } else {
    for (std::uint32_t a = 0; a < n; ++a) {
      for (std::uint32_t b = 0; b < n; ++b) {
        mul[static_cast<std::size_t>(a) * n + b] = static_cast<std::uint32_t>(g.rank(els[a] * els[b]));
      }
    }
  }
  auto times = [&](std::uint32_t a, std::uint32_t b) { return mul[static_cast<std::size_t>(a) * n + b]; };

  std::vector<std::uint32_t> gen_ranks;
  std::vector<std::vector<std::uint32_t>> conj;  // conj[i][x] = rank of x^{gen i}
  for (const auto& a : g.generators()) {
    gen_ranks.push_back(static_cast<std::uint32_t>(g.rank(a)));
    std::vector<std::uint32_t> c(n);
    for (std::uint32_t x = 0; x < n; ++x) c[x] = static_cast<std::uint32_t>(g.rank(els[x].conjugate_by(a)));
    conj.push_back(std::move(c));
  }

  auto closure = [&](const std::vector<std::uint32_t>& gens) {
    Bits bits(words, 0);
    std::vector<std::uint32_t> list{0};
    set(bits, 0);
    for (std::size_t i = 0; i < list.size(); ++i) {
      for (auto s : gens) {
        std::uint32_t y = times(list[i], s);
        if (!test(bits, y)) {
          set(bits, y);
          list.push_back(y);
        }
      }
    }
    return bits;
  };

  SubgroupInventory inv(g);
  std::unordered_map<Bits, std::size_t, BitsHash> seen;  // member -> class index
  std::deque<std::size_t> queue;

  auto add_class = [&](Bits bits, std::vector<std::uint32_t> gens) {
    const std::size_t cls = detail->members.size();
    std::vector<Bits> members{bits};
    std::vector<std::uint32_t> conjugators{0};
    seen.emplace(bits, cls);
    for (std::size_t k = 0; k < members.size(); ++k) {
      for (std::size_t i = 0; i < conj.size(); ++i) {
        Bits image(words, 0);
        for (std::uint32_t x = 0; x < n; ++x) {
          if (test(members[k], x)) set(image, conj[i][x]);
        }
        if (seen.emplace(image, cls).second) {
          members.push_back(std::move(image));
          conjugators.push_back(times(conjugators[k], gen_ranks[i]));
        }
      }
    }
    std::vector<Permutation> perms;
    for (auto r : gens) perms.push_back(els[r]);
    inv.reps_.emplace_back(g.degree(), perms);
    inv.sizes_.push_back(members.size());
    inv.total_ += members.size();
    detail->rep_gens.push_back(std::move(gens));
    detail->members.push_back(std::move(members));
    detail->conjugators.push_back(std::move(conjugators));
    queue.push_back(cls);
  };

  add_class(closure({}), {});
  for (std::uint32_t x = 1; x < n; ++x) {
    Bits c = closure({x});
    if (!seen.count(c)) add_class(std::move(c), {x});
  }
  while (!queue.empty()) {
    const std::size_t cls = queue.front();
    queue.pop_front();
    const Bits rep = detail->members[cls][0];
    const std::vector<std::uint32_t> rep_gens = detail->rep_gens[cls];
    std::vector<std::uint32_t> rep_elements;
    for (std::uint32_t x = 0; x < n; ++x) {
      if (test(rep, x)) rep_elements.push_back(x);
    }
    // <H, x> depends only on the coset Hx
    Bits done = rep;
    for (std::uint32_t x = 0; x < n; ++x) {
      if (test(done, x)) continue;
      for (auto h : rep_elements) set(done, times(h, x));
      std::vector<std::uint32_t> gens = rep_gens;
      gens.push_back(x);
      Bits c = closure(gens);
      if (!seen.count(c)) add_class(std::move(c), std::move(gens));
    }
  }
  inv.detail_ = std::move(detail);
  return inv;
}

std::vector<Group> SubgroupInventory::normal_subgroups() const {
  std::vector<Group> out;
  for (std::size_t i = 0; i < reps_.size(); ++i) {
    if (sizes_[i] == 1) out.push_back(reps_[i]);
  }
  return out;
}

std::vector<Group> SubgroupInventory::class_members(std::size_t i) const {
  std::vector<Group> out;
  for (auto c : detail_->conjugators[i]) {
    std::vector<Permutation> gens;
    for (const auto& x : reps_[i].generators()) gens.push_back(x.conjugate_by(detail_->elements[c]));
    out.emplace_back(ambient_.degree(), gens);
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> SubgroupInventory::containments() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const auto& m = detail_->members;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (reps_[i].order() > reps_[j].order()) continue;
      if (reps_[j].order() % reps_[i].order() != 0) continue;
      bool found = std::any_of(m[j].begin(), m[j].end(),
                               [&](const Bits& b) { return is_subset(m[i][0], b); });
      if (found) out.emplace_back(i, j);
    }
  }
  return out;
}

// ----------------------------------------------------------------- scoring

std::string quantity_name(Quantity q, std::uint64_t p) {
  switch (q) {
    case Quantity::L2: return "L2";
    case Quantity::L2x2p: return "L2x2p";
    case Quantity::MaxFittingHeight: return "MAX_FH";
    case Quantity::MaxPLength: return "MAX_PLENGTH(" + std::to_string(p) + ")";
  }
  return "?";
}

std::optional<std::size_t> score(const Group& h, Quantity q, std::uint64_t p,
                                 const Budget& budget) {
  if (q == Quantity::MaxPLength) {
    if (!is_p_soluble(h, p, budget)) return std::nullopt;
    return p_length(h, p, budget);
  }
  if (!is_soluble(h)) return std::nullopt;
  switch (q) {
    case Quantity::L2: return p_length(h, 2, budget);
    case Quantity::L2x2p: return l_2x2prime(h, budget);
    case Quantity::MaxFittingHeight: return fitting_height(h, budget);
    case Quantity::MaxPLength: break;
  }
  return std::nullopt;
}

MaxInvariantReport max_invariant(const SubgroupInventory& inv, Quantity q, std::uint64_t p,
                                 const Budget& budget) {
  MaxInvariantReport best{q, p, 0, Group::trivial(inv.ambient().degree()), SurveyMode::Exhaustive};
  for (const auto& h : inv.class_representatives()) {
    auto s = score(h, q, p, budget);
    if (s && *s > best.value) {
      best.value = *s;
      best.witness = h;
    }
  }
  return best;
}

MaxInvariantReport max_invariant(const Group& g, Quantity q, std::uint64_t p,
                                 const Budget& budget) {
  return max_invariant(enumerate_subgroups(g, budget), q, p, budget);
}

std::optional<MaxInvariantReport> witness_search(const Group& g, Quantity q, std::uint64_t p,
                                                 std::size_t target, std::uint64_t seed,
                                                 const Budget& budget,
                                                 const std::vector<Permutation>& pool) {
  if (target == 0) {
    return MaxInvariantReport{q, p, 0, Group::trivial(g.degree()), SurveyMode::WitnessOnly};
  }
  Rng rng = Rng(seed).split("witness/" + quantity_name(q, p));
  std::vector<Permutation> candidates;
  for (const auto& x : pool) {
    if (!x.is_identity() && g.contains(x)) candidates.push_back(x);
  }
  for (int i = 0; i < 32; ++i) {
    Permutation x = g.random_element(rng);
    const std::uint64_t o = x.order();
    for (auto r : prime_divisors(o)) {
      candidates.push_back(x.pow(static_cast<long long>(o / p_part(o, r))));
    }
  }
  if (candidates.empty()) return std::nullopt;

  const std::uint64_t cap = std::min<std::uint64_t>(budget.max_enumeration, 4096);
  constexpr int kRestarts = 8;
  constexpr int kSteps = 24;
  for (int restart = 0; restart < kRestarts; ++restart) {
    Group h(g.degree(), {candidates[rng.below(candidates.size())]});
    auto s = score(h, q, p, budget);
    if (!s) continue;
    for (int step = 0;; ++step) {
      if (*s >= target) return MaxInvariantReport{q, p, *s, h, SurveyMode::WitnessOnly};
      if (step == kSteps) break;
      const Permutation& y = candidates[rng.below(candidates.size())];
      if (h.contains(y)) continue;
      Group k = h.join({y});
      if (k.order() > cap) continue;
      auto t = score(k, q, p, budget);
      if (t && *t >= *s) {
        h = std::move(k);
        s = t;
      }
    }
  }
  return std::nullopt;
}

}  // namespace glen
