#include <map>

#include "doctest.h"
#include "glen/error.hpp"
#include "glen/structure.hpp"
#include "glen/survey.hpp"
#include "groups.hpp"
#include "oracle.hpp"

using glen::Budget;
using glen::Group;
using glen::Quantity;

namespace {

// Every subgroup of these groups is 2-generated, so closures of pairs find all.
std::pair<std::size_t, std::size_t> oracle_counts(const Group& g) {
  std::size_t n = g.degree();
  auto all = oracle::as_vec(oracle::closure(n, oracle::raw(g.generators())));
  std::set<oracle::Set> subs;
  for (const auto& x : all) {
    for (const auto& y : all) subs.insert(oracle::closure(n, {x, y}));
  }
  std::set<oracle::Set> classed;
  std::size_t classes = 0;
  for (const auto& s : subs) {
    if (classed.count(s)) continue;
    ++classes;
    for (const auto& a : all) {
      oracle::Set c;
      for (const auto& x : s) c.insert(oracle::mul(oracle::mul(oracle::inv(a), x), a));
      classed.insert(c);
    }
  }
  return {subs.size(), classes};
}

}  // namespace

TEST_CASE("subgroup inventories") {
  Budget b;
  auto s4 = glen::enumerate_subgroups(fixtures::s4(), b);
  CHECK(s4.total() == 30);
  CHECK(s4.class_representatives().size() == 11);
  auto c6 = glen::enumerate_subgroups(fixtures::c6(), b);
  CHECK(c6.total() == 4);
  auto a5 = glen::enumerate_subgroups(fixtures::a5(), b);
  CHECK(a5.total() == 59);
  CHECK(a5.class_representatives().size() == 9);
  CHECK(a5.normal_subgroups().size() == 2);
  CHECK(s4.normal_subgroups().size() == 4);
}

TEST_CASE("property: inventory matches the pair-closure oracle") {
  Budget b;
  using namespace fixtures;
  for (const auto& g : {s3(), d8(), q8(), s4(), a4(), a5(), sl23()}) {
    auto inv = glen::enumerate_subgroups(g, b);
    auto [total, classes] = oracle_counts(g);
    CHECK(inv.total() == total);
    CHECK(inv.class_representatives().size() == classes);
    std::uint64_t sum = 0;
    for (auto s : inv.class_sizes()) sum += s;
    CHECK(sum == inv.total());
  }
}

TEST_CASE("property: representatives are subgroups and classes hold genuine conjugates") {
  Budget b;
  auto g = fixtures::s4();
  auto inv = glen::enumerate_subgroups(g, b);
  const auto& reps = inv.class_representatives();
  for (std::size_t i = 0; i < reps.size(); ++i) {
    CHECK(reps[i].is_subgroup_of(g));
    auto members = inv.class_members(i);
    CHECK(members.size() == inv.class_sizes()[i]);
    for (const auto& m : members) CHECK(m.order() == reps[i].order());
    for (std::size_t j = i + 1; j < reps.size(); ++j) {
      if (reps[j].order() != reps[i].order()) continue;
      for (const auto& m : members) CHECK_FALSE(m.same_as(reps[j]));
    }
  }
}

TEST_CASE("survey budget") {
  Budget b;
  CHECK_THROWS_AS(glen::enumerate_subgroups(fixtures::a5_wr_c2(), b), glen::BudgetExceeded);
}

TEST_CASE("subgroup maxima") {
  Budget b;
  auto a5 = glen::enumerate_subgroups(fixtures::a5(), b);
  auto l = glen::max_invariant(a5, Quantity::L2x2p, 2, b);
  CHECK(l.value == 2);
  CHECK(l.mode == glen::SurveyMode::Exhaustive);
  CHECK(glen::l_2x2prime(l.witness, b) == 2);
  CHECK(glen::max_invariant(a5, Quantity::L2, 2, b).value == 1);
  auto p3 = glen::max_invariant(a5, Quantity::MaxPLength, 3, b);
  CHECK(p3.value == 1);
  CHECK(glen::max_invariant(a5, Quantity::MaxFittingHeight, 2, b).value == 2);
  auto s4 = glen::enumerate_subgroups(fixtures::s4(), b);
  CHECK(glen::max_invariant(s4, Quantity::L2, 2, b).value == 2);
  CHECK(glen::max_invariant(s4, Quantity::L2x2p, 2, b).value == 3);
}

TEST_CASE("property: scores are conjugation invariant") {
  Budget b;
  glen::Rng rng(5);
  for (const auto& g : {fixtures::s4(), fixtures::a5(), fixtures::sl23()}) {
    auto inv = glen::enumerate_subgroups(g, b);
    const auto& reps = inv.class_representatives();
    for (int t = 0; t < 20; ++t) {
      const auto& h = reps[rng.below(reps.size())];
      auto a = g.random_element(rng);
      std::vector<glen::Permutation> gens;
      for (const auto& x : h.generators()) gens.push_back(x.conjugate_by(a));
      Group hc(g.degree(), gens);
      for (auto q : {Quantity::L2, Quantity::L2x2p, Quantity::MaxFittingHeight}) {
        CHECK(glen::score(h, q, 2, b) == glen::score(hc, q, 2, b));
      }
      CHECK(glen::score(h, Quantity::MaxPLength, 3, b) == glen::score(hc, Quantity::MaxPLength, 3, b));
    }
  }
}

TEST_CASE("property: (2x2')-length is monotone on soluble subgroup pairs") {
  Budget b;
  for (const auto& g : {fixtures::s4(), fixtures::a5(), fixtures::sl23(), fixtures::psl27()}) {
    auto inv = glen::enumerate_subgroups(g, b);
    const auto& reps = inv.class_representatives();
    std::vector<std::optional<std::size_t>> scores;
    for (const auto& h : reps) scores.push_back(glen::score(h, Quantity::L2x2p, 2, b));
    for (auto [i, j] : inv.containments()) {
      if (scores[i] && scores[j]) CHECK(*scores[i] <= *scores[j]);
    }
  }
}

TEST_CASE("witness search") {
  Budget b;
  auto t0 = glen::witness_search(fixtures::a5(), Quantity::L2x2p, 2, 0, 1, b);
  REQUIRE(t0);
  CHECK(t0->witness.is_trivial());
  auto s5 = glen::witness_search(fixtures::s5(), Quantity::L2x2p, 2, 3, 42, b);
  REQUIRE(s5);
  CHECK(s5->mode == glen::SurveyMode::WitnessOnly);
  CHECK(glen::l_2x2prime(s5->witness, b) >= 3);
  auto w = glen::witness_search(fixtures::a5_wr_a5(), Quantity::MaxFittingHeight, 2, 2, 42, b);
  REQUIRE(w);
  CHECK(glen::fitting_height(w->witness, b) >= 2);
}

TEST_CASE("property: exhaustive maxima dominate witnesses") {
  Budget b;
  auto g = fixtures::s5();
  auto inv = glen::enumerate_subgroups(g, b);
  for (auto q : {Quantity::L2, Quantity::L2x2p, Quantity::MaxFittingHeight}) {
    auto best = glen::max_invariant(inv, q, 2, b);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      auto w = glen::witness_search(g, q, 2, 1, seed, b);
      if (w) CHECK(w->value <= best.value);
    }
  }
}
