#include "doctest.h"
#include "glen/error.hpp"
#include "glen/permutation.hpp"
#include "glen/rng.hpp"
#include "oracle.hpp"

using glen::Permutation;

TEST_CASE("cycle notation parses to images") {
  auto p = glen::make_permutation(3, "(0 1 2)");
  CHECK(oracle::raw(p) == oracle::Perm{1, 2, 0});
  CHECK(glen::make_permutation(4, "").is_identity());
  CHECK(oracle::raw(glen::make_permutation(4, "")) == oracle::Perm{0, 1, 2, 3});
}

TEST_CASE("malformed cycle text is rejected") {
  CHECK_THROWS_AS(glen::make_permutation(4, "(0 1)(1 2)"), glen::ParseError);
  CHECK_THROWS_AS(glen::make_permutation(4, "(0 4)"), glen::ParseError);
  CHECK_THROWS_AS(glen::make_permutation(4, "(0 1"), glen::ParseError);
  CHECK_THROWS_AS(glen::make_permutation(4, "(a b)"), glen::ParseError);
  CHECK_THROWS_AS(glen::make_permutation({0, 0, 1}), glen::ParseError);
}

TEST_CASE("compose applies left then right") {
  auto a = glen::make_permutation(3, "(0 1)");
  auto b = glen::make_permutation(3, "(1 2)");
  auto c = glen::compose(a, b);
  // hand evaluation: 0 -> 1 -> 2, 1 -> 0 -> 0, 2 -> 2 -> 1
  CHECK(oracle::raw(c) == oracle::Perm{2, 0, 1});
  CHECK(c.to_cycles() == "(0 2 1)");
  CHECK(oracle::raw(c) == oracle::mul(oracle::raw(a), oracle::raw(b)));
}

TEST_CASE("compose rejects differing degrees") {
  CHECK_THROWS_AS(glen::compose(Permutation(3), Permutation(4)), glen::DegreeMismatch);
}

TEST_CASE("inverse order and power") {
  CHECK(glen::inverse(glen::make_permutation(4, "(0 1 2 3)")).to_cycles() == "(0 3 2 1)");
  CHECK(glen::element_order(glen::make_permutation(5, "(0 1)(2 3 4)")) == 6);
  auto x = glen::make_permutation(5, "(0 1 2 3 4)");
  CHECK(glen::power(x, 5).is_identity());
  CHECK(glen::power(x, -1) == x.inverse());
  CHECK(glen::power(x, 7) == glen::power(x, 2));
}

TEST_CASE("conjugation and commutator conventions") {
  auto x = glen::make_permutation(4, "(0 1)");
  auto a = glen::make_permutation(4, "(1 2 3)");
  // x^a = a^-1 x a relabels the points of x by a
  CHECK(x.conjugate_by(a).to_cycles() == "(0 2)");
  auto ra = oracle::raw(a);
  auto rx = oracle::raw(x);
  CHECK(oracle::raw(glen::commutator(x, a)) ==
        oracle::mul(oracle::mul(oracle::inv(rx), oracle::inv(ra)), oracle::mul(rx, ra)));
}

TEST_CASE("property: random permutations round-trip and invert") {
  glen::Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng.below(12);
    std::vector<glen::Point> img(n);
    for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<glen::Point>(i);
    for (std::size_t i = n; i > 1; --i) std::swap(img[i - 1], img[rng.below(i)]);
    Permutation p(img);
    CHECK(Permutation::from_cycles(n, p.to_cycles()) == p);
    CHECK((p * p.inverse()).is_identity());
    CHECK((p.inverse() * p).is_identity());
    CHECK(p.pow(static_cast<long long>(p.order())).is_identity());
    CHECK(oracle::order_of(oracle::raw(p)) == p.order());
  }
}
