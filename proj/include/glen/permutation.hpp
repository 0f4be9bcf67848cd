#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace glen {

using Point = std::uint32_t;

/// A bijection of {0, ..., degree-1} stored as its image sequence.
///
/// Products are read left to right: `a * b` applies `a` first, then `b`,
/// so `(a * b)[x] == b[a[x]]`. Conjugation is `x^a = a^-1 x a`.
class Permutation {
 public:
  Permutation() = default;

  /// Identity of the given degree.
  explicit Permutation(std::size_t degree);

  /// Takes an image sequence; throws ParseError unless it is a bijection.
  explicit Permutation(std::vector<Point> images);

  /// Parses 0-based cycle notation such as "(0 1)(2 3 4)". The empty string
  /// is the identity.
  static Permutation from_cycles(std::size_t degree, std::string_view text);

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator[](Point x) const noexcept { return images_[x]; }
  std::span<const Point> images() const noexcept { return images_; }

  bool is_identity() const noexcept;
  std::optional<Point> first_moved_point() const noexcept;

  Permutation operator*(const Permutation& rhs) const;
  Permutation& operator*=(const Permutation& rhs);
  Permutation inverse() const;
  Permutation pow(long long k) const;
  std::uint64_t order() const;

  /// a^-1 * this * a
  Permutation conjugate_by(const Permutation& a) const;

  /// Restriction to {0..n-1}; the caller guarantees that set is invariant.
  Permutation restrict_to(std::size_t n) const;

  /// Canonical cycle notation: cycles start at their smallest point, sorted,
  /// fixed points omitted. The identity prints as "".
  std::string to_cycles() const;

  std::vector<std::vector<Point>> cycles() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Point> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

// Free-function spellings of the core operations.
Permutation make_permutation(std::size_t degree, std::string_view cycles);
Permutation make_permutation(std::vector<Point> images);
Permutation compose(const Permutation& a, const Permutation& b);
Permutation inverse(const Permutation& a);
std::uint64_t element_order(const Permutation& a);
Permutation power(const Permutation& a, long long k);
/// [a, b] = a^-1 b^-1 a b
Permutation commutator(const Permutation& a, const Permutation& b);

std::vector<Permutation> parse_generators(std::size_t degree,
                                          const std::vector<std::string>& texts);
std::vector<std::string> format_generators(const std::vector<Permutation>& gens);

}  // namespace glen
