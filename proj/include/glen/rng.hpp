#pragma once

#include <cstdint>
#include <string_view>

namespace glen {

/// Counter-based SplitMix64 stream. `split` derives an independent stream
/// from a label so parallel work stays reproducible regardless of ordering.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept : seed_(seed) {}

  std::uint64_t next() noexcept { return mix(seed_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

  /// Uniform in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept {
    // rejection keeps the draw unbiased
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % bound;
  }

  Rng split(std::string_view label) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (char c : label) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ULL;
    }
    return Rng(mix(seed_ ^ mix(h)));
  }

  std::uint64_t seed() const noexcept { return seed_; }

  static std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace glen
