#include "glen/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "glen/error.hpp"

namespace glen {

namespace {

void require_same_degree(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) {
    throw DegreeMismatch("permutation degrees differ: " + std::to_string(a.degree()) +
                         " vs " + std::to_string(b.degree()));
  }
}

}  // namespace

Permutation::Permutation(std::size_t degree) : images_(degree) {
  std::iota(images_.begin(), images_.end(), Point{0});
}

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point y : images_) {
    if (y >= images_.size()) {
      throw ParseError("image " + std::to_string(y) + " out of range for degree " +
                       std::to_string(images_.size()));
    }
    if (seen[y]) throw ParseError("image " + std::to_string(y) + " repeated");
    seen[y] = true;
  }
}

Permutation Permutation::from_cycles(std::size_t degree, std::string_view text) {
  if (degree == 0) throw ParseError("degree must be positive");
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  std::vector<bool> used(degree, false);

  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };

  skip_space();
  while (i < text.size()) {
    if (text[i] != '(') {
      throw ParseError("expected '(' at offset " + std::to_string(i) + " in \"" +
                       std::string(text) + "\"");
    }
    ++i;
    std::vector<Point> cycle;
    for (;;) {
      skip_space();
      if (i >= text.size()) throw ParseError("unterminated cycle in \"" + std::string(text) + "\"");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
        throw ParseError("unexpected character '" + std::string(1, text[i]) + "' in \"" +
                         std::string(text) + "\"");
      }
      std::uint64_t value = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        value = value * 10 + static_cast<std::uint64_t>(text[i] - '0');
        if (value > degree) break;
        ++i;
      }
      if (value >= degree) {
        throw ParseError("point " + std::to_string(value) + " out of range for degree " +
                         std::to_string(degree));
      }
      auto x = static_cast<Point>(value);
      if (used[x]) throw ParseError("repeated point " + std::to_string(x));
      used[x] = true;
      cycle.push_back(x);
    }
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      images[cycle[k]] = cycle[(k + 1) % cycle.size()];
    }
    skip_space();
  }
  Permutation p;
  p.images_ = std::move(images);
  return p;
}

bool Permutation::is_identity() const noexcept {
  for (Point x = 0; x < images_.size(); ++x) {
    if (images_[x] != x) return false;
  }
  return true;
}

std::optional<Point> Permutation::first_moved_point() const noexcept {
  for (Point x = 0; x < images_.size(); ++x) {
    if (images_[x] != x) return x;
  }
  return std::nullopt;
}

Permutation Permutation::operator*(const Permutation& rhs) const {
  require_same_degree(*this, rhs);
  Permutation out;
  out.images_.resize(images_.size());
  for (std::size_t x = 0; x < images_.size(); ++x) out.images_[x] = rhs.images_[images_[x]];
  return out;
}

Permutation& Permutation::operator*=(const Permutation& rhs) {
  require_same_degree(*this, rhs);
  for (auto& y : images_) y = rhs.images_[y];
  return *this;
}

Permutation Permutation::inverse() const {
  Permutation out;
  out.images_.resize(images_.size());
  for (Point x = 0; x < images_.size(); ++x) out.images_[images_[x]] = x;
  return out;
}

Permutation Permutation::pow(long long k) const {
  Permutation base = k < 0 ? inverse() : *this;
  auto e = static_cast<unsigned long long>(k < 0 ? -k : k);
  Permutation result(degree());
  while (e != 0) {
    if (e & 1ULL) result *= base;
    e >>= 1;
    if (e != 0) base = base * base;
  }
  return result;
}

std::uint64_t Permutation::order() const {
  std::uint64_t ord = 1;
  for (const auto& c : cycles()) ord = std::lcm(ord, static_cast<std::uint64_t>(c.size()));
  return ord;
}

Permutation Permutation::conjugate_by(const Permutation& a) const {
  require_same_degree(*this, a);
  // a^-1 x a maps a[p] -> a[x[p]]
  Permutation out;
  out.images_.resize(images_.size());
  for (Point p = 0; p < images_.size(); ++p) out.images_[a.images_[p]] = a.images_[images_[p]];
  return out;
}

Permutation Permutation::restrict_to(std::size_t n) const {
  Permutation out;
  out.images_.assign(images_.begin(), images_.begin() + static_cast<std::ptrdiff_t>(n));
  return out;
}

std::vector<std::vector<Point>> Permutation::cycles() const {
  std::vector<std::vector<Point>> out;
  std::vector<bool> seen(images_.size(), false);
  for (Point x = 0; x < images_.size(); ++x) {
    if (seen[x]) continue;
    std::vector<Point> c;
    for (Point y = x; !seen[y]; y = images_[y]) {
      seen[y] = true;
      c.push_back(y);
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::string Permutation::to_cycles() const {
  std::ostringstream os;
  for (const auto& c : cycles()) {
    if (c.size() < 2) continue;
    os << '(';
    for (std::size_t k = 0; k < c.size(); ++k) os << (k ? " " : "") << c[k];
    os << ')';
  }
  return os.str();
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  // FNV-1a over the image sequence
  std::uint64_t h = 1469598103934665603ULL;
  for (Point y : p.images()) {
    h ^= y;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

Permutation make_permutation(std::size_t degree, std::string_view cycles) {
  return Permutation::from_cycles(degree, cycles);
}

Permutation make_permutation(std::vector<Point> images) { return Permutation(std::move(images)); }

Permutation compose(const Permutation& a, const Permutation& b) { return a * b; }

Permutation inverse(const Permutation& a) { return a.inverse(); }

std::uint64_t element_order(const Permutation& a) { return a.order(); }

Permutation power(const Permutation& a, long long k) { return a.pow(k); }

Permutation commutator(const Permutation& a, const Permutation& b) {
  return a.inverse() * b.inverse() * a * b;
}

std::vector<Permutation> parse_generators(std::size_t degree,
                                          const std::vector<std::string>& texts) {
  std::vector<Permutation> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(Permutation::from_cycles(degree, t));
  return out;
}

std::vector<std::string> format_generators(const std::vector<Permutation>& gens) {
  std::vector<std::string> out;
  out.reserve(gens.size());
  for (const auto& g : gens) out.push_back(g.to_cycles());
  return out;
}

}  // namespace glen
