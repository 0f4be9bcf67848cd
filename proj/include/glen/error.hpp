#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace glen {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class DegreeMismatch : public Error {
 public:
  using Error::Error;
};

/// A desk-scale cap was hit. `requested` is the size that was refused.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t requested)
      : Error(what + " (requested " + std::to_string(requested) + ")"),
        requested_(requested) {}

  std::uint64_t requested() const noexcept { return requested_; }

 private:
  std::uint64_t requested_;
};

class NotNormal : public Error {
 public:
  using Error::Error;
};

class NotASubgroup : public Error {
 public:
  using Error::Error;
};

class NotPermuted : public Error {
 public:
  using Error::Error;
};

class NotSoluble : public Error {
 public:
  using Error::Error;
};

class NotPSoluble : public Error {
 public:
  using Error::Error;
};

class NotAPGroup : public Error {
 public:
  using Error::Error;
};

class HintError : public Error {
 public:
  using Error::Error;
};

/// Raised when a result fails its own post-condition check.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace glen
