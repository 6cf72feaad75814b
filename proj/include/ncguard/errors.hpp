#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ncguard {

/// Base for domain failures (exit status 1 at the CLI). Precondition
/// violations are reported as std::invalid_argument instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoInverse : public Error {
 public:
  NoInverse() : Error("no inverse") {}
};

class SearchExhausted : public Error {
 public:
  explicit SearchExhausted(std::size_t attempts)
      : Error("parameter search exhausted after " + std::to_string(attempts) + " candidates"),
        attempts_(attempts) {}
  std::size_t attempts() const noexcept { return attempts_; }

 private:
  std::size_t attempts_;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InsufficientRank : public Error {
 public:
  InsufficientRank(std::size_t rank, std::size_t needed)
      : Error("insufficient degrees of freedom: rank " + std::to_string(rank) + " < " +
              std::to_string(needed)),
        rank_(rank) {}
  std::size_t rank() const noexcept { return rank_; }

 private:
  std::size_t rank_;
};

class InconsistentPackets : public Error {
 public:
  InconsistentPackets() : Error("packets are not consistent with any single file") {}
};

class ConditioningStarved : public Error {
 public:
  explicit ConditioningStarved(std::size_t attempts)
      : Error("conditioning starved: no trial accepted in " + std::to_string(attempts) +
              " attempts") {}
};

class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace ncguard
