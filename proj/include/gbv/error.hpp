#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace gbv {

/// 1-based coefficient index. Rule-based sequences may use the full 64-bit range.
using Index = std::uint64_t;
inline constexpr Index kMaxIndex = std::numeric_limits<Index>::max();

/// Invalid input parameters (p, gamma, levels, horizons, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Index outside the defined range of a sequence.
class OutOfRangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Malformed sequence file. The message names the offending line.
class LoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A hypothesis of an inequality does not hold for the given instance.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Requested accuracy cannot be reached; `achieved` carries the best error obtained.
class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

}  // namespace gbv
