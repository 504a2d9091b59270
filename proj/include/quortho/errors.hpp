#pragma once

#include <stdexcept>
#include <string>

namespace quortho {

// The input matrix (or vector family) is numerically rank deficient:
// a pivot / residual fell below the deficiency threshold.
class RankDeficiencyError : public std::runtime_error {
 public:
  explicit RankDeficiencyError(const std::string& what)
      : std::runtime_error(what) {}
};

// An iterative routine exhausted its iteration budget without reaching
// the requested tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what)
      : std::runtime_error(what) {}
};

// A post-selected measurement branch carries (numerically) zero
// probability mass, so the conditional state is undefined.
class BranchUnavailableError : public std::runtime_error {
 public:
  explicit BranchUnavailableError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace quortho
