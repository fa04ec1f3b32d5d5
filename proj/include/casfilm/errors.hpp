#pragma once

#include <stdexcept>
#include <string>

namespace casfilm {

// bad user input: config values, malformed files, inconsistent grids
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// numerical breakdown during evaluation (passivity violated, eigensystem
// degenerate, singular boundary match)
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// adaptive integration ran out of budget; carries the best estimate reached
class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, double best_estimate,
                      double achieved_rel_error)
      : std::runtime_error(what),
        best_estimate_(best_estimate),
        achieved_rel_error_(achieved_rel_error) {}

  double best_estimate() const { return best_estimate_; }
  double achieved_rel_error() const { return achieved_rel_error_; }

 private:
  double best_estimate_;
  double achieved_rel_error_;
};

}  // namespace casfilm
