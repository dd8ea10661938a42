#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace lookdec {

struct InvalidInputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedCapabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidParamsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BudgetExceededError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when constraint pruning empties the candidate set mid-decode.
// Carries the best pruned sequence for diagnostics.
struct EmptyBeamError : std::runtime_error {
  EmptyBeamError(const std::string& msg, std::vector<int> best, double logprob)
      : std::runtime_error(msg), best_pruned(std::move(best)), best_logprob(logprob) {}
  std::vector<int> best_pruned;
  double best_logprob;
};

}  // namespace lookdec
