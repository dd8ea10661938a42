#pragma once

#include <span>
#include <vector>

#include "lookdec/constraints.hpp"
#include "lookdec/model.hpp"

namespace lookdec {

struct OracleBudget {
  int max_len = 6;
  long long max_enumerations = 10'000'000;  // hard cap on |V|^max_len
};

struct OracleResult {
  std::vector<int> tokens;  // bos ... eos
  double objective = 0.0;   // logprob - lambda' * unsatisfied clauses
};

// Depth-first enumeration of every eos-terminated sequence of generated
// length <= max_len, pruning only branches whose partial logprob is -inf.
// Returns the objective maximizer; ties go to the lexicographically
// smallest token sequence. Throws BudgetExceededError when |V|^max_len
// exceeds the cap.
OracleResult exact_argmax(const StepScorer& model, const ConstraintSet& cs, double lambda_prime,
                          const OracleBudget& budget);

// Max over all eos-terminated completions of F(prefix . token . future),
// within the budget's length allowance. -inf when no completion terminates.
double exact_Q(const StepScorer& model, const ConstraintSet& cs, std::span<const int> prefix,
               int token, double lambda_prime, const OracleBudget& budget);

}  // namespace lookdec
