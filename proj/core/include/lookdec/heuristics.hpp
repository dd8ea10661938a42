#pragma once

#include <span>

#include "lookdec/constraints.hpp"
#include "lookdec/lookahead.hpp"
#include "lookdec/model.hpp"

namespace lookdec {

struct HeuristicWeights {
  double lambda = 1.0;         // unconstrained lookahead-likelihood weight
  double lambda1 = 0.1;        // prefix-progress reward
  double lambda2 = 0.1;        // future-satisfaction weight
  double lambda_prime = 10.0;  // per-clause penalty at eos
};

// How the heuristic aggregates across the lookahead set; Max is the
// default, Mean is available behind a flag.
enum class Aggregation { Max, Mean };

// lambda * aggregate over continuations of summed step log-probabilities.
double unconstrained_h(std::span<const Continuation> continuations, double lambda,
                       Aggregation agg = Aggregation::Max);

// Force-feeds the phrase token by token from the given context and sums the
// per-token log-probabilities. -inf as soon as any token is impossible.
double phrase_prob_from(const StepScorer& model, std::span<const int> context,
                        std::span<const int> phrase);

// lambda2 * aggregate over continuations of [max over targets of the best
// start-offset phrase probability]. Offsets range over every position inside
// the continuation, including starting immediately after the candidate token
// and starting right past the continuation's end; phrases may extend beyond
// the horizon (the model prices the completion). 0 when targets is empty.
double future_satisfaction_h(const StepScorer& model, std::span<const int> prefix,
                             std::span<const Continuation> continuations,
                             const ConstraintSet& cs, std::span<const int> target_literals,
                             double lambda2, Aggregation agg = Aggregation::Max);

// s_prefix + lambda1 * progress + h_fut + h_unc. The h terms arrive already
// weighted; disabled terms are passed as 0.
double combined_candidate_score(double s_prefix, double progress, double h_unc, double h_fut,
                                const HeuristicWeights& weights);

}  // namespace lookdec
