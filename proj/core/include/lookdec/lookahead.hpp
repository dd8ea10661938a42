#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lookdec/model.hpp"

namespace lookdec {

enum class LookaheadStrategy { Greedy, Soft, Beam, Sampling };

struct LookaheadConfig {
  LookaheadStrategy strategy = LookaheadStrategy::Greedy;
  int horizon = 0;          // rollout length; 0 yields the single empty continuation
  int rollouts = 1;         // sampling only
  int beam_width = 1;       // beam only
  double temperature = 0.0; // soft only; 0 degenerates to greedy
  uint64_t seed = 0;        // sampling only
};

/**
 * One rollout continuation of a candidate prefix, with its per-step
 * log-probabilities. Truncates at eos (eos itself included); never extends
 * past it. Soft rollouts additionally record the per-step mixtures and score
 * steps with the tempered distribution instead of the model's.
 */
struct Continuation {
  std::vector<int> tokens;
  std::vector<double> step_logprobs;
  std::vector<TokenMixture> soft_steps;  // soft strategy only

  double total_logprob() const;
};

std::vector<Continuation> greedy_lookahead(const StepScorer& model, std::span<const int> prefix,
                                           int horizon);

std::vector<Continuation> soft_lookahead(const StepScorer& model, std::span<const int> prefix,
                                         int horizon, double temperature);

// Beam search of the given width for `horizon` steps, ranked by summed step
// log-probabilities; ties by lexicographic tokens.
std::vector<Continuation> beam_lookahead(const StepScorer& model, std::span<const int> prefix,
                                         int horizon, int width);

// Independent ancestral samples, deterministic for a fixed seed.
std::vector<Continuation> sampling_lookahead(const StepScorer& model, std::span<const int> prefix,
                                             int horizon, int rollouts, uint64_t seed);

std::vector<Continuation> generate_lookaheads(const StepScorer& model, std::span<const int> prefix,
                                              const LookaheadConfig& config);

// Deterministic stream derivation so per-candidate sampling seeds are
// independent of evaluation order.
uint64_t mix_seed(uint64_t seed, uint64_t a, uint64_t b = 0);

}  // namespace lookdec
