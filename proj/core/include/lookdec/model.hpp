#pragma once

#include <span>
#include <vector>

#include "lookdec/vocab.hpp"

namespace lookdec {

/**
 * Next-token distribution in natural-log space over the full vocabulary.
 * exp of the entries sums to 1 (within 1e-9); the bos entry is -inf.
 */
struct StepDistribution {
  std::vector<double> logprobs;

  double logprob(int id) const { return logprobs[static_cast<size_t>(id)]; }
  // Highest-probability token, ties broken by lowest id.
  int argmax() const;
  // Throws InvalidInputError if the invariants above fail.
  void validate(int bos_id, double tol = 1e-9) const;

  static StepDistribution from_probs(const std::vector<double>& probs);
};

/** Probability weights over the full vocabulary; non-negative, sums to 1. */
struct TokenMixture {
  std::vector<double> weights;

  static TokenMixture one_hot(int id, int vocab_size);
  bool is_one_hot(int* hot_id = nullptr) const;
  int argmax() const;
};

/**
 * The model abstraction the whole decoder consumes: a map from a token
 * prefix to the next-token log distribution. Implementations are immutable
 * after construction; step/soft_step are safe to call concurrently.
 */
class StepScorer {
 public:
  virtual ~StepScorer() = default;

  virtual const Vocabulary& vocab() const = 0;

  // prefix must begin with bos and contain only valid ids.
  virtual StepDistribution step(std::span<const int> prefix) const = 0;

  virtual bool supports_soft_step() const { return false; }

  // Next-token distribution conditioned on hard_prefix followed by
  // mixture-valued positions. With all-one-hot mixtures this must equal
  // step() on the flattened prefix exactly.
  virtual StepDistribution soft_step(std::span<const int> hard_prefix,
                                     std::span<const TokenMixture> soft_suffix) const;

 protected:
  // Shared precondition check for step(); throws InvalidInputError.
  void check_prefix(std::span<const int> prefix) const;
};

// Sum of per-position step log-probabilities; tokens must begin with bos.
// [bos] alone scores 0. -inf as soon as any step assigns -inf.
double sequence_logprob(const StepScorer& model, std::span<const int> tokens);

/**
 * Base for fixed-order context models (table and n-gram). The context is
 * the last `order` tokens of the prefix, left-padded with bos. Provides the
 * canonical soft_step semantics for embedding-free models: the mixture-
 * weighted expectation of next-step distributions over context completions
 * consistent with the mixtures (exact for up to two mixture positions in
 * the context window; deeper windows collapse older mixtures to argmax).
 */
class ContextModel : public StepScorer {
 public:
  explicit ContextModel(int order) : order_(order) {}

  int order() const { return order_; }

  StepDistribution step(std::span<const int> prefix) const override;
  bool supports_soft_step() const override { return true; }
  StepDistribution soft_step(std::span<const int> hard_prefix,
                             std::span<const TokenMixture> soft_suffix) const override;

 protected:
  // Distribution for an exact context window of length order().
  virtual StepDistribution dist_for_context(std::span<const int> context) const = 0;

  // Last `order` positions of prefix, left-padded with bos.
  std::vector<int> context_of(std::span<const int> prefix) const;

 private:
  int order_;
};

}  // namespace lookdec
