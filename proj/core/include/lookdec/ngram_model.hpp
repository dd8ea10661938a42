#pragma once

#include <map>
#include <span>
#include <vector>

#include "lookdec/model.hpp"

namespace lookdec {

/**
 * Add-k smoothed n-gram model. `order` is the context length; probabilities
 * follow (count + k) / (context_total + k * E) where E is the number of
 * emittable tokens (everything except bos). bos always has probability 0.
 */
class NGramModel : public ContextModel {
 public:
  NGramModel(Vocabulary vocab, int order, double smoothing_k,
             std::map<std::pair<std::vector<int>, int>, long long> counts);

  // One sequence per corpus line; each line is wrapped in bos ... eos.
  static NGramModel train(const Vocabulary& vocab,
                          const std::vector<std::vector<int>>& sequences, int order,
                          double smoothing_k);

  const Vocabulary& vocab() const override { return vocab_; }
  double smoothing_k() const { return k_; }
  const std::map<std::pair<std::vector<int>, int>, long long>& counts() const { return counts_; }

 protected:
  StepDistribution dist_for_context(std::span<const int> context) const override;

 private:
  Vocabulary vocab_;
  double k_;
  std::map<std::pair<std::vector<int>, int>, long long> counts_;
  std::map<std::vector<int>, long long> context_totals_;
};

}  // namespace lookdec
