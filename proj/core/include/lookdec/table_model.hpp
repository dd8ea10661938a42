#pragma once

#include <map>
#include <span>
#include <vector>

#include "lookdec/model.hpp"

namespace lookdec {

/**
 * Deterministic conditional-table model: an explicit map from the last-n
 * token context to a next-token distribution, with a default row for
 * unseen contexts. The main test fixture model.
 */
class TableModel : public ContextModel {
 public:
  TableModel(Vocabulary vocab, int order, std::map<std::vector<int>, StepDistribution> rows,
             StepDistribution default_row);

  // Uniform distribution over all non-bos tokens for every context.
  static TableModel uniform(Vocabulary vocab);

  // Context-free model with the given probabilities over the vocabulary.
  static TableModel context_free(Vocabulary vocab, const std::vector<double>& probs);

  const Vocabulary& vocab() const override { return vocab_; }
  const std::map<std::vector<int>, StepDistribution>& rows() const { return rows_; }
  const StepDistribution& default_row() const { return default_; }

 protected:
  StepDistribution dist_for_context(std::span<const int> context) const override;

 private:
  Vocabulary vocab_;
  std::map<std::vector<int>, StepDistribution> rows_;
  StepDistribution default_;
};

}  // namespace lookdec
