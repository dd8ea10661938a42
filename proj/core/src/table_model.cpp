#include "lookdec/table_model.hpp"

#include "lookdec/errors.hpp"
#include "lookdec/logspace.hpp"

namespace lookdec {

TableModel::TableModel(Vocabulary vocab, int order,
                       std::map<std::vector<int>, StepDistribution> rows,
                       StepDistribution default_row)
    : ContextModel(order), vocab_(std::move(vocab)), rows_(std::move(rows)), default_(std::move(default_row)) {
  if (order < 0) throw InvalidInputError("table model order must be >= 0");
  default_.validate(vocab_.bos_id(), 1e-6);
  for (const auto& [ctx, dist] : rows_) {
    if (static_cast<int>(ctx.size()) != order) {
      throw InvalidInputError("table row context length does not match order");
    }
    dist.validate(vocab_.bos_id(), 1e-6);
  }
}

TableModel TableModel::uniform(Vocabulary vocab) {
  int V = vocab.size();
  std::vector<double> probs(static_cast<size_t>(V), 1.0 / (V - 1));
  probs[static_cast<size_t>(vocab.bos_id())] = 0.0;
  return context_free(std::move(vocab), probs);
}

TableModel TableModel::context_free(Vocabulary vocab, const std::vector<double>& probs) {
  StepDistribution d = StepDistribution::from_probs(probs);
  return TableModel(std::move(vocab), 0, {}, std::move(d));
}

StepDistribution TableModel::dist_for_context(std::span<const int> context) const {
  auto it = rows_.find(std::vector<int>(context.begin(), context.end()));
  if (it != rows_.end()) return it->second;
  return default_;
}

}  // namespace lookdec
