#include "lookdec/ngram_model.hpp"

#include "lookdec/errors.hpp"
#include "lookdec/logspace.hpp"

namespace lookdec {

NGramModel::NGramModel(Vocabulary vocab, int order, double smoothing_k,
                       std::map<std::pair<std::vector<int>, int>, long long> counts)
    : ContextModel(order), vocab_(std::move(vocab)), k_(smoothing_k), counts_(std::move(counts)) {
  if (order < 1) throw InvalidInputError("n-gram order must be >= 1");
  if (!(smoothing_k > 0.0)) throw InvalidInputError("smoothing k must be > 0");
  for (const auto& [key, c] : counts_) {
    if (static_cast<int>(key.first.size()) != order) {
      throw InvalidInputError("n-gram count context length does not match order");
    }
    if (c < 0) throw InvalidInputError("negative n-gram count");
    if (key.second == vocab_.bos_id()) {
      throw InvalidInputError("n-gram count for bos emission");
    }
    context_totals_[key.first] += c;
  }
}

NGramModel NGramModel::train(const Vocabulary& vocab,
                             const std::vector<std::vector<int>>& sequences, int order,
                             double smoothing_k) {
  std::map<std::pair<std::vector<int>, int>, long long> counts;
  for (const auto& seq : sequences) {
    std::vector<int> full;
    full.push_back(vocab.bos_id());
    full.insert(full.end(), seq.begin(), seq.end());
    full.push_back(vocab.eos_id());
    for (size_t t = 1; t < full.size(); ++t) {
      std::vector<int> ctx(static_cast<size_t>(order), vocab.bos_id());
      for (int i = 0; i < order && i < static_cast<int>(t); ++i) {
        ctx[static_cast<size_t>(order - 1 - i)] = full[t - 1 - static_cast<size_t>(i)];
      }
      counts[{std::move(ctx), full[t]}] += 1;
    }
  }
  return NGramModel(vocab, order, smoothing_k, std::move(counts));
}

StepDistribution NGramModel::dist_for_context(std::span<const int> context) const {
  std::vector<int> ctx(context.begin(), context.end());
  long long total = 0;
  if (auto it = context_totals_.find(ctx); it != context_totals_.end()) total = it->second;

  const int V = vocab_.size();
  const int emittable = V - 1;  // bos is never emitted
  const double denom = static_cast<double>(total) + k_ * emittable;

  StepDistribution d;
  d.logprobs.assign(static_cast<size_t>(V), kNegInf);
  for (int tok = 0; tok < V; ++tok) {
    if (tok == vocab_.bos_id()) continue;
    long long c = 0;
    if (auto it = counts_.find({ctx, tok}); it != counts_.end()) c = it->second;
    d.logprobs[static_cast<size_t>(tok)] = std::log((static_cast<double>(c) + k_) / denom);
  }
  return d;
}

}  // namespace lookdec
