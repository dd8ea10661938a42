#include "lookdec/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lookdec/errors.hpp"
#include "lookdec/logspace.hpp"

namespace lookdec {

int StepDistribution::argmax() const {
  int best = 0;
  for (int i = 1; i < static_cast<int>(logprobs.size()); ++i) {
    if (logprobs[i] > logprobs[best]) best = i;
  }
  return best;
}

void StepDistribution::validate(int bos_id, double tol) const {
  double sum = 0.0;
  for (double lp : logprobs) {
    if (std::isnan(lp)) throw InvalidInputError("NaN in step distribution");
    sum += std::exp(lp);
  }
  if (std::abs(sum - 1.0) > tol) {
    throw InvalidInputError("step distribution does not sum to 1");
  }
  if (!is_neg_inf(logprobs[static_cast<size_t>(bos_id)])) {
    throw InvalidInputError("bos has nonzero probability in step distribution");
  }
}

StepDistribution StepDistribution::from_probs(const std::vector<double>& probs) {
  StepDistribution d;
  d.logprobs.reserve(probs.size());
  for (double p : probs) d.logprobs.push_back(safe_log(p));
  return d;
}

TokenMixture TokenMixture::one_hot(int id, int vocab_size) {
  TokenMixture m;
  m.weights.assign(static_cast<size_t>(vocab_size), 0.0);
  m.weights[static_cast<size_t>(id)] = 1.0;
  return m;
}

bool TokenMixture::is_one_hot(int* hot_id) const {
  for (int i = 0; i < static_cast<int>(weights.size()); ++i) {
    if (weights[i] == 1.0) {
      if (hot_id) *hot_id = i;
      return true;
    }
    if (weights[i] != 0.0) return false;
  }
  return false;
}

int TokenMixture::argmax() const {
  int best = 0;
  for (int i = 1; i < static_cast<int>(weights.size()); ++i) {
    if (weights[i] > weights[best]) best = i;
  }
  return best;
}

StepDistribution StepScorer::soft_step(std::span<const int>, std::span<const TokenMixture>) const {
  throw UnsupportedCapabilityError("model does not support soft_step");
}

void StepScorer::check_prefix(std::span<const int> prefix) const {
  const auto& v = vocab();
  if (prefix.empty() || prefix.front() != v.bos_id()) {
    throw InvalidInputError("prefix must begin with bos");
  }
  for (int id : prefix) {
    if (id < 0 || id >= v.size()) {
      throw InvalidInputError("unknown token id in prefix: " + std::to_string(id));
    }
  }
}

double sequence_logprob(const StepScorer& model, std::span<const int> tokens) {
  if (tokens.empty() || tokens.front() != model.vocab().bos_id()) {
    throw InvalidInputError("sequence must begin with bos");
  }
  double total = 0.0;
  for (size_t t = 1; t < tokens.size(); ++t) {
    StepDistribution d = model.step(tokens.subspan(0, t));
    double lp = d.logprob(tokens[t]);
    if (is_neg_inf(lp)) return kNegInf;
    total += lp;
  }
  return total;
}

std::vector<int> ContextModel::context_of(std::span<const int> prefix) const {
  std::vector<int> ctx(static_cast<size_t>(order_), vocab().bos_id());
  int n = static_cast<int>(prefix.size());
  for (int i = 0; i < order_ && i < n; ++i) {
    ctx[static_cast<size_t>(order_ - 1 - i)] = prefix[static_cast<size_t>(n - 1 - i)];
  }
  return ctx;
}

StepDistribution ContextModel::step(std::span<const int> prefix) const {
  check_prefix(prefix);
  return dist_for_context(context_of(prefix));
}

StepDistribution ContextModel::soft_step(std::span<const int> hard_prefix,
                                         std::span<const TokenMixture> soft_suffix) const {
  check_prefix(hard_prefix);
  const int V = vocab().size();
  const int bos = vocab().bos_id();
  const int m = static_cast<int>(soft_suffix.size());

  // Window over the virtual sequence hard_prefix . soft_suffix: each slot is
  // either a concrete token or an index into soft_suffix.
  struct Slot {
    int token = -1;  // -1 means mixture
    int mix = -1;
  };
  std::vector<Slot> window(static_cast<size_t>(order_));
  int hard_n = static_cast<int>(hard_prefix.size());
  for (int i = 0; i < order_; ++i) {
    int pos = hard_n + m - order_ + i;  // position in the virtual sequence
    Slot& s = window[static_cast<size_t>(i)];
    if (pos < 0) {
      s.token = bos;
    } else if (pos < hard_n) {
      s.token = hard_prefix[static_cast<size_t>(pos)];
    } else {
      s.mix = pos - hard_n;
    }
  }

  // Mixture slots inside the window. Exact expectation for windows of up to
  // two mixture positions (order <= 2 always qualifies); deeper windows keep
  // only the final mixture and collapse older ones to their argmax.
  std::vector<int> mix_slots;
  for (int i = 0; i < order_; ++i) {
    if (window[static_cast<size_t>(i)].mix >= 0) mix_slots.push_back(i);
  }
  if (order_ > 2 && mix_slots.size() > 1) {
    for (size_t j = 0; j + 1 < mix_slots.size(); ++j) {
      Slot& s = window[static_cast<size_t>(mix_slots[j])];
      s.token = soft_suffix[static_cast<size_t>(s.mix)].argmax();
      s.mix = -1;
    }
    mix_slots = {mix_slots.back()};
  }

  if (mix_slots.empty()) {
    std::vector<int> ctx(static_cast<size_t>(order_));
    for (int i = 0; i < order_; ++i) ctx[static_cast<size_t>(i)] = window[static_cast<size_t>(i)].token;
    return dist_for_context(ctx);
  }

  // Single one-hot fast path keeps the bit-identity contract with step().
  bool all_one_hot = true;
  std::vector<int> ctx(static_cast<size_t>(order_));
  for (int i = 0; i < order_; ++i) {
    const Slot& s = window[static_cast<size_t>(i)];
    if (s.token >= 0) {
      ctx[static_cast<size_t>(i)] = s.token;
    } else {
      int hot;
      if (soft_suffix[static_cast<size_t>(s.mix)].is_one_hot(&hot)) {
        ctx[static_cast<size_t>(i)] = hot;
      } else {
        all_one_hot = false;
        break;
      }
    }
  }
  if (all_one_hot) return dist_for_context(ctx);

  // Weighted average over context completions with nonzero weight.
  std::vector<double> acc(static_cast<size_t>(V), 0.0);
  double total_w = 0.0;
  std::vector<int> assign(mix_slots.size(), 0);

  auto enumerate = [&](auto&& self, size_t depth, double w, std::vector<int>& c) -> void {
    if (w == 0.0) return;
    if (depth == mix_slots.size()) {
      StepDistribution d = dist_for_context(c);
      for (int v = 0; v < V; ++v) acc[static_cast<size_t>(v)] += w * std::exp(d.logprobs[static_cast<size_t>(v)]);
      total_w += w;
      return;
    }
    const Slot& s = window[static_cast<size_t>(mix_slots[depth])];
    const auto& weights = soft_suffix[static_cast<size_t>(s.mix)].weights;
    for (int tok = 0; tok < V; ++tok) {
      double tw = weights[static_cast<size_t>(tok)];
      if (tw == 0.0) continue;
      c[static_cast<size_t>(mix_slots[depth])] = tok;
      self(self, depth + 1, w * tw, c);
    }
  };
  std::vector<int> c(static_cast<size_t>(order_));
  for (int i = 0; i < order_; ++i) {
    if (window[static_cast<size_t>(i)].token >= 0) c[static_cast<size_t>(i)] = window[static_cast<size_t>(i)].token;
  }
  enumerate(enumerate, 0, 1.0, c);

  StepDistribution out;
  out.logprobs.resize(static_cast<size_t>(V));
  for (int v = 0; v < V; ++v) {
    out.logprobs[static_cast<size_t>(v)] = safe_log(acc[static_cast<size_t>(v)] / total_w);
  }
  return out;
}

}  // namespace lookdec
