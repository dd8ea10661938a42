#include "lookdec/heuristics.hpp"

#include <algorithm>

#include "lookdec/errors.hpp"
#include "lookdec/logspace.hpp"

namespace lookdec {

double unconstrained_h(std::span<const Continuation> continuations, double lambda,
                       Aggregation agg) {
  if (continuations.empty()) throw InvalidInputError("unconstrained_h: empty lookahead set");
  if (lambda == 0.0) return 0.0;
  double acc = (agg == Aggregation::Max) ? kNegInf : 0.0;
  for (const Continuation& c : continuations) {
    double s = c.total_logprob();
    if (agg == Aggregation::Max) {
      acc = std::max(acc, s);
    } else {
      acc += s / static_cast<double>(continuations.size());
    }
  }
  return lambda * acc;
}

double phrase_prob_from(const StepScorer& model, std::span<const int> context,
                        std::span<const int> phrase) {
  if (phrase.empty()) throw InvalidInputError("phrase_prob_from: empty phrase");
  std::vector<int> cur(context.begin(), context.end());
  double total = 0.0;
  for (int tok : phrase) {
    StepDistribution d = model.step(cur);
    double lp = d.logprob(tok);
    if (is_neg_inf(lp)) return kNegInf;
    total += lp;
    cur.push_back(tok);
  }
  return total;
}

double future_satisfaction_h(const StepScorer& model, std::span<const int> prefix,
                             std::span<const Continuation> continuations,
                             const ConstraintSet& cs, std::span<const int> target_literals,
                             double lambda2, Aggregation agg) {
  if (continuations.empty()) throw InvalidInputError("future_satisfaction_h: empty lookahead set");
  if (target_literals.empty() || lambda2 == 0.0) return 0.0;

  const auto& lits = cs.literals();
  double acc = (agg == Aggregation::Max) ? kNegInf : 0.0;
  for (const Continuation& c : continuations) {
    double best = kNegInf;
    std::vector<int> ctx(prefix.begin(), prefix.end());
    for (size_t off = 0; off <= c.tokens.size(); ++off) {
      for (int li : target_literals) {
        best = std::max(best, phrase_prob_from(model, ctx, lits[static_cast<size_t>(li)].phrase));
      }
      // once the rollout emits eos the sequence is closed; no later starts
      if (off < c.tokens.size()) {
        if (c.tokens[off] == model.vocab().eos_id()) break;
        ctx.push_back(c.tokens[off]);
      }
    }
    if (agg == Aggregation::Max) {
      acc = std::max(acc, best);
    } else {
      acc += best / static_cast<double>(continuations.size());
    }
  }
  return lambda2 * acc;
}

double combined_candidate_score(double s_prefix, double progress, double h_unc, double h_fut,
                                const HeuristicWeights& weights) {
  return s_prefix + weights.lambda1 * progress + h_fut + h_unc;
}

}  // namespace lookdec
