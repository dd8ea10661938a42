#pragma once

#include <cstdint>
#include <vector>

#include "lookdec/constraints.hpp"
#include "lookdec/heuristics.hpp"
#include "lookdec/lookahead.hpp"
#include "lookdec/model.hpp"

namespace lookdec {

enum class DecodeMode { Plain, UnconstrainedAstar, Neurologic, NeurologicAstar };

struct DecodeParams {
  int beam_size = 4;
  int max_len = 20;  // generated tokens after bos, eos included
  HeuristicWeights weights;
  LookaheadConfig lookahead;
  double alpha = 0.5;  // likelihood pruning fraction, (0,1]
  double beta = 0.5;   // satisfied-clause pruning fraction, (0,1]
  bool grouping = true;
  DecodeMode mode = DecodeMode::Plain;
  int topk = 10;       // top-k sampling
  uint64_t seed = 0;
  // Lookahead is run for the top beam_size*lookahead_fanout candidates by
  // prefix score; 0 means unlimited (the exact formulation).
  int lookahead_fanout = 20;
  Aggregation aggregation = Aggregation::Max;
  TargetPolicy target_policy = TargetPolicy::NotIrreversiblySatisfied;

  bool constrained_mode() const {
    return mode == DecodeMode::Neurologic || mode == DecodeMode::NeurologicAstar;
  }
};

struct Hypothesis {
  std::vector<int> tokens;  // bos-initiated
  double logprob = 0.0;
  ConstraintState cstate;
  bool finished = false;
  double last_score = 0.0;  // diagnostic: most recent combined score
};

struct Candidate {
  std::vector<int> tokens;
  double logprob = 0.0;
  ConstraintState cstate;
  bool finished = false;
  double score = 0.0;
  double progress = 0.0;
};

struct ScoredOutput {
  std::vector<int> tokens;
  double logprob = 0.0;
  double objective = 0.0;  // logprob - lambda' * unsatisfied clauses at eos
  int satisfied = 0;
  int violated = 0;
  std::vector<ClauseStatus> clause_statuses;
};

struct DecodeResult {
  std::vector<ScoredOutput> outputs;  // ranked by objective
};

// One step of the candidate grid: every hypothesis crossed with every
// emittable token of nonzero probability; finished hypotheses pass through
// unexpanded. In constrained modes, candidates whose state is pruned by a
// violated clause are dropped; throws EmptyBeamError when nothing survives.
std::vector<Candidate> expand(const std::vector<Hypothesis>& beam, const StepScorer& model,
                              const ConstraintSet& cs, const DecodeParams& params);

// Fills in score/progress per the decode mode; `step` feeds the per-step
// sampling-lookahead seed derivation.
void score_candidates(std::vector<Candidate>& cands, const StepScorer& model,
                      const ConstraintSet& cs, const DecodeParams& params, int step);

// Alpha/beta union-survivor pruning, optional grouping by irreversibly
// satisfied clause set with round-robin beam filling, then top-k.
std::vector<Candidate> select(std::vector<Candidate> scored, const DecodeParams& params);

// Full decode loop; deterministic for fixed params+seed. Every finished
// (eos-terminated) candidate generated during the search is collected into
// the output pool and ranked by objective, whether or not it won a beam
// slot; the beam itself keeps only the selected hypotheses. The
// optional input prefix conditions generation: the root becomes
// bos . input, the reported logprob covers generated tokens only, and the
// constraint automata are advanced through the input first.
DecodeResult decode(const StepScorer& model, const ConstraintSet& cs, const DecodeParams& params,
                    std::span<const int> input = {});

// Top-k sampling with heuristic-adjusted renormalized scores; unconstrained.
DecodeResult topk_sample_decode(const StepScorer& model, const DecodeParams& params,
                                std::span<const int> input = {});

// The renormalized distribution topk_sample_decode draws from at one step,
// as (token, probability) pairs; exposed for tests and diagnostics.
std::vector<std::pair<int, double>> topk_adjusted_distribution(const StepScorer& model,
                                                               std::span<const int> prefix,
                                                               const DecodeParams& params);

}  // namespace lookdec
