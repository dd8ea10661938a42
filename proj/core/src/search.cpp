#include "lookdec/search.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "lookdec/errors.hpp"
#include "lookdec/logspace.hpp"

namespace lookdec {

namespace {

// Global candidate order: score desc, then logprob desc, then lexicographic.
bool score_better(const Candidate& a, const Candidate& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.logprob != b.logprob) return a.logprob > b.logprob;
  return lex_less(a.tokens, b.tokens);
}

bool logprob_better(const Candidate& a, const Candidate& b) {
  if (a.logprob != b.logprob) return a.logprob > b.logprob;
  return lex_less(a.tokens, b.tokens);
}

int unsatisfied_at_eos(const ConstraintState& st) {
  return static_cast<int>(st.clause_status.size()) - satisfied_clause_count(st);
}

double eos_score(const Candidate& c, const DecodeParams& params) {
  if (!params.constrained_mode()) return c.logprob;
  return c.logprob - params.weights.lambda_prime * unsatisfied_at_eos(c.cstate);
}

ScoredOutput make_output(const Candidate& c, const DecodeParams& params) {
  ScoredOutput out;
  out.tokens = c.tokens;
  out.logprob = c.logprob;
  out.satisfied = satisfied_clause_count(c.cstate);
  out.violated = unsatisfied_at_eos(c.cstate);
  out.objective = c.logprob - params.weights.lambda_prime * out.violated;
  out.clause_statuses = c.cstate.clause_status;
  return out;
}

}  // namespace

std::vector<Candidate> expand(const std::vector<Hypothesis>& beam, const StepScorer& model,
                              const ConstraintSet& cs, const DecodeParams& params) {
  const Vocabulary& v = model.vocab();
  std::vector<Candidate> cands;

  bool have_dropped = false;
  Candidate best_dropped;

  for (const Hypothesis& hyp : beam) {
    if (hyp.finished) {
      Candidate c;
      c.tokens = hyp.tokens;
      c.logprob = hyp.logprob;
      c.cstate = hyp.cstate;
      c.finished = true;
      cands.push_back(std::move(c));
      continue;
    }
    StepDistribution d = model.step(hyp.tokens);
    for (int tok = 0; tok < v.size(); ++tok) {
      if (tok == v.bos_id()) continue;
      double lp = d.logprobs[static_cast<size_t>(tok)];
      if (is_neg_inf(lp)) continue;
      Candidate c;
      c.tokens = hyp.tokens;
      c.tokens.push_back(tok);
      c.logprob = hyp.logprob + lp;
      c.cstate = advance(cs, hyp.cstate, tok);
      c.finished = (tok == v.eos_id());
      if (params.constrained_mode() && is_pruned(c.cstate)) {
        if (!have_dropped || c.logprob > best_dropped.logprob) {
          best_dropped = c;
          have_dropped = true;
        }
        continue;
      }
      cands.push_back(std::move(c));
    }
  }

  if (cands.empty()) {
    if (have_dropped) {
      throw EmptyBeamError("all candidates pruned by constraint violation",
                           best_dropped.tokens, best_dropped.logprob);
    }
    throw EmptyBeamError("no expandable candidates", {}, kNegInf);
  }
  return cands;
}

void score_candidates(std::vector<Candidate>& cands, const StepScorer& model,
                      const ConstraintSet& cs, const DecodeParams& params, int step) {
  const bool uses_lookahead =
      params.mode == DecodeMode::UnconstrainedAstar || params.mode == DecodeMode::NeurologicAstar;

  // Lookahead cost control: only the strongest prefixes get rollouts.
  std::vector<uint8_t> lookahead_ok(cands.size(), 1);
  if (uses_lookahead && params.lookahead_fanout > 0) {
    size_t budget = static_cast<size_t>(params.beam_size) *
                    static_cast<size_t>(params.lookahead_fanout);
    if (cands.size() > budget) {
      std::vector<size_t> idx(cands.size());
      for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
      std::sort(idx.begin(), idx.end(),
                [&](size_t a, size_t b) { return logprob_better(cands[a], cands[b]); });
      lookahead_ok.assign(cands.size(), 0);
      for (size_t i = 0; i < budget; ++i) lookahead_ok[idx[i]] = 1;
    }
  }

  for (size_t ci = 0; ci < cands.size(); ++ci) {
    Candidate& c = cands[ci];
    if (c.finished) {
      c.score = eos_score(c, params);
      continue;
    }
    if (params.constrained_mode()) {
      c.progress = prefix_progress(cs, c.cstate, params.target_policy);
    }

    double h_unc = 0.0;
    double h_fut = 0.0;
    if (uses_lookahead && lookahead_ok[ci]) {
      LookaheadConfig lc = params.lookahead;
      lc.seed = mix_seed(params.seed, static_cast<uint64_t>(step), static_cast<uint64_t>(ci));
      std::vector<Continuation> conts = generate_lookaheads(model, c.tokens, lc);
      if (params.mode == DecodeMode::UnconstrainedAstar) {
        h_unc = unconstrained_h(conts, params.weights.lambda, params.aggregation);
      } else {
        std::vector<int> targets = unsatisfied_targets(cs, c.cstate, params.target_policy);
        h_fut = future_satisfaction_h(model, c.tokens, conts, cs, targets,
                                      params.weights.lambda2, params.aggregation);
      }
    }

    switch (params.mode) {
      case DecodeMode::Plain:
        c.score = c.logprob;
        break;
      case DecodeMode::UnconstrainedAstar:
        c.score = c.logprob + h_unc;
        break;
      case DecodeMode::Neurologic:
        c.score = c.logprob + params.weights.lambda1 * c.progress;
        break;
      case DecodeMode::NeurologicAstar:
        c.score = combined_candidate_score(c.logprob, c.progress, 0.0, h_fut, params.weights);
        break;
    }
  }
}

std::vector<Candidate> select(std::vector<Candidate> scored, const DecodeParams& params) {
  if (scored.empty()) throw EmptyBeamError("select on empty candidate set", {}, kNegInf);
  const size_t k = static_cast<size_t>(params.beam_size);

  if (!params.constrained_mode()) {
    std::sort(scored.begin(), scored.end(), score_better);
    if (scored.size() > k) scored.resize(k);
    return scored;
  }

  // Alpha/beta pruning: survive if in the top-ceil(alpha*N) by logprob OR in
  // the top-ceil(beta*N) by satisfied clause count.
  const size_t n = scored.size();
  size_t a_keep = static_cast<size_t>(std::ceil(params.alpha * static_cast<double>(n)));
  size_t b_keep = static_cast<size_t>(std::ceil(params.beta * static_cast<double>(n)));
  a_keep = std::clamp<size_t>(a_keep, 1, n);
  b_keep = std::clamp<size_t>(b_keep, 1, n);

  std::vector<size_t> idx(n);
  for (size_t i = 0; i < n; ++i) idx[i] = i;
  std::vector<uint8_t> keep(n, 0);

  std::sort(idx.begin(), idx.end(),
            [&](size_t a, size_t b) { return logprob_better(scored[a], scored[b]); });
  for (size_t i = 0; i < a_keep; ++i) keep[idx[i]] = 1;

  std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
    int sa = satisfied_clause_count(scored[a].cstate);
    int sb = satisfied_clause_count(scored[b].cstate);
    if (sa != sb) return sa > sb;
    return logprob_better(scored[a], scored[b]);
  });
  for (size_t i = 0; i < b_keep; ++i) keep[idx[i]] = 1;

  std::vector<Candidate> pruned;
  for (size_t i = 0; i < n; ++i) {
    if (keep[i]) pruned.push_back(std::move(scored[i]));
  }

  if (!params.grouping) {
    std::sort(pruned.begin(), pruned.end(), score_better);
    if (pruned.size() > k) pruned.resize(k);
    return pruned;
  }

  // Group by irreversibly satisfied clause set; fill the beam round-robin
  // across groups ordered by each group's best candidate.
  std::map<std::vector<int>, std::vector<Candidate>> groups;
  for (Candidate& c : pruned) groups[group_key(c.cstate)].push_back(std::move(c));

  std::vector<std::vector<Candidate>> ordered;
  for (auto& [key, group] : groups) {
    std::sort(group.begin(), group.end(), score_better);
    ordered.push_back(std::move(group));
  }
  std::sort(ordered.begin(), ordered.end(),
            [](const auto& a, const auto& b) { return score_better(a.front(), b.front()); });

  std::vector<Candidate> out;
  for (size_t round = 0; out.size() < k; ++round) {
    bool any = false;
    for (auto& group : ordered) {
      if (round < group.size()) {
        any = true;
        out.push_back(std::move(group[round]));
        if (out.size() == k) break;
      }
    }
    if (!any) break;
  }
  return out;
}

DecodeResult decode(const StepScorer& model, const ConstraintSet& cs, const DecodeParams& params,
                    std::span<const int> input) {
  if (params.beam_size < 1) throw InvalidParamsError("beam_size must be >= 1");
  if (params.max_len < 1) throw InvalidParamsError("max_len must be >= 1");
  if (!(params.alpha > 0.0 && params.alpha <= 1.0) || !(params.beta > 0.0 && params.beta <= 1.0)) {
    throw InvalidParamsError("alpha and beta must lie in (0,1]");
  }

  Hypothesis root;
  root.tokens = {model.vocab().bos_id()};
  root.cstate = init_state(cs);
  for (int tok : input) {
    root.tokens.push_back(tok);
    root.cstate = advance(cs, root.cstate, tok);
  }
  std::vector<Hypothesis> beam{root};

  std::map<std::vector<int>, ScoredOutput> finished;

  for (int step = 1; step <= params.max_len; ++step) {
    bool all_done = std::all_of(beam.begin(), beam.end(),
                                [](const Hypothesis& h) { return h.finished; });
    if (all_done) break;

    std::vector<Candidate> cands = expand(beam, model, cs, params);
    score_candidates(cands, model, cs, params, step);
    // Every eos-terminated candidate is a complete sequence with a fully
    // known objective; record it whether or not it wins a beam slot.
    for (const Candidate& c : cands) {
      if (c.finished) finished.emplace(c.tokens, make_output(c, params));
    }
    std::vector<Candidate> selected = select(std::move(cands), params);

    beam.clear();
    for (Candidate& c : selected) {
      Hypothesis h;
      h.tokens = std::move(c.tokens);
      h.logprob = c.logprob;
      h.cstate = std::move(c.cstate);
      h.finished = c.finished;
      h.last_score = c.score;
      beam.push_back(std::move(h));
    }
  }

  if (finished.empty()) {
    const Hypothesis* best = nullptr;
    for (const Hypothesis& h : beam) {
      if (!best || h.logprob > best->logprob) best = &h;
    }
    throw EmptyBeamError("no finished hypothesis within max_len",
                         best ? best->tokens : std::vector<int>{},
                         best ? best->logprob : kNegInf);
  }

  DecodeResult result;
  for (auto& [tokens, out] : finished) result.outputs.push_back(std::move(out));
  std::sort(result.outputs.begin(), result.outputs.end(),
            [](const ScoredOutput& a, const ScoredOutput& b) {
              if (a.objective != b.objective) return a.objective > b.objective;
              if (a.logprob != b.logprob) return a.logprob > b.logprob;
              return lex_less(a.tokens, b.tokens);
            });
  return result;
}

std::vector<std::pair<int, double>> topk_adjusted_distribution(const StepScorer& model,
                                                               std::span<const int> prefix,
                                                               const DecodeParams& params) {
  if (params.topk < 1) throw InvalidParamsError("topk must be >= 1");
  const Vocabulary& v = model.vocab();
  StepDistribution d = model.step(prefix);

  std::vector<std::pair<int, double>> top;  // (token, step logprob)
  for (int tok = 0; tok < v.size(); ++tok) {
    if (tok == v.bos_id()) continue;
    double lp = d.logprobs[static_cast<size_t>(tok)];
    if (is_neg_inf(lp)) continue;
    top.emplace_back(tok, lp);
  }
  std::sort(top.begin(), top.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (static_cast<int>(top.size()) > params.topk) top.resize(static_cast<size_t>(params.topk));

  // The shared prefix score is a common additive constant, so it cancels in
  // the renormalization and is omitted here.
  std::vector<double> scores;
  scores.reserve(top.size());
  for (const auto& [tok, lp] : top) {
    double h = 0.0;
    if (params.weights.lambda != 0.0 && params.lookahead.horizon > 0) {
      std::vector<int> ext(prefix.begin(), prefix.end());
      ext.push_back(tok);
      std::vector<Continuation> conts = generate_lookaheads(model, ext, params.lookahead);
      h = unconstrained_h(conts, params.weights.lambda, params.aggregation);
    }
    scores.push_back(lp + h);
  }

  double mx = *std::max_element(scores.begin(), scores.end());
  double z = 0.0;
  std::vector<std::pair<int, double>> out;
  for (size_t i = 0; i < top.size(); ++i) {
    double w = std::exp(scores[i] - mx);
    out.emplace_back(top[i].first, w);
    z += w;
  }
  for (auto& [tok, w] : out) w /= z;
  return out;
}

DecodeResult topk_sample_decode(const StepScorer& model, const DecodeParams& params,
                                std::span<const int> input) {
  if (params.topk < 1) throw InvalidParamsError("topk must be >= 1");
  if (params.max_len < 1) throw InvalidParamsError("max_len must be >= 1");

  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  std::vector<int> cur{model.vocab().bos_id()};
  cur.insert(cur.end(), input.begin(), input.end());
  double logprob = 0.0;

  for (int step = 1; step <= params.max_len; ++step) {
    auto dist = topk_adjusted_distribution(model, cur, params);
    int tok;
    if (dist.size() == 1) {
      tok = dist.front().first;
    } else {
      double u = unif(rng);
      double cdf = 0.0;
      tok = dist.back().first;
      for (const auto& [t, p] : dist) {
        cdf += p;
        if (u < cdf) {
          tok = t;
          break;
        }
      }
    }
    StepDistribution d = model.step(cur);
    logprob += d.logprob(tok);
    cur.push_back(tok);
    if (tok == model.vocab().eos_id()) break;
  }

  ScoredOutput out;
  out.tokens = std::move(cur);
  out.logprob = logprob;
  out.objective = logprob;
  DecodeResult result;
  result.outputs.push_back(std::move(out));
  return result;
}

}  // namespace lookdec
