#include "lookdec/lookahead.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "lookdec/errors.hpp"
#include "lookdec/logspace.hpp"

namespace lookdec {

double Continuation::total_logprob() const {
  double s = 0.0;
  for (double lp : step_logprobs) s += lp;
  return s;
}

uint64_t mix_seed(uint64_t seed, uint64_t a, uint64_t b) {
  // splitmix64 over the concatenated words
  uint64_t x = seed;
  for (uint64_t w : {a, b}) {
    x += 0x9e3779b97f4a7c15ull + w;
    uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    x = z ^ (z >> 31);
  }
  return x;
}

namespace {

bool at_eos(const StepScorer& model, std::span<const int> prefix) {
  return !prefix.empty() && prefix.back() == model.vocab().eos_id();
}

}  // namespace

std::vector<Continuation> greedy_lookahead(const StepScorer& model, std::span<const int> prefix,
                                           int horizon) {
  Continuation c;
  if (horizon <= 0 || at_eos(model, prefix)) return {c};
  std::vector<int> cur(prefix.begin(), prefix.end());
  for (int t = 0; t < horizon; ++t) {
    StepDistribution d = model.step(cur);
    int tok = d.argmax();
    c.tokens.push_back(tok);
    c.step_logprobs.push_back(d.logprob(tok));
    cur.push_back(tok);
    if (tok == model.vocab().eos_id()) break;
  }
  return {c};
}

std::vector<Continuation> soft_lookahead(const StepScorer& model, std::span<const int> prefix,
                                         int horizon, double temperature) {
  const int V = model.vocab().size();
  Continuation c;
  if (horizon <= 0 || at_eos(model, prefix)) return {c};
  if (temperature > 0.0 && !model.supports_soft_step()) {
    throw UnsupportedCapabilityError("soft lookahead with tau > 0 requires soft_step support");
  }
  for (int t = 0; t < horizon; ++t) {
    StepDistribution d = c.soft_steps.empty() ? model.step(prefix)
                                              : model.soft_step(prefix, c.soft_steps);
    TokenMixture mix;
    mix.weights.assign(static_cast<size_t>(V), 0.0);
    int tok;
    if (temperature == 0.0) {
      tok = d.argmax();
      mix.weights[static_cast<size_t>(tok)] = 1.0;
      c.step_logprobs.push_back(0.0);  // log of the one-hot weight
    } else {
      // softmax(logprobs / tau); -inf entries keep weight 0
      double mx = kNegInf;
      for (double lp : d.logprobs) mx = std::max(mx, lp / temperature);
      double z = 0.0;
      for (int v = 0; v < V; ++v) {
        double lp = d.logprobs[static_cast<size_t>(v)];
        if (is_neg_inf(lp)) continue;
        double w = std::exp(lp / temperature - mx);
        mix.weights[static_cast<size_t>(v)] = w;
        z += w;
      }
      for (double& w : mix.weights) w /= z;
      tok = mix.argmax();
      c.step_logprobs.push_back(safe_log(mix.weights[static_cast<size_t>(tok)]));
    }
    c.tokens.push_back(tok);
    c.soft_steps.push_back(std::move(mix));
    if (tok == model.vocab().eos_id()) break;
  }
  return {c};
}

std::vector<Continuation> beam_lookahead(const StepScorer& model, std::span<const int> prefix,
                                         int horizon, int width) {
  if (width < 1) throw InvalidParamsError("lookahead beam width must be >= 1");
  Continuation empty;
  if (horizon <= 0 || at_eos(model, prefix)) return {empty};

  const int eos = model.vocab().eos_id();
  struct Item {
    Continuation cont;
    double score = 0.0;
    bool finished = false;
  };
  std::vector<Item> beam{Item{}};

  auto better = [](const Item& a, const Item& b) {
    if (a.score != b.score) return a.score > b.score;
    return lex_less(a.cont.tokens, b.cont.tokens);
  };

  for (int t = 0; t < horizon; ++t) {
    std::vector<Item> next;
    bool any_open = false;
    for (const Item& it : beam) {
      if (it.finished) {
        next.push_back(it);
        continue;
      }
      any_open = true;
      std::vector<int> cur(prefix.begin(), prefix.end());
      cur.insert(cur.end(), it.cont.tokens.begin(), it.cont.tokens.end());
      StepDistribution d = model.step(cur);
      for (int v = 0; v < model.vocab().size(); ++v) {
        double lp = d.logprobs[static_cast<size_t>(v)];
        if (is_neg_inf(lp)) continue;
        Item ext = it;
        ext.cont.tokens.push_back(v);
        ext.cont.step_logprobs.push_back(lp);
        ext.score += lp;
        ext.finished = (v == eos);
        next.push_back(std::move(ext));
      }
    }
    if (!any_open) break;
    std::sort(next.begin(), next.end(), better);
    if (static_cast<int>(next.size()) > width) next.resize(static_cast<size_t>(width));
    beam = std::move(next);
  }

  std::sort(beam.begin(), beam.end(), better);
  std::vector<Continuation> out;
  for (Item& it : beam) out.push_back(std::move(it.cont));
  return out;
}

std::vector<Continuation> sampling_lookahead(const StepScorer& model, std::span<const int> prefix,
                                             int horizon, int rollouts, uint64_t seed) {
  if (rollouts < 1) throw InvalidParamsError("rollouts must be >= 1");
  std::vector<Continuation> out;
  out.reserve(static_cast<size_t>(rollouts));
  const int eos = model.vocab().eos_id();
  for (int r = 0; r < rollouts; ++r) {
    std::mt19937_64 rng(mix_seed(seed, static_cast<uint64_t>(r)));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Continuation c;
    if (horizon > 0 && !at_eos(model, prefix)) {
      std::vector<int> cur(prefix.begin(), prefix.end());
      for (int t = 0; t < horizon; ++t) {
        StepDistribution d = model.step(cur);
        double u = unif(rng);
        double cdf = 0.0;
        int tok = -1;
        for (int v = 0; v < model.vocab().size(); ++v) {
          double lp = d.logprobs[static_cast<size_t>(v)];
          if (is_neg_inf(lp)) continue;
          cdf += std::exp(lp);
          tok = v;
          if (u < cdf) break;
        }
        c.tokens.push_back(tok);
        c.step_logprobs.push_back(d.logprob(tok));
        cur.push_back(tok);
        if (tok == eos) break;
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<Continuation> generate_lookaheads(const StepScorer& model, std::span<const int> prefix,
                                              const LookaheadConfig& config) {
  switch (config.strategy) {
    case LookaheadStrategy::Greedy:
      return greedy_lookahead(model, prefix, config.horizon);
    case LookaheadStrategy::Soft:
      return soft_lookahead(model, prefix, config.horizon, config.temperature);
    case LookaheadStrategy::Beam:
      return beam_lookahead(model, prefix, config.horizon, config.beam_width);
    case LookaheadStrategy::Sampling:
      return sampling_lookahead(model, prefix, config.horizon, config.rollouts, config.seed);
  }
  throw InvalidParamsError("unknown lookahead strategy");
}

}  // namespace lookdec
