/**
 * Microbenchmarks for the hot paths: model steps, constraint-automaton
 * advances, lookahead rollouts, and whole decode calls on a mid-size table
 * model. Numbers are for relative tracking, not absolute claims.
 */

#include <benchmark/benchmark.h>

#include <random>

#include "lookdec/constraints.hpp"
#include "lookdec/lookahead.hpp"
#include "lookdec/search.hpp"
#include "lookdec/table_model.hpp"

using namespace lookdec;

namespace {

Vocabulary bench_vocab(int n_real) {
  std::vector<std::string> toks;
  for (int i = 0; i < n_real; ++i) toks.push_back("w" + std::to_string(i));
  return Vocabulary::with_specials(toks);
}

TableModel bench_model(int n_real, uint64_t seed) {
  std::mt19937_64 rng(seed);
  Vocabulary v = bench_vocab(n_real);
  std::exponential_distribution<double> ex(1.0);
  std::map<std::vector<int>, StepDistribution> rows;
  auto row = [&]() {
    std::vector<double> p(static_cast<size_t>(v.size()), 0.0);
    double sum = 0.0;
    for (int i = 1; i < v.size(); ++i) {
      p[static_cast<size_t>(i)] = ex(rng) + 1e-3;
      sum += p[static_cast<size_t>(i)];
    }
    for (double& x : p) x *= 0.9 / sum;
    p[1] += 0.1;  // keep eos reachable
    return StepDistribution::from_probs(p);
  };
  for (int c = 0; c < v.size(); ++c) rows.emplace(std::vector<int>{c}, row());
  return TableModel(std::move(v), 1, std::move(rows), row());
}

ConstraintSet bench_constraints(const Vocabulary& v) {
  std::vector<Clause> clauses;
  clauses.push_back(Clause{{Literal{{v.id("w0"), v.id("w1")}, Polarity::Positive}}});
  clauses.push_back(Clause{{Literal{{v.id("w2")}, Polarity::Positive},
                            Literal{{v.id("w3"), v.id("w4")}, Polarity::Negative}}});
  return ConstraintSet(std::move(clauses), &v);
}

void BM_model_step(benchmark::State& state) {
  TableModel m = bench_model(static_cast<int>(state.range(0)), 1);
  std::vector<int> prefix{m.vocab().bos_id(), m.vocab().id("w0"), m.vocab().id("w1")};
  for (auto _ : state) {
    benchmark::DoNotOptimize(m.step(prefix));
  }
}
BENCHMARK(BM_model_step)->Arg(8)->Arg(64);

void BM_constraint_advance(benchmark::State& state) {
  TableModel m = bench_model(8, 2);
  const Vocabulary& v = m.vocab();
  ConstraintSet cs = bench_constraints(v);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> tok(2, v.size() - 1);
  std::vector<int> seq;
  for (int i = 0; i < 64; ++i) seq.push_back(tok(rng));
  for (auto _ : state) {
    ConstraintState st = init_state(cs);
    for (int t : seq) st = advance(cs, st, t);
    benchmark::DoNotOptimize(st);
  }
}
BENCHMARK(BM_constraint_advance);

void BM_lookahead(benchmark::State& state) {
  TableModel m = bench_model(16, 4);
  std::vector<int> prefix{m.vocab().bos_id(), m.vocab().id("w2")};
  LookaheadConfig cfg;
  cfg.horizon = 4;
  switch (state.range(0)) {
    case 0: cfg.strategy = LookaheadStrategy::Greedy; break;
    case 1: cfg.strategy = LookaheadStrategy::Beam; cfg.beam_width = 4; break;
    case 2: cfg.strategy = LookaheadStrategy::Sampling; cfg.rollouts = 4; break;
    default: cfg.strategy = LookaheadStrategy::Soft; cfg.temperature = 1.0; break;
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate_lookaheads(m, prefix, cfg));
  }
}
BENCHMARK(BM_lookahead)->Arg(0)->Arg(1)->Arg(2)->Arg(3);

void BM_decode(benchmark::State& state) {
  TableModel m = bench_model(16, 5);
  ConstraintSet cs = bench_constraints(m.vocab());
  DecodeParams p;
  p.mode = static_cast<bool>(state.range(0)) ? DecodeMode::NeurologicAstar
                                             : DecodeMode::Neurologic;
  p.beam_size = 4;
  p.max_len = 16;
  p.lookahead.strategy = LookaheadStrategy::Greedy;
  p.lookahead.horizon = 4;
  p.weights.lambda2 = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(decode(m, cs, p));
  }
}
BENCHMARK(BM_decode)->Arg(0)->Arg(1);

}  // namespace

BENCHMARK_MAIN();
