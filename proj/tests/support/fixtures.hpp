#pragma once

// Shared test fixtures: small hand-built models, random instance
// generators, and tokenization helpers. Instances are generated from
// explicitly seeded RNG streams so every suite is reproducible.

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lookdec/constraints.hpp"
#include "lookdec/table_model.hpp"

namespace lookdec::testsupport {

inline Vocabulary small_vocab(int n_real) {
  std::vector<std::string> toks;
  for (int i = 0; i < n_real; ++i) toks.push_back(std::string(1, static_cast<char>('A' + i)));
  return Vocabulary::with_specials(toks);
}

// ids: bos=0, eos=1, A=2, B=3; p(A)=0.6, p(B)=0.3, p(eos)=0.1
inline TableModel cf_table_631() {
  return TableModel::context_free(small_vocab(2), {0.0, 0.1, 0.6, 0.3});
}

inline std::vector<int> ids(const Vocabulary& v, const std::string& spaced) {
  std::istringstream ss(spaced);
  std::vector<int> out;
  std::string tok;
  while (ss >> tok) out.push_back(v.id(tok));
  return out;
}

inline std::vector<int> bos_ids(const Vocabulary& v, const std::string& spaced) {
  std::vector<int> out{v.bos_id()};
  auto rest = ids(v, spaced);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

// Random next-token distribution: exponential draws normalized, with a
// floor on eos mass so every random instance can terminate.
inline std::vector<double> random_row(std::mt19937_64& rng, const Vocabulary& v,
                                      double eos_floor = 0.15) {
  std::exponential_distribution<double> ex(1.0);
  std::vector<double> p(static_cast<size_t>(v.size()), 0.0);
  double sum = 0.0;
  for (int i = 0; i < v.size(); ++i) {
    if (i == v.bos_id()) continue;
    p[static_cast<size_t>(i)] = ex(rng) + 1e-3;
    sum += p[static_cast<size_t>(i)];
  }
  // mix with the floor: p' = (1-f)*p/sum, then add f to eos
  for (double& x : p) x *= (1.0 - eos_floor) / sum;
  p[static_cast<size_t>(v.eos_id())] += eos_floor;
  return p;
}

// Random table model of the given order: one row per context over the full
// vocabulary (order 1) or just a default row (order 0).
inline TableModel random_table_model(std::mt19937_64& rng, int n_real, int order,
                                     double eos_floor = 0.15) {
  Vocabulary v = small_vocab(n_real);
  std::map<std::vector<int>, StepDistribution> rows;
  if (order == 1) {
    for (int c = 0; c < v.size(); ++c) {
      rows.emplace(std::vector<int>{c}, StepDistribution::from_probs(random_row(rng, v, eos_floor)));
    }
  }
  StepDistribution def = StepDistribution::from_probs(random_row(rng, v, eos_floor));
  return TableModel(std::move(v), order, std::move(rows), std::move(def));
}

// Random positive-literal phrase over real tokens (no bos/eos).
inline std::vector<int> random_phrase(std::mt19937_64& rng, const Vocabulary& v, int max_len) {
  std::uniform_int_distribution<int> len(1, max_len);
  std::uniform_int_distribution<int> tok(2, v.size() - 1);  // real tokens start at id 2
  std::vector<int> phrase;
  int n = len(rng);
  for (int i = 0; i < n; ++i) phrase.push_back(tok(rng));
  return phrase;
}

inline ConstraintSet random_positive_constraints(std::mt19937_64& rng, const Vocabulary& v,
                                                 int n_clauses, int max_phrase_len = 2) {
  std::vector<Clause> clauses;
  for (int c = 0; c < n_clauses; ++c) {
    Clause clause;
    clause.literals.push_back({random_phrase(rng, v, max_phrase_len), Polarity::Positive});
    clauses.push_back(std::move(clause));
  }
  return ConstraintSet(std::move(clauses), &v);
}

}  // namespace lookdec::testsupport
