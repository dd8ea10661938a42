#include "lookdec/oracle.hpp"

#include <cmath>

#include "lookdec/errors.hpp"
#include "lookdec/logspace.hpp"

namespace lookdec {

namespace {

void check_budget(const StepScorer& model, const OracleBudget& budget) {
  double combos = std::pow(static_cast<double>(model.vocab().size()), budget.max_len);
  if (combos > static_cast<double>(budget.max_enumerations)) {
    throw BudgetExceededError("oracle enumeration budget exceeded: |V|^max_len too large");
  }
}

struct Searcher {
  const StepScorer& model;
  const ConstraintSet& cs;
  double lambda_prime;
  int max_len;

  std::vector<int> seq;
  bool found = false;
  std::vector<int> best_tokens;
  double best_objective = kNegInf;

  void visit_terminal(double logprob, const ConstraintState& st) {
    double obj = logprob - lambda_prime *
                               (static_cast<double>(st.clause_status.size()) -
                                satisfied_clause_count(st));
    // Ascending-id DFS visits sequences in lexicographic order, so a strict
    // improvement test keeps the lexicographically smallest among ties.
    if (!found || obj > best_objective) {
      found = true;
      best_objective = obj;
      best_tokens = seq;
    }
  }

  void dfs(int generated, double logprob, const ConstraintState& st) {
    if (generated >= max_len) return;
    StepDistribution d = model.step(seq);
    for (int tok = 0; tok < model.vocab().size(); ++tok) {
      if (tok == model.vocab().bos_id()) continue;
      double lp = d.logprobs[static_cast<size_t>(tok)];
      if (is_neg_inf(lp)) continue;
      seq.push_back(tok);
      ConstraintState next = advance(cs, st, tok);
      if (tok == model.vocab().eos_id()) {
        visit_terminal(logprob + lp, next);
      } else {
        dfs(generated + 1, logprob + lp, next);
      }
      seq.pop_back();
    }
  }
};

}  // namespace

OracleResult exact_argmax(const StepScorer& model, const ConstraintSet& cs, double lambda_prime,
                          const OracleBudget& budget) {
  check_budget(model, budget);
  Searcher s{model, cs, lambda_prime, budget.max_len};
  s.seq = {model.vocab().bos_id()};
  s.dfs(0, 0.0, init_state(cs));
  if (!s.found) throw InvalidInputError("exact_argmax: no eos-terminated sequence exists");
  return OracleResult{std::move(s.best_tokens), s.best_objective};
}

double exact_Q(const StepScorer& model, const ConstraintSet& cs, std::span<const int> prefix,
               int token, double lambda_prime, const OracleBudget& budget) {
  check_budget(model, budget);

  std::vector<int> start(prefix.begin(), prefix.end());
  double logprob = sequence_logprob(model, start);
  StepDistribution d = model.step(start);
  double lp = d.logprob(token);
  if (is_neg_inf(lp) || is_neg_inf(logprob)) return kNegInf;
  logprob += lp;

  ConstraintState st = init_state(cs);
  for (size_t i = 1; i < start.size(); ++i) st = advance(cs, st, start[i]);
  st = advance(cs, st, token);
  start.push_back(token);

  int generated = static_cast<int>(start.size()) - 1;  // after bos
  Searcher s{model, cs, lambda_prime, budget.max_len};
  s.seq = std::move(start);
  if (token == model.vocab().eos_id()) {
    s.visit_terminal(logprob, st);
  } else {
    s.dfs(generated, logprob, st);
  }
  return s.found ? s.best_objective : kNegInf;
}

}  // namespace lookdec
