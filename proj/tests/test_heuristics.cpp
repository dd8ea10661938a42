#include <doctest.h>

#include <cmath>
#include <map>

#include "lookdec/heuristics.hpp"
#include "lookdec/logspace.hpp"
#include "lookdec/table_model.hpp"
#include "support/fixtures.hpp"

using namespace lookdec;
using namespace lookdec::testsupport;

namespace {

Continuation cont(std::vector<int> tokens, std::vector<double> lps) {
  Continuation c;
  c.tokens = std::move(tokens);
  c.step_logprobs = std::move(lps);
  return c;
}

}  // namespace

TEST_CASE("unconstrained_h") {
  std::vector<Continuation> conts{cont({2, 2}, {std::log(0.5), std::log(0.5)}),
                                  cont({3}, {std::log(0.1)})};
  SUBCASE("max picks the best rollout and scales by lambda") {
    CHECK(unconstrained_h(conts, 1.0) == doctest::Approx(std::log(0.25)).epsilon(1e-12));
    CHECK(unconstrained_h(conts, 0.5) == doctest::Approx(0.5 * std::log(0.25)).epsilon(1e-12));
  }
  SUBCASE("mean averages the rollouts") {
    double want = 0.5 * (std::log(0.25) + std::log(0.1));
    CHECK(unconstrained_h(conts, 1.0, Aggregation::Mean) == doctest::Approx(want).epsilon(1e-12));
  }
  SUBCASE("the empty continuation scores zero") {
    std::vector<Continuation> empty_cont{cont({}, {})};
    CHECK(unconstrained_h(empty_cont, 1.0) == 0.0);
  }
}

TEST_CASE("phrase_prob_from force-feeds the phrase") {
  TableModel m = cf_table_631();
  const Vocabulary& v = m.vocab();
  std::vector<int> ctx{v.bos_id()};
  // context-free: P(A B) = 0.6 * 0.3 regardless of context
  CHECK(phrase_prob_from(m, ctx, ids(v, "A B")) ==
        doctest::Approx(std::log(0.18)).epsilon(1e-12));
  // impossible token (bos) makes the whole phrase -inf
  std::vector<int> with_bos{v.bos_id()};
  CHECK(is_neg_inf(phrase_prob_from(m, ctx, with_bos)));
  // an order-1 model prices the phrase differently after different contexts
  std::map<std::vector<int>, StepDistribution> rows;
  rows.emplace(std::vector<int>{v.id("A")}, StepDistribution::from_probs({0, 0.1, 0.8, 0.1}));
  TableModel m1(v, 1, std::move(rows), StepDistribution::from_probs({0, 0.2, 0.4, 0.4}));
  std::vector<int> after_a{v.bos_id(), v.id("A")};
  CHECK(phrase_prob_from(m1, after_a, ids(v, "A A")) ==
        doctest::Approx(std::log(0.8) + std::log(0.8)).epsilon(1e-12));
  CHECK(phrase_prob_from(m1, ctx, ids(v, "A A")) ==
        doctest::Approx(std::log(0.4) + std::log(0.8)).epsilon(1e-12));
}

TEST_CASE("future_satisfaction_h") {
  TableModel m = cf_table_631();
  const Vocabulary& v = m.vocab();
  ConstraintSet cs({Clause{{Literal{ids(v, "B B"), Polarity::Positive}}}}, &v);
  std::vector<int> prefix{v.bos_id(), v.id("A")};
  std::vector<int> targets{0};

  SUBCASE("empty target set scores zero") {
    std::vector<Continuation> conts{cont({v.id("A")}, {std::log(0.6)})};
    CHECK(future_satisfaction_h(m, prefix, conts, cs, {}, 0.1) == 0.0);
  }
  SUBCASE("context-free model: every offset prices the phrase identically") {
    std::vector<Continuation> conts{cont({v.id("A"), v.id("A")},
                                         {std::log(0.6), std::log(0.6)})};
    // P(B B) = 0.09 at any offset; weighted by lambda2
    CHECK(future_satisfaction_h(m, prefix, conts, cs, targets, 0.1) ==
          doctest::Approx(0.1 * std::log(0.09)).epsilon(1e-9));
    CHECK(future_satisfaction_h(m, prefix, conts, cs, targets, 1.0) ==
          doctest::Approx(std::log(0.09)).epsilon(1e-9));
  }
  SUBCASE("offsets stop at an in-rollout eos") {
    // rollout ends in eos: only offset 0 (before the eos position) is usable
    // for an order-1 model where context changes the price.
    std::map<std::vector<int>, StepDistribution> rows;
    rows.emplace(std::vector<int>{v.id("A")}, StepDistribution::from_probs({0, 0.1, 0.1, 0.8}));
    rows.emplace(std::vector<int>{v.id("B")}, StepDistribution::from_probs({0, 0.2, 0.2, 0.6}));
    TableModel m1(v, 1, std::move(rows), StepDistribution::from_probs({0, 0.3, 0.3, 0.4}));
    std::vector<Continuation> conts{cont({v.eos_id()}, {std::log(0.1)})};
    // only offset 0: feed "B B" right after prefix ...A -> 0.8 * 0.6
    CHECK(future_satisfaction_h(m1, prefix, conts, cs, targets, 1.0) ==
          doctest::Approx(std::log(0.8 * 0.6)).epsilon(1e-9));
  }
  SUBCASE("best offset wins under max") {
    // order-1 model where B is much likelier after B than after A: the
    // offset following the rollout's B must be chosen.
    std::map<std::vector<int>, StepDistribution> rows;
    rows.emplace(std::vector<int>{v.id("A")}, StepDistribution::from_probs({0, 0.2, 0.6, 0.2}));
    rows.emplace(std::vector<int>{v.id("B")}, StepDistribution::from_probs({0, 0.1, 0.1, 0.8}));
    TableModel m1(v, 1, std::move(rows), StepDistribution::from_probs({0, 0.3, 0.3, 0.4}));
    std::vector<Continuation> conts{cont({v.id("B")}, {std::log(0.2)})};
    // offset 0 (after A): 0.2 * 0.8; offset 1 (after rollout's B): 0.8 * 0.8
    CHECK(future_satisfaction_h(m1, prefix, conts, cs, targets, 1.0) ==
          doctest::Approx(std::log(0.64)).epsilon(1e-9));
  }
  SUBCASE("max over several targets") {
    ConstraintSet two({Clause{{Literal{ids(v, "B B"), Polarity::Positive}}},
                       Clause{{Literal{ids(v, "A"), Polarity::Positive}}}},
                      &v);
    std::vector<Continuation> conts{cont({v.id("A")}, {std::log(0.6)})};
    std::vector<int> both{0, 1};
    // P(A) = 0.6 beats P(B B) = 0.09
    CHECK(future_satisfaction_h(m, prefix, conts, two, both, 1.0) ==
          doctest::Approx(std::log(0.6)).epsilon(1e-9));
  }
}

TEST_CASE("combined_candidate_score adds the weighted pieces") {
  HeuristicWeights w;
  w.lambda1 = 0.25;
  CHECK(combined_candidate_score(-2.0, 0.5, -0.3, -0.1, w) ==
        doctest::Approx(-2.0 + 0.25 * 0.5 - 0.3 - 0.1).epsilon(1e-12));
  CHECK(combined_candidate_score(-1.0, 0.0, 0.0, 0.0, w) == doctest::Approx(-1.0));
}
