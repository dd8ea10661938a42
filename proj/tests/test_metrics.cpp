#include <doctest.h>

#include "lookdec/metrics.hpp"
#include "support/fixtures.hpp"

using namespace lookdec;
using namespace lookdec::testsupport;

namespace {

std::vector<std::string> words(std::initializer_list<const char*> ws) {
  return {ws.begin(), ws.end()};
}

}  // namespace

TEST_CASE("contains_phrase is contiguous, not scattered") {
  auto out = words({"the", "quick", "brown", "fox"});
  CHECK(contains_phrase(out, words({"quick", "brown"})));
  CHECK(contains_phrase(out, words({"fox"})));
  CHECK_FALSE(contains_phrase(out, words({"quick", "fox"})));
  CHECK_FALSE(contains_phrase(out, words({"fox", "jumps"})));
  CHECK_FALSE(contains_phrase(words({}), words({"fox"})));
  CHECK(contains_phrase(out, words({})));
}

TEST_CASE("coverage counts concepts with any alternative present") {
  auto out = words({"a", "b", "c"});
  std::vector<ConceptAlternatives> concepts{
      {words({"x"}), words({"b"})},        // covered via "b"
      {words({"a", "b"})},                 // covered (contiguous)
      {words({"c", "a"})},                 // not contiguous -> not covered
  };
  CHECK(coverage(out, concepts) == doctest::Approx(100.0 * 2 / 3));
  CHECK(coverage(out, {}) == 100.0);
}

TEST_CASE("term_use_rate pools terms across outputs") {
  std::vector<std::vector<std::string>> outputs{words({"a", "b"}), words({"c"})};
  std::vector<std::vector<ConceptAlternatives>> terms{
      {{words({"a"})}, {words({"z"})}},  // 1 of 2 matched
      {{words({"c"})}},                  // 1 of 1 matched
  };
  CHECK(term_use_rate(outputs, terms) == doctest::Approx(100.0 * 2 / 3));
}

TEST_CASE("satisfaction_report reflects the best output") {
  Vocabulary v = small_vocab(2);
  ConstraintSet cs({Clause{{Literal{ids(v, "A"), Polarity::Positive}}},
                    Clause{{Literal{ids(v, "B"), Polarity::Negative}}}},
                   &v);
  DecodeResult r;
  ScoredOutput out;
  out.tokens = bos_ids(v, "A <eos>");
  out.clause_statuses = {ClauseStatus::IrreversiblySatisfied, ClauseStatus::ReversiblySatisfied};
  out.satisfied = 2;
  out.violated = 0;
  r.outputs.push_back(out);
  SatisfactionReport rep = satisfaction_report(r, cs);
  REQUIRE(rep.clauses.size() == 2);
  CHECK(rep.clauses[0].status == ClauseStatus::IrreversiblySatisfied);
  CHECK(rep.clauses[1].status == ClauseStatus::ReversiblySatisfied);
  CHECK(rep.satisfied == 2);
  CHECK(rep.violated == 0);
}
