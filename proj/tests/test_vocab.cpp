#include <doctest.h>

#include "lookdec/errors.hpp"
#include "lookdec/vocab.hpp"

using namespace lookdec;

TEST_CASE("with_specials pins bos=0 and eos=1") {
  Vocabulary v = Vocabulary::with_specials({"B", "A"});
  CHECK(v.size() == 4);
  CHECK(v.bos_id() == 0);
  CHECK(v.eos_id() == 1);
  CHECK(v.token(0) == "<bos>");
  CHECK(v.token(1) == "<eos>");
  CHECK(v.id("B") == 2);
  CHECK(v.id("A") == 3);
  CHECK(v.contains("A"));
  CHECK_FALSE(v.contains("Z"));
}

TEST_CASE("duplicate and reserved tokens are rejected") {
  CHECK_THROWS_AS(Vocabulary::with_specials({"A", "A"}), InvalidInputError);
  CHECK_THROWS_AS(Vocabulary::with_specials({"<bos>"}), InvalidInputError);
  CHECK_THROWS_AS(Vocabulary::with_specials({"<eos>"}), InvalidInputError);
}

TEST_CASE("unknown lookups throw") {
  Vocabulary v = Vocabulary::with_specials({"A"});
  CHECK_THROWS_AS(v.id("missing"), InvalidInputError);
  CHECK_THROWS_AS(v.token(99), InvalidInputError);
}
