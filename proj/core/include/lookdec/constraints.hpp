#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lookdec/vocab.hpp"

namespace lookdec {

enum class Polarity { Positive, Negative };

/** One lexical constraint: a key phrase that must (or must not) occur. */
struct Literal {
  std::vector<int> phrase;  // non-empty, no bos/eos
  Polarity polarity = Polarity::Positive;
};

struct Clause {
  std::vector<Literal> literals;  // non-empty disjunction
};

enum class ClauseStatus {
  IrreversiblySatisfied,
  ReversiblySatisfied,
  ReversiblyUnsatisfied,
  IrreversiblyUnsatisfied,
};

const char* to_string(ClauseStatus s);

/**
 * A CNF formula over phrase literals, compiled for incremental matching.
 * Each literal carries a failure-function (longest proper prefix that is
 * also a suffix) automaton so self-overlapping phrases match correctly.
 * Immutable and shareable across hypotheses.
 */
class ConstraintSet {
 public:
  ConstraintSet() = default;
  explicit ConstraintSet(std::vector<Clause> clauses, const Vocabulary* vocab = nullptr);

  // Constraint file: JSON list of clauses, each clause a list of literals
  // {polarity:"+"|"-", phrase:[token strings]}. Unknown token -> ParseError.
  static ConstraintSet load(const std::string& path, const Vocabulary& vocab);

  int clause_count() const { return static_cast<int>(clauses_.size()); }
  int literal_count() const { return static_cast<int>(literals_.size()); }
  const std::vector<Clause>& clauses() const { return clauses_; }

  struct CompiledLiteral {
    std::vector<int> phrase;
    Polarity polarity;
    int clause = 0;               // owning clause index
    std::vector<int> failure;     // failure[i] = border length of phrase[0..i]
  };
  const std::vector<CompiledLiteral>& literals() const { return literals_; }

 private:
  std::vector<Clause> clauses_;
  std::vector<CompiledLiteral> literals_;
};

/**
 * Per-hypothesis satisfaction state: for every literal the active matched
 * prefix length and whether the phrase has ever occurred; per clause the
 * status on the lattice above. A value type; advance() is pure.
 */
struct ConstraintState {
  std::vector<int> prefix_len;      // per literal, in [0, |phrase|)
  std::vector<uint8_t> matched;     // per literal
  std::vector<ClauseStatus> clause_status;
};

// Which clauses contribute candidate literals to prefix-progress and to the
// future-satisfaction targets. NotIrreversiblySatisfied also keeps literals
// of clauses currently satisfied only via a surviving negative literal.
enum class TargetPolicy { NotIrreversiblySatisfied, PendingOnly };

ConstraintState init_state(const ConstraintSet& cs);

// Advances every literal automaton by one generated token and recomputes
// clause statuses. Pure: the input state is not modified.
ConstraintState advance(const ConstraintSet& cs, const ConstraintState& state, int token);

// max over candidate positive literals of (active prefix length)/|phrase|.
double prefix_progress(const ConstraintSet& cs, const ConstraintState& state,
                       TargetPolicy policy = TargetPolicy::NotIrreversiblySatisfied);

// Indices into cs.literals() of unmatched positive literals in clauses the
// policy still considers unsatisfied.
std::vector<int> unsatisfied_targets(const ConstraintSet& cs, const ConstraintState& state,
                                     TargetPolicy policy = TargetPolicy::NotIrreversiblySatisfied);

bool is_pruned(const ConstraintState& state);
int satisfied_clause_count(const ConstraintState& state);  // IrrSat + RevSat
int violated_clause_count(const ConstraintState& state);

// Canonical order-independent encoding of the irreversibly satisfied
// clause-index set; usable as a grouping key.
std::vector<int> group_key(const ConstraintState& state);

}  // namespace lookdec
