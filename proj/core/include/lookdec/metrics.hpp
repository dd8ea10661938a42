#pragma once

#include <span>
#include <string>
#include <vector>

#include "lookdec/constraints.hpp"
#include "lookdec/search.hpp"

namespace lookdec {

// One required concept: any of its alternative phrases counts as present.
using ConceptAlternatives = std::vector<std::vector<std::string>>;

// Contiguous-subsequence containment over token strings.
bool contains_phrase(std::span<const std::string> output, std::span<const std::string> phrase);

// 100 * (#concepts with any alternative present) / #concepts; 100 if empty.
double coverage(std::span<const std::string> output_tokens,
                const std::vector<ConceptAlternatives>& concepts);

// Corpus-level: 100 * matched terms / total terms across all outputs. Each
// outputs[i] is paired with terms[i], a list of single-alternative terms.
double term_use_rate(const std::vector<std::vector<std::string>>& outputs,
                     const std::vector<std::vector<ConceptAlternatives>>& terms);

struct ClauseReport {
  int clause = 0;
  ClauseStatus status = ClauseStatus::ReversiblyUnsatisfied;
};

struct SatisfactionReport {
  std::vector<ClauseReport> clauses;  // best output's per-clause statuses
  int satisfied = 0;
  int violated = 0;
};

SatisfactionReport satisfaction_report(const DecodeResult& result, const ConstraintSet& cs);

}  // namespace lookdec
