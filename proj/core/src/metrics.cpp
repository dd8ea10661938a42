#include "lookdec/metrics.hpp"

#include "lookdec/errors.hpp"

namespace lookdec {

bool contains_phrase(std::span<const std::string> output, std::span<const std::string> phrase) {
  if (phrase.empty()) return true;  // the empty phrase occurs everywhere
  if (phrase.size() > output.size()) return false;
  for (size_t start = 0; start + phrase.size() <= output.size(); ++start) {
    bool match = true;
    for (size_t i = 0; i < phrase.size(); ++i) {
      if (output[start + i] != phrase[i]) {
        match = false;
        break;
      }
    }
    if (match) return true;
  }
  return false;
}

double coverage(std::span<const std::string> output_tokens,
                const std::vector<ConceptAlternatives>& concepts) {
  if (concepts.empty()) return 100.0;
  int present = 0;
  for (const auto& alternatives : concepts) {
    for (const auto& phrase : alternatives) {
      if (contains_phrase(output_tokens, phrase)) {
        ++present;
        break;
      }
    }
  }
  return 100.0 * static_cast<double>(present) / static_cast<double>(concepts.size());
}

double term_use_rate(const std::vector<std::vector<std::string>>& outputs,
                     const std::vector<std::vector<ConceptAlternatives>>& terms) {
  if (outputs.size() != terms.size()) {
    throw InvalidInputError("term_use_rate: outputs and term lists differ in length");
  }
  long long total = 0;
  long long matched = 0;
  for (size_t i = 0; i < outputs.size(); ++i) {
    for (const auto& alternatives : terms[i]) {
      ++total;
      for (const auto& phrase : alternatives) {
        if (contains_phrase(outputs[i], phrase)) {
          ++matched;
          break;
        }
      }
    }
  }
  if (total == 0) return 100.0;
  return 100.0 * static_cast<double>(matched) / static_cast<double>(total);
}

SatisfactionReport satisfaction_report(const DecodeResult& result, const ConstraintSet& cs) {
  SatisfactionReport rep;
  if (result.outputs.empty()) return rep;
  const ScoredOutput& best = result.outputs.front();
  for (int c = 0; c < cs.clause_count(); ++c) {
    rep.clauses.push_back({c, best.clause_statuses[static_cast<size_t>(c)]});
  }
  rep.satisfied = best.satisfied;
  rep.violated = best.violated;
  return rep;
}

}  // namespace lookdec
