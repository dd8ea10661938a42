#include "lookdec/constraints.hpp"

#include <algorithm>
#include <fstream>

#include <nlohmann/json.hpp>

#include "lookdec/errors.hpp"

namespace lookdec {

const char* to_string(ClauseStatus s) {
  switch (s) {
    case ClauseStatus::IrreversiblySatisfied: return "IrreversiblySatisfied";
    case ClauseStatus::ReversiblySatisfied: return "ReversiblySatisfied";
    case ClauseStatus::ReversiblyUnsatisfied: return "ReversiblyUnsatisfied";
    case ClauseStatus::IrreversiblyUnsatisfied: return "IrreversiblyUnsatisfied";
  }
  return "?";
}

namespace {

std::vector<int> failure_function(const std::vector<int>& phrase) {
  std::vector<int> f(phrase.size(), 0);
  for (size_t i = 1; i < phrase.size(); ++i) {
    int l = f[i - 1];
    while (l > 0 && phrase[i] != phrase[static_cast<size_t>(l)]) l = f[static_cast<size_t>(l - 1)];
    if (phrase[i] == phrase[static_cast<size_t>(l)]) ++l;
    f[i] = l;
  }
  return f;
}

}  // namespace

ConstraintSet::ConstraintSet(std::vector<Clause> clauses, const Vocabulary* vocab)
    : clauses_(std::move(clauses)) {
  for (int ci = 0; ci < static_cast<int>(clauses_.size()); ++ci) {
    const Clause& clause = clauses_[static_cast<size_t>(ci)];
    if (clause.literals.empty()) throw InvalidInputError("empty clause in constraint set");
    for (const Literal& lit : clause.literals) {
      if (lit.phrase.empty()) throw InvalidInputError("empty phrase in constraint literal");
      if (vocab) {
        for (int id : lit.phrase) {
          if (id < 0 || id >= vocab->size()) throw InvalidInputError("phrase token id out of range");
          if (id == vocab->bos_id() || id == vocab->eos_id()) {
            throw InvalidInputError("phrase may not contain bos/eos");
          }
        }
      }
      CompiledLiteral cl;
      cl.phrase = lit.phrase;
      cl.polarity = lit.polarity;
      cl.clause = ci;
      cl.failure = failure_function(lit.phrase);
      literals_.push_back(std::move(cl));
    }
  }
}

ConstraintSet ConstraintSet::load(const std::string& path, const Vocabulary& vocab) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  if (!j.is_array()) throw ParseError(path + ": expected a JSON list of clauses");

  std::vector<Clause> clauses;
  for (const auto& jc : j) {
    if (!jc.is_array()) throw ParseError(path + ": clause is not a list of literals");
    Clause clause;
    for (const auto& jl : jc) {
      Literal lit;
      std::string pol = jl.value("polarity", "+");
      if (pol == "+") {
        lit.polarity = Polarity::Positive;
      } else if (pol == "-") {
        lit.polarity = Polarity::Negative;
      } else {
        throw ParseError(path + ": polarity must be '+' or '-'");
      }
      if (!jl.contains("phrase") || !jl["phrase"].is_array() || jl["phrase"].empty()) {
        throw ParseError(path + ": literal missing non-empty 'phrase'");
      }
      for (const auto& t : jl["phrase"]) {
        std::string tok = t.get<std::string>();
        if (!vocab.contains(tok)) throw ParseError(path + ": unknown token '" + tok + "'");
        lit.phrase.push_back(vocab.id(tok));
      }
      clause.literals.push_back(std::move(lit));
    }
    clauses.push_back(std::move(clause));
  }
  try {
    return ConstraintSet(std::move(clauses), &vocab);
  } catch (const InvalidInputError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

namespace {

void recompute_clause_statuses(const ConstraintSet& cs, ConstraintState& st) {
  const int M = cs.clause_count();
  // Aggregate per clause: any matched positive, any unmatched positive,
  // any surviving negative, all literals irreversibly false.
  std::vector<uint8_t> pos_matched(static_cast<size_t>(M), 0);
  std::vector<uint8_t> pos_pending(static_cast<size_t>(M), 0);
  std::vector<uint8_t> neg_alive(static_cast<size_t>(M), 0);
  std::vector<uint8_t> all_dead(static_cast<size_t>(M), 1);

  const auto& lits = cs.literals();
  for (size_t li = 0; li < lits.size(); ++li) {
    const auto& lit = lits[li];
    size_t c = static_cast<size_t>(lit.clause);
    if (lit.polarity == Polarity::Positive) {
      if (st.matched[li]) {
        pos_matched[c] = 1;
        all_dead[c] = 0;
      } else {
        pos_pending[c] = 1;
        all_dead[c] = 0;  // an unmatched positive is still reversibly false
      }
    } else {
      if (!st.matched[li]) {
        neg_alive[c] = 1;
        all_dead[c] = 0;
      }
      // a violated negative literal is irreversibly false
    }
  }
  for (int c = 0; c < M; ++c) {
    size_t cc = static_cast<size_t>(c);
    ClauseStatus s;
    if (pos_matched[cc]) {
      s = ClauseStatus::IrreversiblySatisfied;
    } else if (all_dead[cc]) {
      s = ClauseStatus::IrreversiblyUnsatisfied;
    } else if (neg_alive[cc]) {
      s = ClauseStatus::ReversiblySatisfied;
    } else {
      s = ClauseStatus::ReversiblyUnsatisfied;
    }
    st.clause_status[cc] = s;
  }
}

}  // namespace

ConstraintState init_state(const ConstraintSet& cs) {
  ConstraintState st;
  st.prefix_len.assign(cs.literals().size(), 0);
  st.matched.assign(cs.literals().size(), 0);
  st.clause_status.assign(static_cast<size_t>(cs.clause_count()), ClauseStatus::ReversiblyUnsatisfied);
  recompute_clause_statuses(cs, st);
  return st;
}

ConstraintState advance(const ConstraintSet& cs, const ConstraintState& state, int token) {
  ConstraintState st = state;
  const auto& lits = cs.literals();
  for (size_t li = 0; li < lits.size(); ++li) {
    const auto& lit = lits[li];
    int l = st.prefix_len[li];
    while (l > 0 && lit.phrase[static_cast<size_t>(l)] != token) {
      l = lit.failure[static_cast<size_t>(l - 1)];
    }
    if (lit.phrase[static_cast<size_t>(l)] == token) ++l;
    if (l == static_cast<int>(lit.phrase.size())) {
      st.matched[li] = 1;
      l = lit.failure[static_cast<size_t>(l - 1)];
    }
    st.prefix_len[li] = l;
  }
  recompute_clause_statuses(cs, st);
  return st;
}

namespace {

bool clause_is_candidate(ClauseStatus s, TargetPolicy policy) {
  switch (policy) {
    case TargetPolicy::NotIrreversiblySatisfied:
      return s != ClauseStatus::IrreversiblySatisfied;
    case TargetPolicy::PendingOnly:
      return s == ClauseStatus::ReversiblyUnsatisfied ||
             s == ClauseStatus::IrreversiblyUnsatisfied;
  }
  return false;
}

}  // namespace

double prefix_progress(const ConstraintSet& cs, const ConstraintState& state, TargetPolicy policy) {
  double best = 0.0;
  const auto& lits = cs.literals();
  for (size_t li = 0; li < lits.size(); ++li) {
    const auto& lit = lits[li];
    if (lit.polarity != Polarity::Positive || state.matched[li]) continue;
    if (!clause_is_candidate(state.clause_status[static_cast<size_t>(lit.clause)], policy)) continue;
    double r = static_cast<double>(state.prefix_len[li]) / static_cast<double>(lit.phrase.size());
    best = std::max(best, r);
  }
  return best;
}

std::vector<int> unsatisfied_targets(const ConstraintSet& cs, const ConstraintState& state,
                                     TargetPolicy policy) {
  std::vector<int> out;
  const auto& lits = cs.literals();
  for (size_t li = 0; li < lits.size(); ++li) {
    const auto& lit = lits[li];
    if (lit.polarity != Polarity::Positive || state.matched[li]) continue;
    if (!clause_is_candidate(state.clause_status[static_cast<size_t>(lit.clause)], policy)) continue;
    out.push_back(static_cast<int>(li));
  }
  return out;
}

bool is_pruned(const ConstraintState& state) {
  return std::any_of(state.clause_status.begin(), state.clause_status.end(),
                     [](ClauseStatus s) { return s == ClauseStatus::IrreversiblyUnsatisfied; });
}

int satisfied_clause_count(const ConstraintState& state) {
  int n = 0;
  for (ClauseStatus s : state.clause_status) {
    if (s == ClauseStatus::IrreversiblySatisfied || s == ClauseStatus::ReversiblySatisfied) ++n;
  }
  return n;
}

int violated_clause_count(const ConstraintState& state) {
  int n = 0;
  for (ClauseStatus s : state.clause_status) {
    if (s == ClauseStatus::IrreversiblyUnsatisfied) ++n;
  }
  return n;
}

std::vector<int> group_key(const ConstraintState& state) {
  std::vector<int> key;
  for (int c = 0; c < static_cast<int>(state.clause_status.size()); ++c) {
    if (state.clause_status[static_cast<size_t>(c)] == ClauseStatus::IrreversiblySatisfied) {
      key.push_back(c);
    }
  }
  return key;
}

}  // namespace lookdec
