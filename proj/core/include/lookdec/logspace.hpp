#pragma once

#include <cmath>
#include <limits>
#include <vector>

namespace lookdec {

// Natural log everywhere. Impossible events carry -inf, which propagates
// through sums without producing NaN (we never subtract two -inf terms).
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

inline double safe_log(double p) { return p > 0.0 ? std::log(p) : kNegInf; }

inline bool is_neg_inf(double x) { return std::isinf(x) && x < 0; }

// Lexicographic token-sequence comparison, the global tie-break order.
inline bool lex_less(const std::vector<int>& a, const std::vector<int>& b) {
  return a < b;
}

}  // namespace lookdec
