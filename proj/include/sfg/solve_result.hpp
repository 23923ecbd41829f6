#ifndef SFG_SOLVE_RESULT_HPP
#define SFG_SOLVE_RESULT_HPP

#include <cstdint>

#include "sfg/trace.hpp"
#include "sfg/treeplex.hpp"

namespace sfg {

enum class StopReason { kGapReached, kTimeLimit, kIterationCap };

/// Outcome of one solver run: a feasible strategy pair, its value and Nash
/// gap in the solved payoff's units, and the anytime trace.
struct SolveResult {
  SequenceStrategy x_strategy;  // player 1
  SequenceStrategy y_strategy;  // player 2
  double value = 0.0;
  double gap = 0.0;
  SolveTrace trace;
  StopReason reason = StopReason::kIterationCap;
  std::int64_t iterations = 0;
};

}  // namespace sfg

#endif  // SFG_SOLVE_RESULT_HPP
