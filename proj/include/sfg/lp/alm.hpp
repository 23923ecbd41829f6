#ifndef SFG_LP_ALM_HPP
#define SFG_LP_ALM_HPP

#include <cstdint>
#include <limits>
#include <span>

#include "sfg/best_response.hpp"
#include "sfg/lp/model.hpp"
#include "sfg/payoff.hpp"
#include "sfg/rng.hpp"
#include "sfg/solve_result.hpp"
#include "sfg/treeplex.hpp"

namespace sfg::lp {

struct AlmConfig {
  double eta0 = 1.0;
  double eta_growth = 2.0;
  std::int64_t inner_t0 = 10;    // coordinate passes in the first outer iter
  std::int64_t inner_step = 2;   // extra passes per outer iter (linear growth)
  double gap_target = 1e-4;
  double time_limit_s = std::numeric_limits<double>::infinity();
  std::int64_t max_outer = 1000000;
  std::uint64_t seed = 0;
  bool certify_dual = false;  // also run the dual for a certified pair
  std::int64_t eval_every = 1;
  double clock_offset = 0.0;  // pre-charged seconds (factorization phase)
};

/// Mutable solver state: dual estimate, penalty, and the current subproblem
/// primal/slack pair. All kept nonnegative at outer-iteration boundaries.
struct AlmState {
  std::vector<double> y_hat;  // one per constraint row
  std::vector<double> x;      // subproblem primal
  std::vector<double> z;      // subproblem slack
  double eta = 1.0;
  std::int64_t outer = 0;
  std::int64_t inner_budget = 0;
  std::int64_t eta_escalations = 0;
  double infeas_checkpoint = std::numeric_limits<double>::infinity();
  std::int64_t outer_at_checkpoint = 0;
};

/// What the solver needs to turn LP iterates into strategies and gaps.
struct GameContext {
  const PayoffMatrix* payoff = nullptr;
  const TreePlex* tp1 = nullptr;
  const TreePlex* tp2 = nullptr;
};

AlmState make_alm_state(const StandardFormLP& std_lp, const AlmConfig& config);

/// Runs `passes` coordinate-descent passes on the quadratic-penalty
/// subproblem. Each pass refreshes z in closed form, then sweeps the
/// coordinates in a fresh random permutation with exact 1-D minimizers
/// clamped at zero. The objective never increases from pass to pass.
void solve_subproblem(AlmState& state, const StandardFormLP& std_lp,
                      std::int64_t passes, Rng& rng);

/// c^T x + (eta/2) ||A x - b + z + y_hat/eta||^2 at the current state.
double subproblem_objective(const AlmState& state, const StandardFormLP& std_lp);

/// Projects an arbitrary vector onto the treeplex: negatives are zeroed,
/// the root is pinned to 1, and each infoset's children are rescaled in
/// topological order to sum to their parent (uniform if they are all zero).
/// The result satisfies B x = b within 1e-12.
SequenceStrategy normalize_strategy(std::span<const double> raw,
                                    const TreePlex& tp);

/// Reads both players' raw (infeasible) strategies out of the iterate:
/// the x player from the subproblem primal, the y player from the dual
/// estimate on the payoff rows, with the roles transposed under the dual
/// orientation.
struct RawStrategies {
  std::vector<double> player1;
  std::vector<double> player2;
};
RawStrategies raw_strategies(const AlmState& state,
                             const StandardFormLP& std_lp);

/// Normalizes both raw strategies and evaluates value and Nash gap.
SolveResult extract_strategies(const AlmState& state,
                               const StandardFormLP& std_lp,
                               const GameContext& ctx);

/// Augmented-Lagrangian outer loop with linearly growing inner budgets.
/// Returns the best strategies seen, with a gap trace recorded at every
/// evaluated outer iteration.
SolveResult alm_solve(const StandardFormLP& std_lp, const GameContext& ctx,
                      const AlmConfig& config);

/// Convenience driver: builds the standard form in the requested
/// orientation and solves; with `certify_dual` also runs the opposite
/// orientation and combines the two certified sides.
SolveResult solve_game_lp(const GameLP& lp, const GameContext& ctx,
                          Orientation orientation, const AlmConfig& config);

}  // namespace sfg::lp

#endif  // SFG_LP_ALM_HPP
