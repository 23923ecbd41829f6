#ifndef SFG_CFR_DCFR_HPP
#define SFG_CFR_DCFR_HPP

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "sfg/factorizer.hpp"
#include "sfg/payoff.hpp"
#include "sfg/solve_result.hpp"
#include "sfg/treeplex.hpp"

namespace sfg::cfr {

/// Discounted CFR family. After each iteration t, positive cumulative
/// regrets are scaled by t^alpha/(t^alpha + 1) (alpha = +inf keeps them),
/// negative ones by t^beta/(t^beta + 1) (beta = -inf floors them at zero),
/// and the average-strategy accumulator by (t/(t+1))^gamma.
struct DcfrParams {
  double alpha = 1.5;
  double beta = 0.0;
  double gamma = 2.0;

  static DcfrParams cfr_plus() {
    return {std::numeric_limits<double>::infinity(),
            -std::numeric_limits<double>::infinity(), 1.0};
  }
  static DcfrParams cfr_plus_quadratic() {
    return {std::numeric_limits<double>::infinity(),
            -std::numeric_limits<double>::infinity(), 2.0};
  }
  static DcfrParams dcfr() { return {1.5, 0.0, 2.0}; }
  static DcfrParams lcfr() { return {1.0, 1.0, 1.0}; }

  /// Named presets: cfr+ | cfr+quad | dcfr | lcfr.
  static DcfrParams preset(const std::string& name);

  /// gamma must be finite and nonnegative, and alpha >= beta.
  void validate() const;
};

/// Per-player cumulative regrets and weighted average-strategy numerators,
/// both indexed by sequence.
struct RegretTable {
  std::array<std::vector<double>, 2> regret;
  std::array<std::vector<double>, 2> avg_num;
  std::array<double, 2> avg_weight = {0.0, 0.0};
  std::int64_t iteration = 0;  // completed iterations
};

RegretTable make_regret_table(const TreePlex& tp1, const TreePlex& tp2);

/// Distribution proportional to the positive parts; uniform when none.
std::vector<double> regret_match(std::span<const double> regrets);

/// Sequence-form strategy induced by regret matching at every infoset.
SequenceStrategy current_strategy(const TreePlex& tp,
                                  std::span<const double> regrets);

/// Normalized average strategy (uniform at never-reached infosets).
SequenceStrategy average_strategy(const TreePlex& tp,
                                  std::span<const double> avg_num);

struct CfrContext {
  const PayoffMatrix* payoff = nullptr;
  const TreePlex* tp1 = nullptr;
  const TreePlex* tp2 = nullptr;
  /// When set, gradients go through the factored form Ahat + U V^T.
  const Factorization* factors = nullptr;
};

/// One alternating iteration: player 1 updates against player 2's current
/// strategy, then player 2 against player 1's fresh one. Counterfactual
/// values come from one sparse gradient pass plus a bottom-up treeplex walk.
void dcfr_iterate(const CfrContext& ctx, const DcfrParams& params,
                  RegretTable& tables);

struct CfrConfig {
  double gap_target = 1e-4;
  double time_limit_s = std::numeric_limits<double>::infinity();
  std::int64_t max_iterations = 100000000;
  std::int64_t eval_every = 50;  // gap evaluation costs a best-response pass
  double clock_offset = 0.0;
};

/// Iterates to the stop condition, tracking the Nash gap of the average
/// strategies; returns the best average pair seen.
SolveResult solve_cfr(const CfrContext& ctx, const DcfrParams& params,
                      const CfrConfig& config);

}  // namespace sfg::cfr

#endif  // SFG_CFR_DCFR_HPP
