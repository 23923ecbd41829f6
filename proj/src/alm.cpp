#include "sfg/lp/alm.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "sfg/kernels.hpp"

namespace sfg::lp {

namespace {

constexpr double kEtaOverflow = 1e150;

// Outer iterations granted to halve the infeasibility before the penalty
// escalates.
constexpr std::int64_t kEscalationWindow = 10;

std::vector<double> column_norms_sq(const SparseMatrix& a) {
  std::vector<double> norms(a.cols(), 0.0);
  for (std::int32_t j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (const Entry& e : a.col(j)) s += e.value * e.value;
    norms[j] = s;
  }
  return norms;
}

// s = A x - b + y_hat/eta.
void shifted_residual(const StandardFormLP& std_lp, const AlmState& state,
                      std::vector<double>& s) {
  s.assign(std_lp.a.rows(), 0.0);
  kernels::spmv(std_lp.a, state.x, s);
  for (std::int32_t i = 0; i < std_lp.a.rows(); ++i) {
    s[i] += -std_lp.b[i] + state.y_hat[i] / state.eta;
  }
}

}  // namespace

AlmState make_alm_state(const StandardFormLP& std_lp, const AlmConfig& config) {
  AlmState st;
  st.y_hat.assign(std_lp.a.rows(), 0.0);
  st.x.assign(std_lp.a.cols(), 0.0);
  st.z.assign(std_lp.a.rows(), 0.0);
  st.eta = config.eta0;
  if (config.eta0 <= 0.0) throw std::invalid_argument("alm: eta0 must be > 0");
  return st;
}

void solve_subproblem(AlmState& state, const StandardFormLP& std_lp,
                      std::int64_t passes, Rng& rng) {
  const SparseMatrix& a = std_lp.a;
  if (passes < 1) throw std::invalid_argument("alm: need at least one pass");
  const std::vector<double> norms = column_norms_sq(a);
  std::vector<double> r;
  std::vector<std::int32_t> perm(a.cols());
  std::iota(perm.begin(), perm.end(), 0);

  state.inner_budget = passes;
  for (std::int64_t pass = 0; pass < passes; ++pass) {
    // Closed-form slack refresh, then r = A x - b + z + y_hat/eta.
    shifted_residual(std_lp, state, r);
    for (std::int32_t i = 0; i < a.rows(); ++i) {
      state.z[i] = std::max(0.0, -r[i]);
      r[i] += state.z[i];
    }
    shuffle_vec(perm, rng);
    double largest_step = 0.0;
    for (std::int32_t j : perm) {
      if (norms[j] == 0.0) {
        if (std_lp.c[j] < 0.0) {
          throw std::runtime_error("alm: unbounded coordinate in subproblem");
        }
        state.x[j] = 0.0;
        continue;
      }
      double dot = 0.0;
      for (const Entry& e : a.col(j)) dot += e.value * r[e.index];
      const double delta = -(std_lp.c[j] / state.eta + dot) / norms[j];
      const double x_new = std::max(0.0, state.x[j] + delta);
      const double step = x_new - state.x[j];
      if (step != 0.0) {
        for (const Entry& e : a.col(j)) r[e.index] += e.value * step;
        state.x[j] = x_new;
        largest_step = std::max(largest_step, std::abs(step));
      }
    }
    // The budget is a cap; a pass that barely moved anything means the
    // subproblem is solved to working precision.
    if (largest_step <= 1e-14 * (1.0 + state.eta)) break;
  }
}

double subproblem_objective(const AlmState& state,
                            const StandardFormLP& std_lp) {
  std::vector<double> s;
  shifted_residual(std_lp, state, s);
  double quad = 0.0;
  for (std::int32_t i = 0; i < std_lp.a.rows(); ++i) {
    const double t = s[i] + state.z[i];
    quad += t * t;
  }
  double lin = 0.0;
  for (std::int32_t j = 0; j < std_lp.a.cols(); ++j) {
    lin += std_lp.c[j] * state.x[j];
  }
  return lin + 0.5 * state.eta * quad;
}

SequenceStrategy normalize_strategy(std::span<const double> raw,
                                    const TreePlex& tp) {
  if (static_cast<std::int32_t>(raw.size()) != tp.num_sequences()) {
    throw std::invalid_argument("normalize_strategy: wrong vector length");
  }
  SequenceStrategy s;
  s.player = tp.player();
  s.x.assign(tp.num_sequences(), 0.0);
  s.x[0] = 1.0;
  for (const InfosetRecord& rec : tp.infosets()) {
    const double parent = s.x[rec.parent_seq];
    double sum = 0.0;
    for (std::int32_t a = 0; a < rec.num_actions; ++a) {
      sum += std::max(0.0, raw[rec.first_seq + a]);
    }
    if (sum > 0.0) {
      const double scale = parent / sum;
      for (std::int32_t a = 0; a < rec.num_actions; ++a) {
        s.x[rec.first_seq + a] = std::max(0.0, raw[rec.first_seq + a]) * scale;
      }
    } else {
      const double share = parent / rec.num_actions;
      for (std::int32_t a = 0; a < rec.num_actions; ++a) {
        s.x[rec.first_seq + a] = share;
      }
    }
  }
  return s;
}

RawStrategies raw_strategies(const AlmState& state,
                             const StandardFormLP& std_lp) {
  RawStrategies raw;
  const bool primal = std_lp.orientation == Orientation::kPrimal;
  // Sizes come from the label ranges.
  std::int32_t n1 = 0, n2 = 0;
  for (const Label& l : primal ? std_lp.col_labels : std_lp.row_labels) {
    if (l.is_var && l.kind == static_cast<std::int8_t>(VarKind::kX)) {
      n1 = std::max(n1, l.index + 1);
    }
  }
  for (const Label& l : primal ? std_lp.row_labels : std_lp.col_labels) {
    if (!l.is_var && l.kind == static_cast<std::int8_t>(RowKind::kPayoff)) {
      n2 = std::max(n2, l.index + 1);
    }
  }
  raw.player1.assign(n1, 0.0);
  raw.player2.assign(n2, 0.0);

  for (std::size_t j = 0; j < std_lp.col_labels.size(); ++j) {
    const Label& l = std_lp.col_labels[j];
    if (primal && l.is_var && l.kind == static_cast<std::int8_t>(VarKind::kX)) {
      raw.player1[l.index] = state.x[j];
    } else if (!primal && !l.is_var &&
               l.kind == static_cast<std::int8_t>(RowKind::kPayoff)) {
      raw.player2[l.index] = state.x[j];
    }
  }
  for (std::size_t i = 0; i < std_lp.row_labels.size(); ++i) {
    const Label& l = std_lp.row_labels[i];
    if (primal && !l.is_var &&
        l.kind == static_cast<std::int8_t>(RowKind::kPayoff)) {
      raw.player2[l.index] = state.y_hat[i];
    } else if (!primal && l.is_var &&
               l.kind == static_cast<std::int8_t>(VarKind::kX)) {
      raw.player1[l.index] = state.y_hat[i];
    }
  }
  return raw;
}

SolveResult extract_strategies(const AlmState& state,
                               const StandardFormLP& std_lp,
                               const GameContext& ctx) {
  if (ctx.payoff == nullptr || ctx.tp1 == nullptr || ctx.tp2 == nullptr) {
    throw std::invalid_argument("extract_strategies: incomplete game context");
  }
  RawStrategies raw = raw_strategies(state, std_lp);
  if (static_cast<std::int32_t>(raw.player1.size()) !=
          ctx.tp1->num_sequences() ||
      static_cast<std::int32_t>(raw.player2.size()) !=
          ctx.tp2->num_sequences()) {
    throw std::runtime_error(
        "extract_strategies: label mapping does not match the game");
  }
  SolveResult out;
  out.x_strategy = normalize_strategy(raw.player1, *ctx.tp1);
  out.y_strategy = normalize_strategy(raw.player2, *ctx.tp2);
  out.value = strategy_value(*ctx.payoff, out.x_strategy, out.y_strategy);
  out.gap =
      nash_gap(*ctx.payoff, *ctx.tp1, *ctx.tp2, out.x_strategy, out.y_strategy);
  out.iterations = state.outer;
  return out;
}

SolveResult alm_solve(const StandardFormLP& std_lp, const GameContext& ctx,
                      const AlmConfig& config) {
  const auto t_start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return config.clock_offset +
           std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         t_start)
               .count();
  };

  AlmState state = make_alm_state(std_lp, config);
  Rng rng(config.seed);
  const SparseMatrix& a = std_lp.a;

  SolveResult best;
  best.gap = std::numeric_limits<double>::infinity();
  SolveTrace trace;
  StopReason reason = StopReason::kIterationCap;

  std::vector<double> ax(a.rows());
  for (std::int64_t outer = 1; outer <= config.max_outer; ++outer) {
    state.outer = outer;
    const std::int64_t budget = config.inner_t0 + (outer - 1) * config.inner_step;
    solve_subproblem(state, std_lp, budget, rng);

    // Dual update: refresh the slack against the final x, step, project.
    kernels::spmv(a, state.x, ax);
    double infeas = 0.0;
    for (std::int32_t i = 0; i < a.rows(); ++i) {
      const double s = ax[i] - std_lp.b[i];
      state.z[i] = std::max(0.0, -(s + state.y_hat[i] / state.eta));
      state.y_hat[i] =
          std::max(0.0, state.y_hat[i] + state.eta * (s + state.z[i]));
      infeas = std::max(infeas, s);
    }
    infeas = std::max(infeas, 0.0);

    // Escalate the penalty when the primal infeasibility has failed to
    // halve since the last checkpoint. The check runs once per checkpoint
    // window, not per iteration, so the penalty grows only on real stalls.
    if (infeas <= 0.5 * state.infeas_checkpoint) {
      state.infeas_checkpoint = infeas;
      state.outer_at_checkpoint = outer;
    } else if (outer - state.outer_at_checkpoint >= kEscalationWindow) {
      state.eta *= config.eta_growth;
      ++state.eta_escalations;
      state.infeas_checkpoint = infeas;
      state.outer_at_checkpoint = outer;
      if (state.eta > kEtaOverflow) {
        throw std::runtime_error(
            "alm: penalty overflow; rescale the problem (normalize the "
            "payoff matrix)");
      }
    }

    bool stop = false;
    if (outer % config.eval_every == 0 || outer == config.max_outer) {
      SolveResult cur = extract_strategies(state, std_lp, ctx);
      trace.add(elapsed(), outer, cur.gap, "solve");
      if (cur.gap < best.gap) {
        best.x_strategy = std::move(cur.x_strategy);
        best.y_strategy = std::move(cur.y_strategy);
        best.value = cur.value;
        best.gap = cur.gap;
      }
      if (best.gap <= config.gap_target) {
        reason = StopReason::kGapReached;
        stop = true;
      }
    }
    if (!stop && elapsed() >= config.time_limit_s) {
      reason = StopReason::kTimeLimit;
      stop = true;
    }
    best.iterations = outer;
    if (stop) break;
  }

  best.trace = std::move(trace);
  best.reason = reason;
  return best;
}

SolveResult solve_game_lp(const GameLP& lp, const GameContext& ctx,
                          Orientation orientation, const AlmConfig& config) {
  const StandardFormLP first = to_standard_form(lp, orientation);
  SolveResult r1 = alm_solve(first, ctx, config);
  if (!config.certify_dual) return r1;

  // Second run on the other orientation; its dual estimate certifies the
  // side the first run only approximated.
  AlmConfig cfg2 = config;
  cfg2.clock_offset = r1.trace.rows.empty()
                          ? config.clock_offset
                          : r1.trace.rows.back().elapsed_s;
  const Orientation other = orientation == Orientation::kPrimal
                                ? Orientation::kDual
                                : Orientation::kPrimal;
  const StandardFormLP second = to_standard_form(lp, other);
  SolveResult r2 = alm_solve(second, ctx, cfg2);

  // Certified sides: the dual estimate of each run. With the primal
  // orientation first, r1 certifies player 2 and r2 certifies player 1.
  SolveResult out;
  const bool first_is_primal = orientation == Orientation::kPrimal;
  out.x_strategy = first_is_primal ? r2.x_strategy : r1.x_strategy;
  out.y_strategy = first_is_primal ? r1.y_strategy : r2.y_strategy;
  out.value = strategy_value(*ctx.payoff, out.x_strategy, out.y_strategy);
  out.gap =
      nash_gap(*ctx.payoff, *ctx.tp1, *ctx.tp2, out.x_strategy, out.y_strategy);
  out.trace = std::move(r1.trace);
  for (TraceRow& row : r2.trace.rows) {
    out.trace.add(row.elapsed_s, row.iteration, row.nash_gap, row.phase);
  }
  out.reason = r2.reason;
  out.iterations = r1.iterations + r2.iterations;
  return out;
}

}  // namespace sfg::lp
