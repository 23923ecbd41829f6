#include "sfg/cfr/dcfr.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "sfg/best_response.hpp"
#include "sfg/kernels.hpp"

namespace sfg::cfr {

DcfrParams DcfrParams::preset(const std::string& name) {
  if (name == "cfr+") return cfr_plus();
  if (name == "cfr+quad") return cfr_plus_quadratic();
  if (name == "dcfr") return dcfr();
  if (name == "lcfr") return lcfr();
  throw std::invalid_argument("unknown CFR preset '" + name +
                              "' (want cfr+ | cfr+quad | dcfr | lcfr)");
}

void DcfrParams::validate() const {
  if (!std::isfinite(gamma) || gamma < 0.0) {
    throw std::invalid_argument("dcfr: gamma must be finite and >= 0");
  }
  if (alpha < beta) {
    throw std::invalid_argument("dcfr: alpha must be >= beta");
  }
}

RegretTable make_regret_table(const TreePlex& tp1, const TreePlex& tp2) {
  RegretTable t;
  t.regret[0].assign(tp1.num_sequences(), 0.0);
  t.regret[1].assign(tp2.num_sequences(), 0.0);
  t.avg_num[0].assign(tp1.num_sequences(), 0.0);
  t.avg_num[1].assign(tp2.num_sequences(), 0.0);
  return t;
}

std::vector<double> regret_match(std::span<const double> regrets) {
  std::vector<double> dist(regrets.size());
  double pos_sum = 0.0;
  for (double r : regrets) pos_sum += std::max(0.0, r);
  if (pos_sum > 0.0) {
    for (std::size_t a = 0; a < regrets.size(); ++a) {
      dist[a] = std::max(0.0, regrets[a]) / pos_sum;
    }
  } else {
    const double u = 1.0 / static_cast<double>(regrets.size());
    for (double& d : dist) d = u;
  }
  return dist;
}

SequenceStrategy current_strategy(const TreePlex& tp,
                                  std::span<const double> regrets) {
  SequenceStrategy s;
  s.player = tp.player();
  s.x.assign(tp.num_sequences(), 0.0);
  s.x[0] = 1.0;
  for (const InfosetRecord& rec : tp.infosets()) {
    double pos_sum = 0.0;
    for (std::int32_t a = 0; a < rec.num_actions; ++a) {
      pos_sum += std::max(0.0, regrets[rec.first_seq + a]);
    }
    const double parent = s.x[rec.parent_seq];
    if (pos_sum > 0.0) {
      for (std::int32_t a = 0; a < rec.num_actions; ++a) {
        s.x[rec.first_seq + a] =
            parent * (std::max(0.0, regrets[rec.first_seq + a]) / pos_sum);
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

SequenceStrategy average_strategy(const TreePlex& tp,
                                  std::span<const double> avg_num) {
  // avg_num is a nonnegative combination of feasible plans, so renormalizing
  // per infoset is exact; unreached infosets fall back to uniform.
  SequenceStrategy s;
  s.player = tp.player();
  s.x.assign(tp.num_sequences(), 0.0);
  s.x[0] = 1.0;
  for (const InfosetRecord& rec : tp.infosets()) {
    double sum = 0.0;
    for (std::int32_t a = 0; a < rec.num_actions; ++a) {
      sum += avg_num[rec.first_seq + a];
    }
    const double parent = s.x[rec.parent_seq];
    if (sum > 0.0) {
      for (std::int32_t a = 0; a < rec.num_actions; ++a) {
        s.x[rec.first_seq + a] = parent * (avg_num[rec.first_seq + a] / sum);
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

namespace {

void check_context(const CfrContext& ctx) {
  if (ctx.payoff == nullptr || ctx.tp1 == nullptr || ctx.tp2 == nullptr) {
    throw std::invalid_argument("cfr: incomplete context");
  }
}

std::vector<double> gradient_for(const CfrContext& ctx, int player,
                                 const SequenceStrategy& opponent) {
  const SparseMatrix& a = ctx.payoff->a;
  std::vector<double> g;
  if (ctx.factors != nullptr) {
    const Factorization& f = *ctx.factors;
    g = player == 1 ? matvec_factored_fwd(f.residual, f.u, f.v, opponent.x)
                    : matvec_factored(f.residual, f.u, f.v, opponent.x);
  } else {
    g.assign(player == 1 ? a.rows() : a.cols(), 0.0);
    if (player == 1) {
      kernels::spmv(a, opponent.x, g);
    } else {
      kernels::spmv_t(a, opponent.x, g);
    }
  }
  if (player == 2) {
    for (double& v : g) v = -v;  // player 2 maximizes -u1
  }
  return g;
}

// One player's regret-matching pass, counterfactual update, discounting,
// and average accumulation.
void update_player(const CfrContext& ctx, const DcfrParams& params,
                   RegretTable& tables, int player, std::int64_t t) {
  const TreePlex& tp = player == 1 ? *ctx.tp1 : *ctx.tp2;
  const TreePlex& opp_tp = player == 1 ? *ctx.tp2 : *ctx.tp1;
  std::vector<double>& regret = tables.regret[player - 1];
  const SequenceStrategy mine = current_strategy(tp, regret);
  const SequenceStrategy theirs =
      current_strategy(opp_tp, tables.regret[2 - player]);

  // Counterfactual values: gradient plus children infoset values, folded
  // bottom-up; regret accrues against the infoset's regret-matched value.
  // Sigma comes from the regrets directly so that unreached infosets still
  // play their regret-matched strategy (their counterfactual reach can be
  // positive even when their own reach is zero).
  std::vector<double> val = gradient_for(ctx, player, theirs);
  const auto infosets = tp.infosets();
  for (std::int32_t i = static_cast<std::int32_t>(infosets.size()) - 1; i >= 0;
       --i) {
    const InfosetRecord& rec = infosets[i];
    double pos_sum = 0.0;
    for (std::int32_t a = 0; a < rec.num_actions; ++a) {
      pos_sum += std::max(0.0, regret[rec.first_seq + a]);
    }
    double expect = 0.0;
    for (std::int32_t a = 0; a < rec.num_actions; ++a) {
      const double sigma =
          pos_sum > 0.0 ? std::max(0.0, regret[rec.first_seq + a]) / pos_sum
                        : 1.0 / rec.num_actions;
      expect += sigma * val[rec.first_seq + a];
    }
    for (std::int32_t a = 0; a < rec.num_actions; ++a) {
      regret[rec.first_seq + a] += val[rec.first_seq + a] - expect;
    }
    val[rec.parent_seq] += expect;
  }

  // Discounting.
  const double td = static_cast<double>(t);
  double pos_f = 1.0;
  if (std::isfinite(params.alpha)) {
    const double p = std::pow(td, params.alpha);
    pos_f = p / (p + 1.0);
  }
  double neg_f = 0.0;
  if (params.beta == std::numeric_limits<double>::infinity()) {
    neg_f = 1.0;
  } else if (std::isfinite(params.beta)) {
    const double p = std::pow(td, params.beta);
    neg_f = p / (p + 1.0);
  }
  if (pos_f != 1.0 || neg_f != 1.0) {
    for (double& r : regret) r *= r > 0.0 ? pos_f : neg_f;
  }

  // Average-strategy accumulation with the played strategy.
  const double w = std::pow(td / (td + 1.0), params.gamma);
  std::vector<double>& avg = tables.avg_num[player - 1];
  for (std::size_t s = 0; s < avg.size(); ++s) {
    avg[s] = avg[s] * w + mine.x[s];
  }
  tables.avg_weight[player - 1] = tables.avg_weight[player - 1] * w + 1.0;
}

}  // namespace

void dcfr_iterate(const CfrContext& ctx, const DcfrParams& params,
                  RegretTable& tables) {
  check_context(ctx);
  params.validate();
  const std::int64_t t = tables.iteration + 1;
  update_player(ctx, params, tables, 1, t);
  update_player(ctx, params, tables, 2, t);
  tables.iteration = t;
}

SolveResult solve_cfr(const CfrContext& ctx, const DcfrParams& params,
                      const CfrConfig& config) {
  check_context(ctx);
  params.validate();
  const auto t_start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return config.clock_offset +
           std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         t_start)
               .count();
  };

  RegretTable tables = make_regret_table(*ctx.tp1, *ctx.tp2);
  SolveResult best;
  best.gap = std::numeric_limits<double>::infinity();
  SolveTrace trace;
  StopReason reason = StopReason::kIterationCap;

  for (std::int64_t t = 1; t <= config.max_iterations; ++t) {
    dcfr_iterate(ctx, params, tables);
    bool stop = false;
    if (t % config.eval_every == 0 || t == config.max_iterations) {
      SequenceStrategy ax = average_strategy(*ctx.tp1, tables.avg_num[0]);
      SequenceStrategy ay = average_strategy(*ctx.tp2, tables.avg_num[1]);
      const double gap = nash_gap(*ctx.payoff, *ctx.tp1, *ctx.tp2, ax, ay);
      trace.add(elapsed(), t, gap, "solve");
      if (gap < best.gap) {
        best.gap = gap;
        best.value = strategy_value(*ctx.payoff, ax, ay);
        best.x_strategy = std::move(ax);
        best.y_strategy = std::move(ay);
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
    best.iterations = t;
    if (stop) break;
  }
  best.trace = std::move(trace);
  best.reason = reason;
  return best;
}

}  // namespace sfg::cfr
