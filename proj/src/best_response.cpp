#include "sfg/best_response.hpp"

#include <stdexcept>

#include "sfg/kernels.hpp"

namespace sfg {

BestResponse best_response_value(const PayoffMatrix& payoff,
                                 const TreePlex& tp_responder,
                                 const SequenceStrategy& opponent,
                                 int responder) {
  const SparseMatrix& a = payoff.a;
  if (responder != 1 && responder != 2) {
    throw std::invalid_argument("best_response_value: responder must be 1 or 2");
  }
  const std::int32_t want_opp = responder == 1 ? a.cols() : a.rows();
  const std::int32_t want_own = responder == 1 ? a.rows() : a.cols();
  if (static_cast<std::int32_t>(opponent.x.size()) != want_opp ||
      tp_responder.num_sequences() != want_own) {
    throw std::invalid_argument("best_response_value: dimension mismatch");
  }

  // Gradient in the responder's own utility units: player 1 maximizes
  // x^T A y, player 2 maximizes -(x^T A y).
  std::vector<double> g(want_own, 0.0);
  if (responder == 1) {
    kernels::spmv(a, opponent.x, g);
  } else {
    kernels::spmv_t(a, opponent.x, g);
    for (double& v : g) v = -v;
  }

  // Bottom-up: fold each infoset's best action value onto its parent
  // sequence. Infosets are stored topologically (parent first).
  const auto infosets = tp_responder.infosets();
  std::vector<std::int32_t> choice(infosets.size(), 0);
  for (std::int32_t t = static_cast<std::int32_t>(infosets.size()) - 1; t >= 0;
       --t) {
    const InfosetRecord& rec = infosets[t];
    double best = g[rec.first_seq];
    std::int32_t arg = 0;
    for (std::int32_t k = 1; k < rec.num_actions; ++k) {
      if (g[rec.first_seq + k] > best) {
        best = g[rec.first_seq + k];
        arg = k;
      }
    }
    choice[t] = arg;
    g[rec.parent_seq] += best;
  }

  BestResponse br;
  br.value = g[0];
  br.strategy.player = responder;
  br.strategy.x.assign(want_own, 0.0);
  br.strategy.x[0] = 1.0;
  for (std::size_t t = 0; t < infosets.size(); ++t) {
    const InfosetRecord& rec = infosets[t];
    if (br.strategy.x[rec.parent_seq] > 0.0) {
      br.strategy.x[rec.first_seq + choice[t]] = br.strategy.x[rec.parent_seq];
    }
  }
  return br;
}

double nash_gap(const PayoffMatrix& payoff, const TreePlex& tp1,
                const TreePlex& tp2, const SequenceStrategy& x,
                const SequenceStrategy& y) {
  if (tp1.feasibility_error(x.x) > 1e-9 || tp2.feasibility_error(y.x) > 1e-9) {
    throw std::invalid_argument(
        "nash_gap: infeasible strategy (normalize first)");
  }
  const double brv1 = best_response_value(payoff, tp1, y, 1).value;
  const double brv2 = best_response_value(payoff, tp2, x, 2).value;
  return brv1 + brv2;
}

double strategy_value(const PayoffMatrix& payoff, const SequenceStrategy& x,
                      const SequenceStrategy& y) {
  std::vector<double> ay(payoff.a.rows(), 0.0);
  kernels::spmv(payoff.a, y.x, ay);
  double v = 0.0;
  for (std::int32_t i = 0; i < payoff.a.rows(); ++i) v += x.x[i] * ay[i];
  return v;
}

}  // namespace sfg
