#ifndef SFG_BEST_RESPONSE_HPP
#define SFG_BEST_RESPONSE_HPP

#include "sfg/payoff.hpp"
#include "sfg/treeplex.hpp"

namespace sfg {

struct BestResponse {
  double value;  // responder's own utility against the fixed opponent
  SequenceStrategy strategy;
};

/// Best response of `responder` against the opponent's fixed sequence-form
/// strategy: one gradient product (A y or A^T x) plus a bottom-up pass over
/// the responder's treeplex. The returned value is in the responder's own
/// utility convention (player 2 maximizes -u1).
BestResponse best_response_value(const PayoffMatrix& payoff,
                                 const TreePlex& tp_responder,
                                 const SequenceStrategy& opponent,
                                 int responder);

/// BRV against y plus BRV against x; nonnegative, zero exactly at a Nash
/// equilibrium. Both strategies must be feasible within 1e-9.
double nash_gap(const PayoffMatrix& payoff, const TreePlex& tp1,
                const TreePlex& tp2, const SequenceStrategy& x,
                const SequenceStrategy& y);

/// x^T A y.
double strategy_value(const PayoffMatrix& payoff, const SequenceStrategy& x,
                      const SequenceStrategy& y);

}  // namespace sfg

#endif  // SFG_BEST_RESPONSE_HPP
