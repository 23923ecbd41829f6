#include "sfg/payoff.hpp"

#include <stdexcept>

namespace sfg {

PayoffMatrix build_payoff_matrix(const Game& game, const TreePlex& tp1,
                                 const TreePlex& tp2, bool normalize) {
  if (tp1.player() != 1 || tp2.player() != 2) {
    throw std::invalid_argument("build_payoff_matrix: treeplex order is (1,2)");
  }
  const std::vector<std::int32_t> seq1 = node_sequences(game, tp1);
  const std::vector<std::int32_t> seq2 = node_sequences(game, tp2);

  // Chance reach per node, then one triplet per terminal.
  std::vector<double> chance(game.num_nodes(), 1.0);
  std::vector<Triplet> trips;
  trips.reserve(static_cast<std::size_t>(game.num_terminals()));
  for (std::size_t id = 1; id < game.num_nodes(); ++id) {
    const GameNode& nd = game.node(id);
    const bool from_chance = game.node(nd.parent).player == kChance;
    chance[id] = chance[nd.parent] * (from_chance ? nd.chance_prob : 1.0);
    if (nd.terminal) {
      trips.push_back({seq1[id], seq2[id], chance[id] * nd.utility});
    }
  }
  PayoffMatrix pm;
  pm.a = SparseMatrix(tp1.num_sequences(), tp2.num_sequences(), std::move(trips));
  pm.scale = pm.a.max_abs();
  if (normalize && pm.scale > 0.0) {
    pm.a.scale(1.0 / pm.scale);
    pm.normalized = true;
  }
  return pm;
}

}  // namespace sfg
