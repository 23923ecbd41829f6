#ifndef SFG_TREEPLEX_HPP
#define SFG_TREEPLEX_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "sfg/game.hpp"
#include "sfg/sparse_matrix.hpp"

namespace sfg {

/// One infoset of a treeplex: its parent sequence and the contiguous block
/// of child sequences [first_seq, first_seq + num_actions).
struct InfosetRecord {
  std::int32_t parent_seq;
  std::int32_t first_seq;
  std::int32_t num_actions;
  std::int32_t game_infoset;  // id used by the Game
};

/// Sequence-form constraint system of one player: sequences in topological
/// order (empty sequence at index 0, parents before children), and the
/// linear system B x = b, x >= 0 describing realization plans. B has one
/// row per infoset plus the root row pinning x(empty) = 1.
class TreePlex {
 public:
  int player() const { return player_; }
  std::int32_t num_sequences() const { return num_sequences_; }
  std::span<const InfosetRecord> infosets() const { return infosets_; }
  std::int32_t num_infosets() const {
    return static_cast<std::int32_t>(infosets_.size());
  }

  const SparseMatrix& constraint_matrix() const { return b_matrix_; }
  std::span<const double> constraint_rhs() const { return b_rhs_; }

  /// Treeplex infoset index for a Game infoset id.
  std::int32_t infoset_index(std::int32_t game_infoset) const {
    return infoset_index_[game_infoset];
  }

  /// Infoset that owns sequence s (-1 for the empty sequence).
  std::int32_t owning_infoset(std::int32_t seq) const {
    return seq_owner_[seq];
  }

  /// max |B x - b|.
  double feasibility_error(std::span<const double> x) const;

 private:
  friend TreePlex build_treeplex(const Game& game, int player);

  int player_ = 0;
  std::int32_t num_sequences_ = 0;
  std::vector<InfosetRecord> infosets_;
  std::vector<std::int32_t> infoset_index_;
  std::vector<std::int32_t> seq_owner_;
  SparseMatrix b_matrix_;
  std::vector<double> b_rhs_;
};

/// Enumerates sequences and infosets of `player` in topological order and
/// assembles B, b. Throws if the player does not have perfect recall.
TreePlex build_treeplex(const Game& game, int player);

/// Own sequence id of the given player at every node (forward pass).
std::vector<std::int32_t> node_sequences(const Game& game, const TreePlex& tp);

/// Realization-plan vector for one player. Entries lie in [0,1] and satisfy
/// B x = b for the owning treeplex.
struct SequenceStrategy {
  int player = 0;
  std::vector<double> x;
};

/// x(s) = product of behavior probabilities along s. `sigma[t]` is the
/// action distribution at treeplex infoset t. Distributions must sum to 1
/// within 1e-9.
SequenceStrategy behavior_to_sequence(
    const TreePlex& tp, const std::vector<std::vector<double>>& sigma);

/// Uniform behavior at every infoset.
SequenceStrategy uniform_strategy(const TreePlex& tp);

}  // namespace sfg

#endif  // SFG_TREEPLEX_HPP
