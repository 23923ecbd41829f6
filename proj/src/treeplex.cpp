#include "sfg/treeplex.hpp"

#include <cmath>
#include <stdexcept>

namespace sfg {

double TreePlex::feasibility_error(std::span<const double> x) const {
  if (static_cast<std::int32_t>(x.size()) != num_sequences_) {
    throw std::invalid_argument("feasibility_error: wrong vector length");
  }
  double worst = std::abs(x[0] - 1.0);
  for (const InfosetRecord& rec : infosets_) {
    double sum = -x[rec.parent_seq];
    for (std::int32_t a = 0; a < rec.num_actions; ++a) {
      sum += x[rec.first_seq + a];
    }
    worst = std::max(worst, std::abs(sum));
  }
  return worst;
}

TreePlex build_treeplex(const Game& game, int player) {
  if (player != 1 && player != 2) {
    throw std::invalid_argument("build_treeplex: player must be 1 or 2");
  }
  RecallViolation rv = validate_perfect_recall(game);
  if (!rv.ok) {
    throw std::runtime_error("build_treeplex: " + rv.message);
  }

  TreePlex tp;
  tp.player_ = player;
  tp.infoset_index_.assign(game.num_infosets(player), -1);

  // Forward pass in node order (parents first). Each node carries its own
  // sequence; the first node of an infoset fixes the infoset's position.
  std::vector<std::int32_t> seq_at(game.num_nodes(), 0);
  tp.num_sequences_ = 1;  // empty sequence
  tp.seq_owner_.push_back(-1);

  for (std::size_t id = 0; id < game.num_nodes(); ++id) {
    const GameNode& nd = game.node(id);
    if (nd.terminal) continue;
    std::int32_t child_seq_base = -1;
    if (nd.player == player) {
      std::int32_t t = tp.infoset_index_[nd.infoset];
      if (t == -1) {
        t = static_cast<std::int32_t>(tp.infosets_.size());
        tp.infoset_index_[nd.infoset] = t;
        InfosetRecord rec;
        rec.parent_seq = seq_at[id];
        rec.first_seq = tp.num_sequences_;
        rec.num_actions = 0;
        for (std::int32_t c = nd.first_child; c != -1;
             c = game.node(c).next_sibling) {
          ++rec.num_actions;
        }
        tp.num_sequences_ += rec.num_actions;
        rec.game_infoset = nd.infoset;
        tp.infosets_.push_back(rec);
        for (std::int32_t a = 0; a < rec.num_actions; ++a) {
          tp.seq_owner_.push_back(t);
        }
      } else if (tp.infosets_[t].parent_seq != seq_at[id]) {
        // validate_perfect_recall interns (parent seq, infoset, action), so
        // this cannot trigger; kept as an internal guard.
        throw std::runtime_error("treeplex: infoset parent sequence mismatch");
      }
      child_seq_base = tp.infosets_[tp.infoset_index_[nd.infoset]].first_seq;
    }
    std::int32_t pos = 0;
    for (std::int32_t c = nd.first_child; c != -1;
         c = game.node(c).next_sibling, ++pos) {
      seq_at[c] = (nd.player == player) ? child_seq_base + pos : seq_at[id];
    }
  }

  // B: row 0 pins the empty sequence; row 1+t links infoset t's children to
  // its parent sequence. Every sequence appears in at most two rows.
  std::vector<Triplet> trips;
  trips.reserve(2 * static_cast<std::size_t>(tp.num_sequences_));
  trips.push_back({0, 0, 1.0});
  for (std::int32_t t = 0; t < tp.num_infosets(); ++t) {
    const InfosetRecord& rec = tp.infosets_[t];
    trips.push_back({t + 1, rec.parent_seq, -1.0});
    for (std::int32_t a = 0; a < rec.num_actions; ++a) {
      trips.push_back({t + 1, rec.first_seq + a, 1.0});
    }
  }
  tp.b_matrix_ =
      SparseMatrix(tp.num_infosets() + 1, tp.num_sequences_, std::move(trips));
  tp.b_rhs_.assign(tp.num_infosets() + 1, 0.0);
  tp.b_rhs_[0] = 1.0;
  return tp;
}

std::vector<std::int32_t> node_sequences(const Game& game, const TreePlex& tp) {
  std::vector<std::int32_t> seq_at(game.num_nodes(), 0);
  for (std::size_t id = 0; id < game.num_nodes(); ++id) {
    const GameNode& nd = game.node(id);
    if (nd.terminal) continue;
    std::int32_t base = -1;
    if (nd.player == tp.player()) {
      base = tp.infosets()[tp.infoset_index(nd.infoset)].first_seq;
    }
    std::int32_t pos = 0;
    for (std::int32_t c = nd.first_child; c != -1;
         c = game.node(c).next_sibling, ++pos) {
      seq_at[c] = (base >= 0) ? base + pos : seq_at[id];
    }
  }
  return seq_at;
}

SequenceStrategy behavior_to_sequence(
    const TreePlex& tp, const std::vector<std::vector<double>>& sigma) {
  if (sigma.size() != static_cast<std::size_t>(tp.num_infosets())) {
    throw std::invalid_argument("behavior_to_sequence: wrong infoset count");
  }
  SequenceStrategy s;
  s.player = tp.player();
  s.x.assign(tp.num_sequences(), 0.0);
  s.x[0] = 1.0;
  for (std::int32_t t = 0; t < tp.num_infosets(); ++t) {
    const InfosetRecord& rec = tp.infosets()[t];
    const std::vector<double>& dist = sigma[t];
    if (static_cast<std::int32_t>(dist.size()) != rec.num_actions) {
      throw std::invalid_argument("behavior_to_sequence: wrong action count");
    }
    double sum = 0.0;
    for (double p : dist) {
      if (p < 0.0) throw std::invalid_argument("negative action probability");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw std::invalid_argument("action distribution does not sum to 1");
    }
    for (std::int32_t a = 0; a < rec.num_actions; ++a) {
      s.x[rec.first_seq + a] = s.x[rec.parent_seq] * dist[a];
    }
  }
  return s;
}

SequenceStrategy uniform_strategy(const TreePlex& tp) {
  std::vector<std::vector<double>> sigma;
  sigma.reserve(tp.num_infosets());
  for (const InfosetRecord& rec : tp.infosets()) {
    sigma.emplace_back(rec.num_actions, 1.0 / rec.num_actions);
  }
  return behavior_to_sequence(tp, sigma);
}

}  // namespace sfg
