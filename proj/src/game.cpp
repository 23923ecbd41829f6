#include "sfg/game.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace sfg {

std::vector<std::int32_t> Game::children(std::int32_t id) const {
  std::vector<std::int32_t> out;
  for (std::int32_t c = nodes_[id].first_child; c != -1;
       c = nodes_[c].next_sibling) {
    out.push_back(c);
  }
  return out;
}

void Game::validate_structure() const {
  if (nodes_.empty()) throw std::runtime_error("game has no nodes");
  if (nodes_[0].parent != -1) throw std::runtime_error("node 0 is not a root");

  // Infoset consistency: identical ordered action lists within an infoset.
  std::unordered_map<std::int64_t, std::vector<std::int32_t>> infoset_actions;
  for (std::size_t id = 0; id < nodes_.size(); ++id) {
    const GameNode& nd = nodes_[id];
    if (nd.parent >= static_cast<std::int32_t>(id)) {
      throw std::runtime_error("parent does not precede node " +
                               std::to_string(id));
    }
    if (nd.terminal) {
      if (nd.first_child != -1) {
        throw std::runtime_error("terminal node " + std::to_string(id) +
                                 " has children");
      }
      continue;
    }
    std::vector<std::int32_t> acts;
    double prob_sum = 0.0;
    for (std::int32_t c = nd.first_child; c != -1; c = nodes_[c].next_sibling) {
      acts.push_back(nodes_[c].action);
      prob_sum += nodes_[c].chance_prob;
      if (nd.player == kChance && nodes_[c].chance_prob < 0.0) {
        throw std::runtime_error("negative chance probability under node " +
                                 std::to_string(id));
      }
    }
    if (acts.empty()) {
      throw std::runtime_error("non-terminal node " + std::to_string(id) +
                               " has no actions");
    }
    if (nd.player == kChance) {
      if (std::abs(prob_sum - 1.0) > 1e-12) {
        throw std::runtime_error("chance node " + std::to_string(id) +
                                 " probabilities sum to " +
                                 std::to_string(prob_sum));
      }
    } else {
      if (nd.infoset < 0) {
        throw std::runtime_error("decision node " + std::to_string(id) +
                                 " has no infoset");
      }
      const std::int64_t key =
          (static_cast<std::int64_t>(nd.player) << 32) | nd.infoset;
      auto [it, inserted] = infoset_actions.try_emplace(key, acts);
      if (!inserted && it->second != acts) {
        throw std::runtime_error("infoset " + std::to_string(nd.infoset) +
                                 " of player " + std::to_string(nd.player) +
                                 " has inconsistent action sets");
      }
    }
  }
}

GameBuilder::GameBuilder() {
  GameNode root;
  root.player = kChance;  // caller overwrites via add_node for the real root
  game_.nodes_.clear();
}

std::int32_t GameBuilder::action_id(const std::string& name) {
  auto [it, inserted] = name_ids_.try_emplace(
      name, static_cast<std::int32_t>(game_.action_names_.size()));
  if (inserted) game_.action_names_.push_back(name);
  return it->second;
}

std::int32_t GameBuilder::link(std::int32_t parent, GameNode node) {
  node.parent = parent;
  const std::int32_t id = static_cast<std::int32_t>(game_.nodes_.size());
  game_.nodes_.push_back(node);
  last_child_.push_back(-1);
  if (parent >= 0) {
    if (last_child_[parent] == -1) {
      game_.nodes_[parent].first_child = id;
    } else {
      game_.nodes_[last_child_[parent]].next_sibling = id;
    }
    last_child_[parent] = id;
  }
  return id;
}

std::int32_t GameBuilder::add_node(std::int32_t parent, std::int32_t action,
                                   int player, std::int32_t infoset,
                                   double chance_prob) {
  GameNode nd;
  nd.player = static_cast<std::int8_t>(player);
  nd.action = action;
  nd.infoset = infoset;
  nd.chance_prob = chance_prob;
  if (player != kChance && infoset < 0) {
    throw std::invalid_argument("decision node needs an infoset");
  }
  return link(parent, nd);
}

std::int32_t GameBuilder::add_terminal(std::int32_t parent, std::int32_t action,
                                       double utility, double chance_prob) {
  GameNode nd;
  nd.terminal = true;
  nd.action = action;
  nd.utility = utility;
  nd.chance_prob = chance_prob;
  return link(parent, nd);
}

Game GameBuilder::finish() {
  std::int32_t max_is[2] = {-1, -1};
  std::int64_t terminals = 0;
  for (const GameNode& nd : game_.nodes_) {
    if (nd.terminal) {
      ++terminals;
    } else if (nd.player == 1 || nd.player == 2) {
      max_is[nd.player - 1] = std::max(max_is[nd.player - 1], nd.infoset);
    }
  }
  game_.num_infosets_[0] = max_is[0] + 1;
  game_.num_infosets_[1] = max_is[1] + 1;
  game_.num_terminals_ = terminals;
  game_.validate_structure();
  return std::move(game_);
}

RecallViolation validate_perfect_recall(const Game& game) {
  // Own-sequence signature per node and player, built in one forward pass.
  // Signatures are interned so comparing two nodes is an integer compare.
  const std::size_t n = game.num_nodes();
  std::vector<std::int32_t> sig[2];
  sig[0].assign(n, 0);
  sig[1].assign(n, 0);
  // Intern table: (parent signature, infoset, action) -> id.
  std::map<std::tuple<std::int32_t, std::int32_t, std::int32_t>, std::int32_t>
      intern[2];

  for (std::size_t id = 1; id < n; ++id) {
    const GameNode& nd = game.node(id);
    const GameNode& par = game.node(nd.parent);
    for (int p = 1; p <= 2; ++p) {
      if (par.player == p) {
        auto key = std::make_tuple(sig[p - 1][nd.parent], par.infoset, nd.action);
        auto [it, ins] = intern[p - 1].try_emplace(
            key, static_cast<std::int32_t>(intern[p - 1].size()) + 1);
        sig[p - 1][id] = it->second;
      } else {
        sig[p - 1][id] = sig[p - 1][nd.parent];
      }
    }
  }

  // All nodes of an infoset must share the player's signature.
  std::unordered_map<std::int64_t, std::pair<std::int32_t, std::int32_t>> seen;
  for (std::size_t id = 0; id < n; ++id) {
    const GameNode& nd = game.node(id);
    if (nd.terminal || nd.player == kChance) continue;
    const int p = nd.player;
    const std::int64_t key = (static_cast<std::int64_t>(p) << 32) | nd.infoset;
    auto [it, inserted] = seen.try_emplace(
        key, std::make_pair(static_cast<std::int32_t>(id), sig[p - 1][id]));
    if (!inserted && it->second.second != sig[p - 1][id]) {
      RecallViolation v;
      v.ok = false;
      v.player = p;
      v.infoset = nd.infoset;
      v.node_a = it->second.first;
      v.node_b = static_cast<std::int32_t>(id);
      v.message = "player " + std::to_string(p) + " infoset " +
                  std::to_string(nd.infoset) + ": nodes " +
                  std::to_string(v.node_a) + " and " + std::to_string(v.node_b) +
                  " are reached by different own-action sequences";
      return v;
    }
  }
  return {};
}

}  // namespace sfg
