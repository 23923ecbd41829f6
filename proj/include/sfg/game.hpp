#ifndef SFG_GAME_HPP
#define SFG_GAME_HPP

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace sfg {

inline constexpr int kChance = 0;

/// One node of the game tree. Children are kept as a sibling chain in
/// insertion order. `action` names the incoming edge; `chance_prob` is the
/// probability of that edge when the parent is a chance node.
struct GameNode {
  std::int32_t parent = -1;
  std::int32_t first_child = -1;
  std::int32_t next_sibling = -1;
  std::int32_t infoset = -1;  // for player 1/2 decision nodes
  std::int32_t action = -1;   // id into Game::action_names(), -1 at the root
  double chance_prob = 1.0;
  double utility = 0.0;  // player 1 utility at terminals (u2 = -u1)
  std::int8_t player = -1;  // 0 chance, 1, 2; -1 terminal
  bool terminal = false;
};

/// Two-player zero-sum extensive-form game with chance. Node 0 is the root
/// and parents always precede children. Infoset ids are dense per player.
class Game {
 public:
  std::size_t num_nodes() const { return nodes_.size(); }
  const GameNode& node(std::int32_t id) const { return nodes_[id]; }

  std::int32_t num_infosets(int player) const {
    return num_infosets_[player - 1];
  }
  std::int64_t num_terminals() const { return num_terminals_; }

  const std::string& action_name(std::int32_t id) const {
    return action_names_[id];
  }
  std::int32_t num_action_names() const {
    return static_cast<std::int32_t>(action_names_.size());
  }

  /// Children of `id` in insertion order.
  std::vector<std::int32_t> children(std::int32_t id) const;

  /// Structural checks: tree shape, infoset action-set consistency, chance
  /// distributions summing to 1 within 1e-12. Throws on violation.
  void validate_structure() const;

 private:
  friend class GameBuilder;

  std::vector<GameNode> nodes_;
  std::vector<std::string> action_names_;
  std::int32_t num_infosets_[2] = {0, 0};
  std::int64_t num_terminals_ = 0;
};

/// Incremental tree construction for the generators and the loader.
class GameBuilder {
 public:
  GameBuilder();

  std::int32_t action_id(const std::string& name);

  /// Adds a decision or chance node. `infoset` is required for players 1,2
  /// and ignored for chance. Returns the node id.
  std::int32_t add_node(std::int32_t parent, std::int32_t action, int player,
                        std::int32_t infoset, double chance_prob = 1.0);
  std::int32_t add_terminal(std::int32_t parent, std::int32_t action,
                            double utility, double chance_prob = 1.0);

  /// Finalizes: computes infoset counts and runs validate_structure().
  Game finish();

 private:
  std::int32_t link(std::int32_t parent, GameNode node);

  Game game_;
  std::vector<std::int32_t> last_child_;
  std::unordered_map<std::string, std::int32_t> name_ids_;
};

struct RecallViolation {
  bool ok = true;
  int player = 0;
  std::int32_t infoset = -1;
  std::int32_t node_a = -1, node_b = -1;
  std::string message;
};

/// Checks perfect recall for both strategic players: every node of an
/// infoset must be reached by the same own-action sequence. Returns the
/// first violation found, or ok.
RecallViolation validate_perfect_recall(const Game& game);

}  // namespace sfg

#endif  // SFG_GAME_HPP
