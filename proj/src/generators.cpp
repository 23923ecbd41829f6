#include "sfg/games/generators.hpp"

#include <cstdio>
#include <functional>
#include <stdexcept>
#include <unordered_map>

#include "sfg/games/game_io.hpp"

namespace sfg::games {

namespace {

std::string num_label(const char* prefix, long v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%ld", prefix, v);
  return buf;
}

}  // namespace

Game kuhn() {
  GameBuilder gb;
  const std::int32_t root = gb.add_node(-1, -1, kChance, -1);
  const std::int32_t a_check = gb.action_id("check");
  const std::int32_t a_bet = gb.action_id("bet");
  const std::int32_t a_fold = gb.action_id("fold");
  const std::int32_t a_call = gb.action_id("call");

  for (int c1 = 0; c1 < 3; ++c1) {
    const std::int32_t deal1 = gb.add_node(
        root, gb.action_id(num_label("card", c1)), kChance, -1, 1.0 / 3.0);
    for (int c2 = 0; c2 < 3; ++c2) {
      if (c2 == c1) continue;
      const std::int32_t deal2 = gb.add_node(
          deal1, gb.action_id(num_label("card", c2)), kChance, -1, 0.5);
      const double win = c1 > c2 ? 1.0 : -1.0;
      const std::int32_t p1 = gb.add_node(deal2, -1, 1, c1);
      {
        const std::int32_t p2 = gb.add_node(p1, a_check, 2, c2);
        gb.add_terminal(p2, a_check, win);  // pot 1 each
        const std::int32_t p1b = gb.add_node(p2, a_bet, 1, 3 + c1);
        gb.add_terminal(p1b, a_fold, -1.0);
        gb.add_terminal(p1b, a_call, 2.0 * win);
      }
      {
        const std::int32_t p2 = gb.add_node(p1, a_bet, 2, 3 + c2);
        gb.add_terminal(p2, a_fold, 1.0);
        gb.add_terminal(p2, a_call, 2.0 * win);
      }
    }
  }
  return gb.finish();
}

namespace {

// Betting-round states; player 1 acts first in every round. At most one bet
// and one raise per round.
enum class BetState {
  kP1Start,
  kP2AfterCheck,
  kP2AfterBet,
  kP1AfterCheckBet,
  kP1AfterBetRaise,
  kP2AfterCheckBetRaise,
};

constexpr int kActCheck = 0, kActBet = 1, kActFold = 2, kActCall = 3,
              kActRaise = 4;

struct LeducContext {
  GameBuilder* gb;
  std::int32_t act[5];
  std::unordered_map<std::int64_t, std::int32_t> infosets[2];
  double bet_size[2] = {2.0, 4.0};

  // Infosets are keyed by what the player can see: own rank, the board (or
  // none in round 1), the first-round line, and the betting state.
  std::int32_t infoset_id(int player, int round, int own_rank, int board,
                          int cont, BetState state) {
    const std::int64_t key =
        ((((static_cast<std::int64_t>(round) * 8 + static_cast<int>(state)) *
               4096 +
           own_rank) *
              4096 +
          (board + 1)) *
             8 +
         cont);
    auto& m = infosets[player - 1];
    auto [it, ins] = m.try_emplace(key, static_cast<std::int32_t>(m.size()));
    return it->second;
  }
};

// Emits the children of `parent`, a decision node in state `state` whose
// players have contributed pot1/pot2 so far. `on_continue(parent, action,
// cont_id, stake)` attaches the child that follows a completed round, where
// both players have matched at `stake`. Fold terminals are emitted here as
// +/- the folder's contribution.
void leduc_betting(
    LeducContext& ctx, std::int32_t parent, int round, int r1, int r2,
    int board, int cont_in, BetState state, double pot1, double pot2,
    const std::function<void(std::int32_t, std::int32_t, int, double)>&
        on_continue) {
  GameBuilder& gb = *ctx.gb;
  const double beta = ctx.bet_size[round];

  auto descend = [&](int action, BetState next, double p1c, double p2c) {
    const int next_actor = (next == BetState::kP1AfterCheckBet ||
                            next == BetState::kP1AfterBetRaise)
                               ? 1
                               : 2;
    const std::int32_t nid =
        gb.add_node(parent, ctx.act[action], next_actor,
                    ctx.infoset_id(next_actor, round,
                                   next_actor == 1 ? r1 : r2, board, cont_in,
                                   next));
    leduc_betting(ctx, nid, round, r1, r2, board, cont_in, next, p1c, p2c,
                  on_continue);
  };

  switch (state) {
    case BetState::kP1Start:
      descend(kActCheck, BetState::kP2AfterCheck, pot1, pot2);
      descend(kActBet, BetState::kP2AfterBet, pot1 + beta, pot2);
      break;
    case BetState::kP2AfterCheck:
      on_continue(parent, ctx.act[kActCheck], cont_in * 5 + 0, pot1);
      descend(kActBet, BetState::kP1AfterCheckBet, pot1, pot2 + beta);
      break;
    case BetState::kP2AfterBet:
      gb.add_terminal(parent, ctx.act[kActFold], pot2);  // P2 folds
      on_continue(parent, ctx.act[kActCall], cont_in * 5 + 1, pot1);
      descend(kActRaise, BetState::kP1AfterBetRaise, pot1, pot1 + beta);
      break;
    case BetState::kP1AfterCheckBet:
      gb.add_terminal(parent, ctx.act[kActFold], -pot1);  // P1 folds
      on_continue(parent, ctx.act[kActCall], cont_in * 5 + 2, pot2);
      descend(kActRaise, BetState::kP2AfterCheckBetRaise, pot2 + beta, pot2);
      break;
    case BetState::kP1AfterBetRaise:
      gb.add_terminal(parent, ctx.act[kActFold], -pot1);  // P1 folds
      on_continue(parent, ctx.act[kActCall], cont_in * 5 + 3, pot2);
      break;
    case BetState::kP2AfterCheckBetRaise:
      gb.add_terminal(parent, ctx.act[kActFold], pot2);  // P2 folds
      on_continue(parent, ctx.act[kActCall], cont_in * 5 + 4, pot1);
      break;
  }
}

}  // namespace

Game leduc(int ranks) {
  if (ranks < 3) throw std::invalid_argument("leduc: ranks must be >= 3");
  const int R = ranks;
  const int deck = 2 * R;
  GameBuilder gb;
  LeducContext ctx;
  ctx.gb = &gb;
  ctx.act[0] = gb.action_id("check");
  ctx.act[1] = gb.action_id("bet");
  ctx.act[2] = gb.action_id("fold");
  ctx.act[3] = gb.action_id("call");
  ctx.act[4] = gb.action_id("raise");

  const std::int32_t root = gb.add_node(-1, -1, kChance, -1);
  for (int r1 = 0; r1 < R; ++r1) {
    const std::int32_t d1 = gb.add_node(
        root, gb.action_id(num_label("card", r1)), kChance, -1, 2.0 / deck);
    for (int r2 = 0; r2 < R; ++r2) {
      const double copies2 = r2 == r1 ? 1.0 : 2.0;
      const std::int32_t d2 =
          gb.add_node(d1, gb.action_id(num_label("card", r2)), kChance, -1,
                      copies2 / (deck - 1));

      auto showdown = [r1, r2](int board, double stake) {
        // One community card, so at most one player can pair it.
        if (r1 == board) return stake;
        if (r2 == board) return -stake;
        if (r1 != r2) return r1 > r2 ? stake : -stake;
        return 0.0;
      };

      const std::int32_t p1 = gb.add_node(
          d2, -1, 1, ctx.infoset_id(1, 0, r1, -1, 0, BetState::kP1Start));
      leduc_betting(
          ctx, p1, 0, r1, r2, -1, 0, BetState::kP1Start, 1.0, 1.0,
          [&](std::int32_t node, std::int32_t action, int cont_id,
              double stake) {
            // Round 1 completed: deal the board, then round 2.
            const std::int32_t deal_board =
                gb.add_node(node, action, kChance, -1);
            for (int b = 0; b < R; ++b) {
              const double copies_b =
                  2.0 - (b == r1 ? 1.0 : 0.0) - (b == r2 ? 1.0 : 0.0);
              if (copies_b <= 0.0) continue;
              const std::int32_t bd = gb.add_node(
                  deal_board, gb.action_id(num_label("board", b)), kChance,
                  -1, copies_b / (deck - 2));
              const std::int32_t q1 = gb.add_node(
                  bd, -1, 1,
                  ctx.infoset_id(1, 1, r1, b, cont_id, BetState::kP1Start));
              leduc_betting(ctx, q1, 1, r1, r2, b, cont_id,
                            BetState::kP1Start, stake, stake,
                            [&](std::int32_t end_node, std::int32_t end_action,
                                int, double final_stake) {
                              gb.add_terminal(end_node, end_action,
                                              showdown(b, final_stake));
                            });
            }
          });
    }
  }
  return gb.finish();
}

Game sheriff(int max_items, int max_bribe) {
  if (max_items < 1 || max_bribe < 1) {
    throw std::invalid_argument("sheriff: N and B must be >= 1");
  }
  GameBuilder gb;
  const std::int32_t a_inspect = gb.action_id("inspect");
  const std::int32_t a_pass = gb.action_id("pass");
  const std::int32_t root = gb.add_node(-1, -1, 1, 0);  // smuggler picks n
  for (int n = 0; n <= max_items; ++n) {
    const std::int32_t pick_b =
        gb.add_node(root, gb.action_id(num_label("n=", n)), 1, 1 + n);
    for (int b = 0; b <= max_bribe; ++b) {
      const std::int32_t sheriff_node =
          gb.add_node(pick_b, gb.action_id(num_label("b=", b)), 2, b);
      gb.add_terminal(sheriff_node, a_inspect, n == 0 ? 3.0 : -2.0 * n);
      // Zero-sum score difference: the bribe transfers to the sheriff, so
      // it counts twice against the smuggler when the cargo passes.
      gb.add_terminal(sheriff_node, a_pass, static_cast<double>(n - 2 * b));
    }
  }
  return gb.finish();
}

Game goofspiel(int ranks) {
  if (ranks < 2) throw std::invalid_argument("goofspiel: ranks must be >= 2");
  const int r = ranks;
  GameBuilder gb;
  const std::int32_t root = gb.add_node(-1, -1, kChance, -1);
  std::unordered_map<std::string, std::int32_t> infosets[2];
  auto infoset_id = [&](int player, const std::string& view) {
    auto& m = infosets[player - 1];
    auto [it, ins] = m.try_emplace(view, static_cast<std::int32_t>(m.size()));
    return it->second;
  };

  // Hands and remaining prizes as bitmasks; card i is worth i+1 points.
  std::function<void(std::int32_t, unsigned, unsigned, unsigned, int,
                     const std::string&, const std::string&)>
      play = [&](std::int32_t parent, unsigned hand1, unsigned hand2,
                 unsigned prizes, int diff, const std::string& view1,
                 const std::string& view2) {
        const int remaining = __builtin_popcount(prizes);
        for (int p = 0; p < r; ++p) {
          if (!(prizes & (1u << p))) continue;
          const std::int32_t reveal =
              gb.add_node(parent, gb.action_id(num_label("p", p + 1)), kChance,
                          -1, 1.0 / remaining);
          const std::string pv1 = view1 + "|p" + std::to_string(p + 1);
          const std::string pv2 = view2 + "|p" + std::to_string(p + 1);
          const std::int32_t n1 = gb.add_node(reveal, -1, 1, infoset_id(1, pv1));
          for (int b1 = 0; b1 < r; ++b1) {
            if (!(hand1 & (1u << b1))) continue;
            const std::int32_t n2 =
                gb.add_node(n1, gb.action_id(num_label("bid", b1 + 1)), 2,
                            infoset_id(2, pv2));
            for (int b2 = 0; b2 < r; ++b2) {
              if (!(hand2 & (1u << b2))) continue;
              const int delta = b1 > b2 ? (p + 1) : (b2 > b1 ? -(p + 1) : 0);
              const std::int32_t a2 = gb.action_id(num_label("bid", b2 + 1));
              if (prizes == (1u << p)) {
                // Final round: the game ends after these forced bids.
                gb.add_terminal(n2, a2, static_cast<double>(diff + delta));
              } else {
                const std::int32_t after = gb.add_node(n2, a2, kChance, -1);
                // Bids become public at the end of the round.
                play(after, hand1 & ~(1u << b1), hand2 & ~(1u << b2),
                     prizes & ~(1u << p), diff + delta,
                     pv1 + "b" + std::to_string(b1 + 1) + "s" +
                         std::to_string(b2 + 1),
                     pv2 + "b" + std::to_string(b2 + 1) + "s" +
                         std::to_string(b1 + 1));
              }
            }
          }
        }
      };

  const unsigned full = (1u << r) - 1;
  play(root, full, full, full, 0, "", "");
  return gb.finish();
}

Game matching_pennies() {
  GameBuilder gb;
  const std::int32_t heads = gb.action_id("heads");
  const std::int32_t tails = gb.action_id("tails");
  const std::int32_t root = gb.add_node(-1, -1, 1, 0);
  for (int a1 = 0; a1 < 2; ++a1) {
    const std::int32_t p2 = gb.add_node(root, a1 == 0 ? heads : tails, 2, 0);
    for (int a2 = 0; a2 < 2; ++a2) {
      gb.add_terminal(p2, a2 == 0 ? heads : tails, a1 == a2 ? 1.0 : -1.0);
    }
  }
  return gb.finish();
}

Game rock_paper_scissors() {
  GameBuilder gb;
  const char* names[3] = {"rock", "paper", "scissors"};
  const std::int32_t root = gb.add_node(-1, -1, 1, 0);
  for (int a1 = 0; a1 < 3; ++a1) {
    const std::int32_t p2 = gb.add_node(root, gb.action_id(names[a1]), 2, 0);
    for (int a2 = 0; a2 < 3; ++a2) {
      double u = 0.0;
      if (a1 != a2) u = ((a1 - a2 + 3) % 3 == 1) ? 1.0 : -1.0;
      gb.add_terminal(p2, gb.action_id(names[a2]), u);
    }
  }
  return gb.finish();
}

GameSpec GameSpec::parse(const std::string& token) {
  GameSpec spec;
  auto starts_with = [&](const char* p) { return token.rfind(p, 0) == 0; };
  try {
    if (token == "kuhn") {
      spec.family = Family::kKuhn;
    } else if (token == "pennies" || token == "matching-pennies") {
      spec.family = Family::kPennies;
    } else if (token == "rps") {
      spec.family = Family::kRps;
    } else if (starts_with("leduc")) {
      spec.family = Family::kLeduc;
      spec.ranks = std::stoi(token.substr(5));
    } else if (starts_with("goofspiel")) {
      spec.family = Family::kGoofspiel;
      spec.ranks = std::stoi(token.substr(9));
    } else if (starts_with("sheriff:")) {
      spec.family = Family::kSheriff;
      const std::string rest = token.substr(8);
      const auto comma = rest.find(',');
      if (comma == std::string::npos) {
        throw std::invalid_argument("want sheriff:<N>,<B>");
      }
      spec.max_items = std::stoi(rest.substr(0, comma));
      spec.max_bribe = std::stoi(rest.substr(comma + 1));
    } else {
      spec.family = Family::kFile;
      spec.path = token;
    }
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("cannot parse game spec '" + token + "'");
  }
  return spec;
}

Game GameSpec::build() const {
  switch (family) {
    case Family::kKuhn: return kuhn();
    case Family::kPennies: return matching_pennies();
    case Family::kRps: return rock_paper_scissors();
    case Family::kLeduc: return leduc(ranks);
    case Family::kGoofspiel: return goofspiel(ranks);
    case Family::kSheriff: return sheriff(max_items, max_bribe);
    case Family::kFile: return load_game(path);
  }
  throw std::logic_error("unreachable");
}

std::string GameSpec::name() const {
  switch (family) {
    case Family::kKuhn: return "kuhn";
    case Family::kPennies: return "pennies";
    case Family::kRps: return "rps";
    case Family::kLeduc: return "leduc" + std::to_string(ranks);
    case Family::kGoofspiel: return "goofspiel" + std::to_string(ranks);
    case Family::kSheriff:
      return "sheriff:" + std::to_string(max_items) + "," +
             std::to_string(max_bribe);
    case Family::kFile: return path;
  }
  return "?";
}

}  // namespace sfg::games
