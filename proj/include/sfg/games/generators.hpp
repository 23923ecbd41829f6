#ifndef SFG_GAMES_GENERATORS_HPP
#define SFG_GAMES_GENERATORS_HPP

#include <string>

#include "sfg/game.hpp"

namespace sfg::games {

/// Three-card Kuhn poker, ante 1, bet 1.
Game kuhn();

/// Leduc-family poker with `ranks` distinct ranks (two suits each, deck of
/// 2*ranks cards). One private card per player, one community card after the
/// first betting round. Two betting rounds with fixed bet sizes 2 and 4 and
/// at most one bet plus one raise per round; player 1 acts first in both.
/// Infosets are keyed by rank (suits are interchangeable).
Game leduc(int ranks);

/// Zero-sum Sheriff: the smuggler (player 1) privately picks a number of
/// illegal items n in [0,N], then a public bribe b in [0,B]; the sheriff
/// sees only the bribe and inspects or passes. Utilities are score
/// differences: pass gives n - 2b (the bribe changes hands), inspect gives
/// +3 on empty cargo and -2n otherwise.
Game sheriff(int max_items, int max_bribe);

/// Goofspiel with `ranks` cards per hand. The prize order is uniformly
/// random and each prize is revealed before bidding; bids are simultaneous
/// and revealed at the end of the round; the highest bid takes the prize and
/// ties split it. Utility is the final point differential. The forced last
/// round is played out explicitly.
Game goofspiel(int ranks);

/// Matching pennies as a depth-1 EFG (payoffs +1 match / -1 mismatch).
Game matching_pennies();

/// Rock-paper-scissors as a depth-1 EFG.
Game rock_paper_scissors();

/// Parsed game selector for the CLI: "kuhn", "pennies", "rps",
/// "leduc<R>", "goofspiel<r>", "sheriff:<N>,<B>", or a game file path.
struct GameSpec {
  enum class Family { kKuhn, kLeduc, kSheriff, kGoofspiel, kPennies, kRps, kFile };
  Family family = Family::kKuhn;
  int ranks = 0;
  int max_items = 0;
  int max_bribe = 0;
  std::string path;

  static GameSpec parse(const std::string& token);
  Game build() const;
  std::string name() const;
};

}  // namespace sfg::games

#endif  // SFG_GAMES_GENERATORS_HPP
