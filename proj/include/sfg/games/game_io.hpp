#ifndef SFG_GAMES_GAME_IO_HPP
#define SFG_GAMES_GAME_IO_HPP

#include <iosfwd>
#include <string>

#include "sfg/game.hpp"

namespace sfg::games {

/// Line-based textual game format (see README for the grammar):
///   players 2
///   node <id> player=<0|1|2> parent=<id|-> action=<label> [infoset=<id>]
///        [chance=<p>]
///   leaf <id> parent=<id> action=<label> u1=<float> [chance=<p>]
/// Nodes appear parents-first; `chance` is the probability of the incoming
/// edge when the parent is a chance node. Saving a loaded file reproduces
/// it byte for byte.
void save_game(const Game& game, std::ostream& os);
void save_game(const Game& game, const std::string& path);

Game load_game(std::istream& is);
Game load_game(const std::string& path);

}  // namespace sfg::games

#endif  // SFG_GAMES_GAME_IO_HPP
