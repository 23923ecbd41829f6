#ifndef SFG_PAYOFF_HPP
#define SFG_PAYOFF_HPP

#include "sfg/game.hpp"
#include "sfg/sparse_matrix.hpp"
#include "sfg/treeplex.hpp"

namespace sfg {

/// Player 1's payoff over sequence pairs: entry (i,j) is the chance-weighted
/// sum of u1 over terminals whose player sequences are (i,j). `scale` keeps
/// the max-abs entry of the unnormalized matrix; when the matrix was
/// normalized, multiply values by `scale` to recover original units.
struct PayoffMatrix {
  SparseMatrix a;     // |S_1| x |S_2|
  double scale = 1.0;
  bool normalized = false;
};

/// Assembles A from the terminals. Duplicate (i,j) contributions are summed
/// and exact-zero sums dropped. If `normalize`, divides by the max-abs entry
/// so the result has unit infinity-norm.
PayoffMatrix build_payoff_matrix(const Game& game, const TreePlex& tp1,
                                 const TreePlex& tp2, bool normalize);

}  // namespace sfg

#endif  // SFG_PAYOFF_HPP
