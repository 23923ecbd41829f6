#ifndef SFG_FACTORIZER_HPP
#define SFG_FACTORIZER_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sfg/residual_view.hpp"
#include "sfg/rng.hpp"
#include "sfg/sparse_matrix.hpp"

namespace sfg {

struct FactorConfig {
  std::uint64_t seed = 0;
  /// Work through the immutable row/column oracle instead of a mutable
  /// working copy. Output is bit-identical to explicit mode.
  bool implicit_mode = false;
};

struct FactorStats {
  std::int64_t successes = 0;     // accepted rank-1 columns
  std::int64_t failures = 0;      // rejected candidates
  std::int64_t alternations = 0;  // full v-step + u-step rounds
  double wall_seconds = 0.0;
};

/// Result of the greedy sparse factorization: A = residual + U V^T with
/// nnz(U) + nnz(V) + nnz(residual) <= nnz(A).
struct Factorization {
  std::int32_t rows = 0;
  std::int32_t cols = 0;
  FactorColumns u;        // rows x r
  FactorColumns v;        // cols x r
  SparseMatrix residual;  // what remains of A
  FactorStats stats;

  std::int32_t rank() const { return u.num_cols(); }
  std::int64_t fnnz() const { return u.nnz() + v.nnz() + residual.nnz(); }
};

/// Rank-1 subproblem: for fixed u, the v minimizing ||R - u v^T||_0 where R
/// is the current residual. For every column j touched by u's support,
/// v_j is the most frequent quotient R_ij/u_i if that frequency beats
/// leaving the column alone, else 0. Quotients equal within a relative
/// 1e-9 share a bucket; ties pick the smallest value.
SparseVector factor_subproblem(const ResidualView& view, const SparseVector& u);

struct Rank1Result {
  SparseVector u, v;
  std::int64_t objective = 0;  // ||R - u v^T||_0
  std::int64_t alternations = 0;
};

/// Alternating minimization started from a random basis vector e_i (i drawn
/// uniformly over rows with residual support), stopping when a full
/// alternation fails to reduce the 0-norm objective.
Rank1Result factor_rank1(const ResidualView& view, Rng& rng);

/// Greedy outer loop: repeatedly extracts rank-1 candidates, accepting one
/// only if both factors have more than one nonzero and total stored nonzeros
/// strictly decrease; stops once rejected candidates outnumber accepted
/// ones. Verifies the reconstruction before returning.
Factorization factorize(const SparseMatrix& a, const FactorConfig& config = {});

/// max |(residual + U V^T) - A| over all positions.
double reconstruction_error(const SparseMatrix& a, const Factorization& f);

struct BlockLocalityReport {
  bool ok = true;
  std::int32_t bad_column = -1;
  std::string message;
};

/// Test harness for block-diagonal inputs: checks that every accepted
/// factor column has row and column support inside a single block.
/// `row_splits`/`col_splits` give block boundaries as in {0, k1, k2, ..., m}.
BlockLocalityReport check_block_locality(const Factorization& f,
                                         const std::vector<std::int32_t>& row_splits,
                                         const std::vector<std::int32_t>& col_splits);

/// Factorization file: header "m n r nnzU nnzV nnzR", then triplet sections
/// labeled U, V, R.
void write_factorization(std::ostream& os, const Factorization& f);
void write_factorization_file(const std::string& path, const Factorization& f);
Factorization read_factorization(std::istream& is);
Factorization read_factorization_file(const std::string& path);

}  // namespace sfg

#endif  // SFG_FACTORIZER_HPP
