#ifndef SFG_LP_MODEL_HPP
#define SFG_LP_MODEL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sfg/factorizer.hpp"
#include "sfg/residual_view.hpp"
#include "sfg/sparse_matrix.hpp"

namespace sfg::lp {

/// The sequence-form equilibrium LP
///   max c^T z   s.t.  B x = b,  C^T z <= V w + Ahat^T x,  U^T x = w,  x >= 0
/// with z and w free. Without factors the payoff block is A itself and the
/// w constraints vanish.
struct GameLP {
  SparseMatrix b_mat;  // player-x sequence constraints (rows x |S_x|)
  std::vector<double> b_vec;
  SparseMatrix c_mat;  // player-y sequence constraints (rows x |S_y|)
  std::vector<double> c_vec;
  SparseMatrix payoff_residual;  // Ahat, shape |S_x| x |S_y|
  FactorColumns factor_u;        // |S_x| x r (empty when unfactored)
  FactorColumns factor_v;        // |S_y| x r

  std::int32_t num_x() const { return b_mat.cols(); }
  std::int32_t num_z() const { return c_mat.rows(); }
  std::int32_t num_w() const { return factor_u.num_cols(); }
  std::int64_t constraint_nnz() const;
};

/// Exact unfactored formulation.
GameLP build_lp(const SparseMatrix& a, const SparseMatrix& b_mat,
                std::vector<double> b_vec, const SparseMatrix& c_mat,
                std::vector<double> c_vec);

/// Factored formulation with one auxiliary w per factor column. When
/// `verify_against` is given, refuses to build unless residual + U V^T
/// reproduces it within 1e-10 * max|A|.
GameLP build_factored_lp(const Factorization& f, const SparseMatrix& b_mat,
                         std::vector<double> b_vec, const SparseMatrix& c_mat,
                         std::vector<double> c_vec,
                         const SparseMatrix* verify_against = nullptr);

enum class Orientation { kPrimal, kDual };

enum class VarKind : std::int8_t { kX, kZPos, kZNeg, kWPos, kWNeg };
enum class RowKind : std::int8_t { kBUpper, kBLower, kPayoff, kWUpper, kWLower };

/// Provenance of one standard-form column or row. For the primal
/// orientation, columns carry VarKind and rows carry RowKind; the dual
/// orientation transposes the roles.
struct Label {
  bool is_var;
  std::int8_t kind;
  std::int32_t index;

  static Label var(VarKind k, std::int32_t i) {
    return {true, static_cast<std::int8_t>(k), i};
  }
  static Label row(RowKind k, std::int32_t i) {
    return {false, static_cast<std::int8_t>(k), i};
  }
  bool operator==(const Label&) const = default;
};

/// min c^T x  s.t.  A x <= b,  x >= 0, with the mapping back to GameLP
/// variables and constraint blocks. The player-1 game value equals
/// value_sign times the optimal objective.
struct StandardFormLP {
  SparseMatrix a;
  std::vector<double> b;
  std::vector<double> c;
  std::vector<Label> col_labels;
  std::vector<Label> row_labels;
  Orientation orientation = Orientation::kPrimal;
  double value_sign = -1.0;
};

/// Converts to inequality standard form: equalities split into two
/// inequality blocks, free variables into differences of nonnegative pairs.
/// The dual orientation emits min b^T y s.t. -A^T y <= c, y >= 0 built from
/// the primal form, so the other player plays the primal role.
StandardFormLP to_standard_form(const GameLP& lp, Orientation orientation);

/// Triplet text for the constraint matrix plus a JSON sidecar with rhs,
/// objective, labels, and orientation.
void export_standard_form(const StandardFormLP& std_lp,
                          const std::string& matrix_path,
                          const std::string& sidecar_path);

}  // namespace sfg::lp

#endif  // SFG_LP_MODEL_HPP
