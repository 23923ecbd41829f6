#include "sfg/lp/model.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "sfg/matrix_io.hpp"

namespace sfg::lp {

std::int64_t GameLP::constraint_nnz() const {
  return b_mat.nnz() + c_mat.nnz() + payoff_residual.nnz() + factor_u.nnz() +
         factor_v.nnz() + num_w();
}

namespace {

void check_game_lp_shapes(const SparseMatrix& payoff, const SparseMatrix& b_mat,
                          const std::vector<double>& b_vec,
                          const SparseMatrix& c_mat,
                          const std::vector<double>& c_vec) {
  if (b_mat.cols() != payoff.rows() || c_mat.cols() != payoff.cols()) {
    throw std::invalid_argument("game LP: payoff/constraint shape mismatch");
  }
  if (static_cast<std::int32_t>(b_vec.size()) != b_mat.rows() ||
      static_cast<std::int32_t>(c_vec.size()) != c_mat.rows()) {
    throw std::invalid_argument("game LP: rhs length mismatch");
  }
}

}  // namespace

GameLP build_lp(const SparseMatrix& a, const SparseMatrix& b_mat,
                std::vector<double> b_vec, const SparseMatrix& c_mat,
                std::vector<double> c_vec) {
  check_game_lp_shapes(a, b_mat, b_vec, c_mat, c_vec);
  GameLP lp;
  lp.b_mat = b_mat;
  lp.b_vec = std::move(b_vec);
  lp.c_mat = c_mat;
  lp.c_vec = std::move(c_vec);
  lp.payoff_residual = a;
  lp.factor_u = FactorColumns(a.rows());
  lp.factor_v = FactorColumns(a.cols());
  return lp;
}

GameLP build_factored_lp(const Factorization& f, const SparseMatrix& b_mat,
                         std::vector<double> b_vec, const SparseMatrix& c_mat,
                         std::vector<double> c_vec,
                         const SparseMatrix* verify_against) {
  check_game_lp_shapes(f.residual, b_mat, b_vec, c_mat, c_vec);
  if (verify_against != nullptr) {
    const double err = reconstruction_error(*verify_against, f);
    if (err > 1e-10 * std::max(1.0, verify_against->max_abs())) {
      throw std::runtime_error(
          "build_factored_lp: factorization does not reproduce the payoff "
          "matrix (error " +
          std::to_string(err) + ")");
    }
  }
  GameLP lp;
  lp.b_mat = b_mat;
  lp.b_vec = std::move(b_vec);
  lp.c_mat = c_mat;
  lp.c_vec = std::move(c_vec);
  lp.payoff_residual = f.residual;
  lp.factor_u = f.u;
  lp.factor_v = f.v;
  return lp;
}

StandardFormLP to_standard_form(const GameLP& lp, Orientation orientation) {
  const std::int32_t nx = lp.num_x();
  const std::int32_t nz = lp.num_z();
  const std::int32_t nw = lp.num_w();
  const std::int32_t ny = lp.payoff_residual.cols();  // payoff rows = |S_y|
  const std::int32_t mb = lp.b_mat.rows();

  // Column layout: x | z+ | z- | w+ | w-.
  const std::int32_t col_x = 0;
  const std::int32_t col_zp = nx;
  const std::int32_t col_zn = nx + nz;
  const std::int32_t col_wp = nx + 2 * nz;
  const std::int32_t col_wn = nx + 2 * nz + nw;
  const std::int32_t num_cols = nx + 2 * nz + 2 * nw;

  // Row layout: Bx<=b | -Bx<=-b | payoff | U^T x - w <= 0 | w - U^T x <= 0.
  const std::int32_t row_bu = 0;
  const std::int32_t row_bl = mb;
  const std::int32_t row_pay = 2 * mb;
  const std::int32_t row_wu = 2 * mb + ny;
  const std::int32_t row_wl = 2 * mb + ny + nw;
  const std::int32_t num_rows = 2 * mb + ny + 2 * nw;

  std::vector<Triplet> trips;
  trips.reserve(static_cast<std::size_t>(2 * lp.b_mat.nnz() +
                                         2 * lp.c_mat.nnz() +
                                         lp.payoff_residual.nnz() +
                                         2 * lp.factor_v.nnz() +
                                         2 * lp.factor_u.nnz() + 4 * nw));
  for (const Triplet& t : lp.b_mat.triplets()) {
    trips.push_back({row_bu + t.row, col_x + t.col, t.value});
    trips.push_back({row_bl + t.row, col_x + t.col, -t.value});
  }
  // Payoff rows, one per y-player sequence: C^T z - Ahat^T x - V w <= 0.
  for (const Triplet& t : lp.c_mat.triplets()) {
    trips.push_back({row_pay + t.col, col_zp + t.row, t.value});
    trips.push_back({row_pay + t.col, col_zn + t.row, -t.value});
  }
  for (const Triplet& t : lp.payoff_residual.triplets()) {
    trips.push_back({row_pay + t.col, col_x + t.row, -t.value});
  }
  for (const Triplet& t : lp.factor_v.triplets()) {
    trips.push_back({row_pay + t.row, col_wp + t.col, -t.value});
    trips.push_back({row_pay + t.row, col_wn + t.col, t.value});
  }
  for (const Triplet& t : lp.factor_u.triplets()) {
    trips.push_back({row_wu + t.col, col_x + t.row, t.value});
    trips.push_back({row_wl + t.col, col_x + t.row, -t.value});
  }
  for (std::int32_t k = 0; k < nw; ++k) {
    trips.push_back({row_wu + k, col_wp + k, -1.0});
    trips.push_back({row_wu + k, col_wn + k, 1.0});
    trips.push_back({row_wl + k, col_wp + k, 1.0});
    trips.push_back({row_wl + k, col_wn + k, -1.0});
  }

  StandardFormLP out;
  out.a = SparseMatrix(num_rows, num_cols, std::move(trips));
  out.b.assign(num_rows, 0.0);
  for (std::int32_t r = 0; r < mb; ++r) {
    out.b[row_bu + r] = lp.b_vec[r];
    out.b[row_bl + r] = -lp.b_vec[r];
  }
  out.c.assign(num_cols, 0.0);
  for (std::int32_t t = 0; t < nz; ++t) {
    out.c[col_zp + t] = -lp.c_vec[t];  // max c^T z -> min -c^T z
    out.c[col_zn + t] = lp.c_vec[t];
  }

  out.col_labels.reserve(num_cols);
  for (std::int32_t i = 0; i < nx; ++i)
    out.col_labels.push_back(Label::var(VarKind::kX, i));
  for (std::int32_t t = 0; t < nz; ++t)
    out.col_labels.push_back(Label::var(VarKind::kZPos, t));
  for (std::int32_t t = 0; t < nz; ++t)
    out.col_labels.push_back(Label::var(VarKind::kZNeg, t));
  for (std::int32_t k = 0; k < nw; ++k)
    out.col_labels.push_back(Label::var(VarKind::kWPos, k));
  for (std::int32_t k = 0; k < nw; ++k)
    out.col_labels.push_back(Label::var(VarKind::kWNeg, k));

  out.row_labels.reserve(num_rows);
  for (std::int32_t r = 0; r < mb; ++r)
    out.row_labels.push_back(Label::row(RowKind::kBUpper, r));
  for (std::int32_t r = 0; r < mb; ++r)
    out.row_labels.push_back(Label::row(RowKind::kBLower, r));
  for (std::int32_t s = 0; s < ny; ++s)
    out.row_labels.push_back(Label::row(RowKind::kPayoff, s));
  for (std::int32_t k = 0; k < nw; ++k)
    out.row_labels.push_back(Label::row(RowKind::kWUpper, k));
  for (std::int32_t k = 0; k < nw; ++k)
    out.row_labels.push_back(Label::row(RowKind::kWLower, k));

  out.orientation = Orientation::kPrimal;
  out.value_sign = -1.0;

  if (orientation == Orientation::kPrimal) return out;

  // Dual of min c^T x s.t. Ax <= b, x >= 0, written in the same standard
  // shape: min b^T y s.t. -A^T y <= c, y >= 0. Columns now correspond to
  // primal rows and vice versa; optima flip sign.
  StandardFormLP dual;
  SparseMatrix at = transpose(out.a);
  dual.a = std::move(at);
  dual.a.scale(-1.0);
  dual.b = out.c;
  dual.c = out.b;
  dual.col_labels = out.row_labels;
  dual.row_labels = out.col_labels;
  dual.orientation = Orientation::kDual;
  dual.value_sign = 1.0;
  return dual;
}

void export_standard_form(const StandardFormLP& std_lp,
                          const std::string& matrix_path,
                          const std::string& sidecar_path) {
  write_matrix_file(matrix_path, std_lp.a);

  nlohmann::json j;
  j["orientation"] =
      std_lp.orientation == Orientation::kPrimal ? "primal" : "dual";
  j["value_sign"] = std_lp.value_sign;
  j["rhs"] = std_lp.b;
  j["objective"] = std_lp.c;
  auto label_json = [](const Label& l) {
    static const char* var_names[] = {"x", "z+", "z-", "w+", "w-"};
    static const char* row_names[] = {"Bx<=b", "-Bx<=-b", "payoff",
                                      "Ux-w<=0", "w-Ux<=0"};
    nlohmann::json e;
    e["block"] = l.is_var ? var_names[l.kind] : row_names[l.kind];
    e["index"] = l.index;
    return e;
  };
  nlohmann::json cols = nlohmann::json::array();
  for (const Label& l : std_lp.col_labels) cols.push_back(label_json(l));
  nlohmann::json rows = nlohmann::json::array();
  for (const Label& l : std_lp.row_labels) rows.push_back(label_json(l));
  j["columns"] = std::move(cols);
  j["rows"] = std::move(rows);

  std::ofstream os(sidecar_path);
  if (!os) throw std::runtime_error("cannot open for writing: " + sidecar_path);
  os << j.dump(1) << '\n';
}

}  // namespace sfg::lp
