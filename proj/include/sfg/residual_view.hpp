#ifndef SFG_RESIDUAL_VIEW_HPP
#define SFG_RESIDUAL_VIEW_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "sfg/sparse_matrix.hpp"

namespace sfg {

/// Sparse vector with entries sorted by index. No explicit zeros.
struct SparseVector {
  std::vector<Entry> entries;

  std::size_t nnz() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
};

/// A growing collection of sparse columns (an m x r matrix stored by
/// column), with a per-row index so the nonzero columns of any row can be
/// walked in column order. Columns are append-only.
class FactorColumns {
 public:
  explicit FactorColumns(std::int32_t dim = 0) : dim_(dim), row_index_(dim) {}

  std::int32_t dim() const { return dim_; }
  std::int32_t num_cols() const { return static_cast<std::int32_t>(cols_.size()); }
  std::int64_t nnz() const { return nnz_; }

  const SparseVector& col(std::int32_t k) const { return cols_[k]; }
  /// (column k, value) pairs of row i, ascending in k.
  std::span<const Entry> row(std::int32_t i) const { return row_index_[i]; }

  void append(SparseVector column);

  std::vector<Triplet> triplets() const;

 private:
  std::int32_t dim_ = 0;
  std::int64_t nnz_ = 0;
  std::vector<SparseVector> cols_;
  std::vector<std::vector<Entry>> row_index_;
};

/// Reusable workspace for residual row/column queries.
class ResidualScratch {
 public:
  void reset(std::int32_t dim);
  double& at(std::int32_t idx) {
    if (stamp_[idx] != epoch_) {
      stamp_[idx] = epoch_;
      value_[idx] = 0.0;
      touched_.push_back(idx);
    }
    return value_[idx];
  }
  std::vector<std::int32_t>& touched() { return touched_; }
  std::vector<Entry>& out() { return out_; }

 private:
  std::vector<double> value_;
  std::vector<std::int32_t> stamp_;
  std::vector<std::int32_t> touched_;
  std::vector<Entry> out_;
  std::int32_t epoch_ = 0;
};

/// Read-only view of A - U V^T that never materializes the difference and
/// never touches A. Rows and columns are computed on demand; an entry is
/// reported only if its magnitude exceeds kZeroTol.
class ResidualView {
 public:
  ResidualView(const SparseMatrix& base, std::int32_t num_factor_cols_hint = 0);

  std::int32_t rows() const { return base_->rows(); }
  std::int32_t cols() const { return base_->cols(); }

  const SparseMatrix& base() const { return *base_; }
  const FactorColumns& u() const { return u_; }
  const FactorColumns& v() const { return v_; }

  /// Installs one more rank-1 term u v^T.
  void append_factor(SparseVector u_col, SparseVector v_col);

  /// Entries of row i of A - U V^T, sorted by column, |value| > kZeroTol.
  /// The returned span lives in `scratch` until its next use.
  std::span<const Entry> row(std::int32_t i, ResidualScratch& scratch) const;
  std::span<const Entry> col(std::int32_t j, ResidualScratch& scratch) const;

 private:
  const SparseMatrix* base_;
  FactorColumns u_;  // m x r
  FactorColumns v_;  // n x r
};

/// result = Ahat^T x + V (U^T x), i.e. (Ahat + U V^T)^T x without forming
/// the product. Cost O(nnz(Ahat) + nnz(U) + nnz(V)).
std::vector<double> matvec_factored(const SparseMatrix& ahat,
                                    const FactorColumns& u,
                                    const FactorColumns& v,
                                    std::span<const double> x);

/// result = Ahat y + U (V^T y), the forward product (Ahat + U V^T) y.
std::vector<double> matvec_factored_fwd(const SparseMatrix& ahat,
                                        const FactorColumns& u,
                                        const FactorColumns& v,
                                        std::span<const double> y);

}  // namespace sfg

#endif  // SFG_RESIDUAL_VIEW_HPP
