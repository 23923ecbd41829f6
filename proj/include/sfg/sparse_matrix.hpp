#ifndef SFG_SPARSE_MATRIX_HPP
#define SFG_SPARSE_MATRIX_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace sfg {

/// Magnitude below which a computed residual entry counts as zero.
/// Payoff matrices hold exact rationals scaled by a single division, so
/// anything this small is cancellation noise, not data.
inline constexpr double kZeroTol = 1e-12;

struct Triplet {
  std::int32_t row;
  std::int32_t col;
  double value;
};

/// One stored entry of a sparse row or column.
struct Entry {
  std::int32_t index;  // column index in a row, row index in a column
  double value;
};

/// Immutable sparse matrix holding both row-major and column-major forms,
/// so that rows and columns can each be streamed in O(nnz of that line).
/// Duplicate triplets are summed at construction; exact-zero sums are
/// dropped. No explicit zeros are ever stored.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::int32_t rows, std::int32_t cols,
               std::vector<Triplet> triplets);

  std::int32_t rows() const { return rows_; }
  std::int32_t cols() const { return cols_; }
  std::int64_t nnz() const { return static_cast<std::int64_t>(row_data_.size()); }

  /// Entries of row i, sorted by column index.
  std::span<const Entry> row(std::int32_t i) const;
  /// Entries of column j, sorted by row index.
  std::span<const Entry> col(std::int32_t j) const;

  /// Largest entry magnitude (0 for an empty matrix).
  double max_abs() const;

  /// All entries in row-major order.
  std::vector<Triplet> triplets() const;

  /// Scales every entry by s in place.
  void scale(double s);

  bool operator==(const SparseMatrix& other) const;

 private:
  std::int32_t rows_ = 0;
  std::int32_t cols_ = 0;
  std::vector<std::int64_t> row_ptr_;  // size rows_+1
  std::vector<std::int64_t> col_ptr_;  // size cols_+1
  std::vector<Entry> row_data_;
  std::vector<Entry> col_data_;
};

/// Builds the transpose.
SparseMatrix transpose(const SparseMatrix& a);

}  // namespace sfg

#endif  // SFG_SPARSE_MATRIX_HPP
