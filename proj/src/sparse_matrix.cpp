#include "sfg/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sfg {

SparseMatrix::SparseMatrix(std::int32_t rows, std::int32_t cols,
                           std::vector<Triplet> triplets)
    : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) {
    throw std::invalid_argument("SparseMatrix: negative dimension");
  }
  for (const Triplet& t : triplets) {
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols) {
      throw std::invalid_argument("SparseMatrix: triplet index out of range (" +
                                  std::to_string(t.row) + "," +
                                  std::to_string(t.col) + ")");
    }
  }
  std::sort(triplets.begin(), triplets.end(),
            [](const Triplet& a, const Triplet& b) {
              return a.row != b.row ? a.row < b.row : a.col < b.col;
            });

  // Sum duplicates, drop exact zeros.
  row_data_.reserve(triplets.size());
  std::vector<Triplet> merged;
  merged.reserve(triplets.size());
  for (std::size_t k = 0; k < triplets.size();) {
    std::int32_t r = triplets[k].row, c = triplets[k].col;
    double sum = 0.0;
    while (k < triplets.size() && triplets[k].row == r && triplets[k].col == c) {
      sum += triplets[k].value;
      ++k;
    }
    if (sum != 0.0) merged.push_back({r, c, sum});
  }

  row_ptr_.assign(static_cast<std::size_t>(rows_) + 1, 0);
  for (const Triplet& t : merged) row_ptr_[static_cast<std::size_t>(t.row) + 1]++;
  for (std::int32_t i = 0; i < rows_; ++i) row_ptr_[i + 1] += row_ptr_[i];
  row_data_.resize(merged.size());
  {
    std::vector<std::int64_t> next(row_ptr_.begin(), row_ptr_.end() - 1);
    for (const Triplet& t : merged) {
      row_data_[static_cast<std::size_t>(next[t.row]++)] = {t.col, t.value};
    }
  }

  col_ptr_.assign(static_cast<std::size_t>(cols_) + 1, 0);
  for (const Triplet& t : merged) col_ptr_[static_cast<std::size_t>(t.col) + 1]++;
  for (std::int32_t j = 0; j < cols_; ++j) col_ptr_[j + 1] += col_ptr_[j];
  col_data_.resize(merged.size());
  {
    std::vector<std::int64_t> next(col_ptr_.begin(), col_ptr_.end() - 1);
    // merged is row-major, so each column receives its rows in order.
    for (const Triplet& t : merged) {
      col_data_[static_cast<std::size_t>(next[t.col]++)] = {t.row, t.value};
    }
  }
}

std::span<const Entry> SparseMatrix::row(std::int32_t i) const {
  if (i < 0 || i >= rows_) {
    throw std::out_of_range("SparseMatrix::row: index " + std::to_string(i));
  }
  return {row_data_.data() + row_ptr_[i],
          static_cast<std::size_t>(row_ptr_[i + 1] - row_ptr_[i])};
}

std::span<const Entry> SparseMatrix::col(std::int32_t j) const {
  if (j < 0 || j >= cols_) {
    throw std::out_of_range("SparseMatrix::col: index " + std::to_string(j));
  }
  return {col_data_.data() + col_ptr_[j],
          static_cast<std::size_t>(col_ptr_[j + 1] - col_ptr_[j])};
}

double SparseMatrix::max_abs() const {
  double m = 0.0;
  for (const Entry& e : row_data_) m = std::max(m, std::abs(e.value));
  return m;
}

std::vector<Triplet> SparseMatrix::triplets() const {
  std::vector<Triplet> out;
  out.reserve(row_data_.size());
  for (std::int32_t i = 0; i < rows_; ++i) {
    for (const Entry& e : row(i)) out.push_back({i, e.index, e.value});
  }
  return out;
}

void SparseMatrix::scale(double s) {
  for (Entry& e : row_data_) e.value *= s;
  for (Entry& e : col_data_) e.value *= s;
}

bool SparseMatrix::operator==(const SparseMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) return false;
  if (row_ptr_ != other.row_ptr_) return false;
  if (row_data_.size() != other.row_data_.size()) return false;
  for (std::size_t k = 0; k < row_data_.size(); ++k) {
    if (row_data_[k].index != other.row_data_[k].index ||
        row_data_[k].value != other.row_data_[k].value) {
      return false;
    }
  }
  return true;
}

SparseMatrix transpose(const SparseMatrix& a) {
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(a.nnz()));
  for (const Triplet& e : a.triplets()) t.push_back({e.col, e.row, e.value});
  return SparseMatrix(a.cols(), a.rows(), std::move(t));
}

}  // namespace sfg
