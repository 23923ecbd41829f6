#include "sfg/residual_view.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sfg/kernels.hpp"

namespace sfg {

void FactorColumns::append(SparseVector column) {
  const std::int32_t k = num_cols();
  for (const Entry& e : column.entries) {
    if (e.index < 0 || e.index >= dim_) {
      throw std::invalid_argument("FactorColumns::append: index out of range");
    }
    row_index_[e.index].push_back({k, e.value});
  }
  nnz_ += static_cast<std::int64_t>(column.entries.size());
  cols_.push_back(std::move(column));
}

std::vector<Triplet> FactorColumns::triplets() const {
  std::vector<Triplet> out;
  out.reserve(static_cast<std::size_t>(nnz_));
  for (std::int32_t k = 0; k < num_cols(); ++k) {
    for (const Entry& e : cols_[k].entries) out.push_back({e.index, k, e.value});
  }
  return out;
}

void ResidualScratch::reset(std::int32_t dim) {
  if (static_cast<std::int32_t>(value_.size()) < dim) {
    value_.resize(dim, 0.0);
    stamp_.resize(dim, 0);
  }
  ++epoch_;
  touched_.clear();
}

ResidualView::ResidualView(const SparseMatrix& base, std::int32_t)
    : base_(&base), u_(base.rows()), v_(base.cols()) {}

void ResidualView::append_factor(SparseVector u_col, SparseVector v_col) {
  u_.append(std::move(u_col));
  v_.append(std::move(v_col));
}

namespace {

// Accumulates base line minus the rank-1 corrections in column order, then
// emits surviving entries sorted by index. The per-entry arithmetic order
// (base value first, factor columns by ascending k) is the contract that
// keeps explicit and implicit factorization bit-identical.
std::span<const Entry> residual_line(std::span<const Entry> base_line,
                                     std::span<const Entry> own_factor_row,
                                     const FactorColumns& other,
                                     std::int32_t other_dim,
                                     ResidualScratch& scratch) {
  scratch.reset(other_dim);
  for (const Entry& e : base_line) scratch.at(e.index) = e.value;
  for (const Entry& f : own_factor_row) {
    const double coef = f.value;
    for (const Entry& o : other.col(f.index).entries) {
      scratch.at(o.index) -= coef * o.value;
    }
  }
  std::vector<std::int32_t>& touched = scratch.touched();
  std::sort(touched.begin(), touched.end());
  std::vector<Entry>& out = scratch.out();
  out.clear();
  for (std::int32_t idx : touched) {
    const double v = scratch.at(idx);
    if (std::abs(v) > kZeroTol) out.push_back({idx, v});
  }
  return {out.data(), out.size()};
}

}  // namespace

std::span<const Entry> ResidualView::row(std::int32_t i,
                                         ResidualScratch& scratch) const {
  return residual_line(base_->row(i), u_.row(i), v_, cols(), scratch);
}

std::span<const Entry> ResidualView::col(std::int32_t j,
                                         ResidualScratch& scratch) const {
  return residual_line(base_->col(j), v_.row(j), u_, rows(), scratch);
}

std::vector<double> matvec_factored(const SparseMatrix& ahat,
                                    const FactorColumns& u,
                                    const FactorColumns& v,
                                    std::span<const double> x) {
  if (static_cast<std::int32_t>(x.size()) != ahat.rows() ||
      u.dim() != ahat.rows() || v.dim() != ahat.cols() ||
      u.num_cols() != v.num_cols()) {
    throw std::invalid_argument("matvec_factored: shape mismatch");
  }
  std::vector<double> y(ahat.cols(), 0.0);
  kernels::spmv_t(ahat, x, y);
  for (std::int32_t k = 0; k < u.num_cols(); ++k) {
    double w = 0.0;
    for (const Entry& e : u.col(k).entries) w += e.value * x[e.index];
    for (const Entry& e : v.col(k).entries) y[e.index] += e.value * w;
  }
  return y;
}

std::vector<double> matvec_factored_fwd(const SparseMatrix& ahat,
                                        const FactorColumns& u,
                                        const FactorColumns& v,
                                        std::span<const double> y) {
  if (static_cast<std::int32_t>(y.size()) != ahat.cols() ||
      u.dim() != ahat.rows() || v.dim() != ahat.cols() ||
      u.num_cols() != v.num_cols()) {
    throw std::invalid_argument("matvec_factored_fwd: shape mismatch");
  }
  std::vector<double> x(ahat.rows(), 0.0);
  kernels::spmv(ahat, y, x);
  for (std::int32_t k = 0; k < v.num_cols(); ++k) {
    double w = 0.0;
    for (const Entry& e : v.col(k).entries) w += e.value * y[e.index];
    for (const Entry& e : u.col(k).entries) x[e.index] += e.value * w;
  }
  return x;
}

}  // namespace sfg
