#include "sfg/kernels.hpp"

#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sfg::kernels {

namespace {

void check_sizes(const SparseMatrix& a, std::size_t nx, std::size_t ny,
                 bool transposed) {
  std::size_t want_x = transposed ? a.rows() : a.cols();
  std::size_t want_y = transposed ? a.cols() : a.rows();
  if (nx != want_x || ny != want_y) {
    throw std::invalid_argument("spmv: shape mismatch");
  }
}

inline double dot_line(std::span<const Entry> line, const double* x) {
  double acc = 0.0;
  for (const Entry& e : line) acc += e.value * x[e.index];
  return acc;
}

}  // namespace

void spmv_serial(const SparseMatrix& a, std::span<const double> x,
                 std::span<double> y) {
  check_sizes(a, x.size(), y.size(), false);
  for (std::int32_t i = 0; i < a.rows(); ++i) y[i] = dot_line(a.row(i), x.data());
}

void spmv_t_serial(const SparseMatrix& a, std::span<const double> x,
                   std::span<double> y) {
  check_sizes(a, x.size(), y.size(), true);
  for (std::int32_t j = 0; j < a.cols(); ++j) y[j] = dot_line(a.col(j), x.data());
}

void spmv_omp(const SparseMatrix& a, std::span<const double> x,
              std::span<double> y) {
  check_sizes(a, x.size(), y.size(), false);
  const std::int32_t m = a.rows();
#pragma omp parallel for schedule(static)
  for (std::int32_t i = 0; i < m; ++i) y[i] = dot_line(a.row(i), x.data());
}

void spmv_t_omp(const SparseMatrix& a, std::span<const double> x,
                std::span<double> y) {
  check_sizes(a, x.size(), y.size(), true);
  const std::int32_t n = a.cols();
#pragma omp parallel for schedule(static)
  for (std::int32_t j = 0; j < n; ++j) y[j] = dot_line(a.col(j), x.data());
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void spmv(const SparseMatrix& a, std::span<const double> x,
          std::span<double> y) {
  if (max_threads() > 1) {
    spmv_omp(a, x, y);
  } else {
    spmv_serial(a, x, y);
  }
}

void spmv_t(const SparseMatrix& a, std::span<const double> x,
            std::span<double> y) {
  if (max_threads() > 1) {
    spmv_t_omp(a, x, y);
  } else {
    spmv_t_serial(a, x, y);
  }
}

}  // namespace sfg::kernels
