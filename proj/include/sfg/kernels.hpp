#ifndef SFG_KERNELS_HPP
#define SFG_KERNELS_HPP

#include <span>

#include "sfg/sparse_matrix.hpp"

namespace sfg::kernels {

// Sparse matrix-vector products. Each output element is one independent dot
// product over a stored row or column, so the OpenMP variants produce
// bit-identical results to the serial references for any thread count.

/// y = A x, serial reference.
void spmv_serial(const SparseMatrix& a, std::span<const double> x,
                 std::span<double> y);

/// y = A^T x, serial reference.
void spmv_t_serial(const SparseMatrix& a, std::span<const double> x,
                   std::span<double> y);

/// y = A x, one OpenMP thread per chunk of rows.
void spmv_omp(const SparseMatrix& a, std::span<const double> x,
              std::span<double> y);

/// y = A^T x, one OpenMP thread per chunk of columns.
void spmv_t_omp(const SparseMatrix& a, std::span<const double> x,
                std::span<double> y);

/// Dispatch: OpenMP path when it is compiled in and more than one thread is
/// available, serial otherwise. Results are identical either way.
void spmv(const SparseMatrix& a, std::span<const double> x,
          std::span<double> y);
void spmv_t(const SparseMatrix& a, std::span<const double> x,
            std::span<double> y);

/// Number of threads the OpenMP kernels would use (1 without OpenMP).
int max_threads();

}  // namespace sfg::kernels

#endif  // SFG_KERNELS_HPP
