#ifndef SFG_MATRIX_IO_HPP
#define SFG_MATRIX_IO_HPP

#include <iosfwd>
#include <string>

#include "sfg/sparse_matrix.hpp"

namespace sfg {

/// Triplet text format: first line "m n nnz", then one "i j value" line per
/// entry, 0-indexed. Values are printed with enough digits to round-trip.
void write_matrix(std::ostream& os, const SparseMatrix& a);
void write_matrix_file(const std::string& path, const SparseMatrix& a);

SparseMatrix read_matrix(std::istream& is);
SparseMatrix read_matrix_file(const std::string& path);

/// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double v);

}  // namespace sfg

#endif  // SFG_MATRIX_IO_HPP
