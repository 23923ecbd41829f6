#include "sfg/matrix_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sfg {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  }
  return std::string(buf, ptr);
}

void write_matrix(std::ostream& os, const SparseMatrix& a) {
  os << a.rows() << ' ' << a.cols() << ' ' << a.nnz() << '\n';
  for (std::int32_t i = 0; i < a.rows(); ++i) {
    for (const Entry& e : a.row(i)) {
      os << i << ' ' << e.index << ' ' << format_double(e.value) << '\n';
    }
  }
}

void write_matrix_file(const std::string& path, const SparseMatrix& a) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_matrix(os, a);
  if (!os) throw std::runtime_error("write failed: " + path);
}

SparseMatrix read_matrix(std::istream& is) {
  std::int64_t m = -1, n = -1, nnz = -1;
  if (!(is >> m >> n >> nnz) || m < 0 || n < 0 || nnz < 0) {
    throw std::runtime_error("matrix header malformed (want: m n nnz)");
  }
  std::vector<Triplet> trips;
  trips.reserve(static_cast<std::size_t>(nnz));
  for (std::int64_t k = 0; k < nnz; ++k) {
    std::int64_t i, j;
    double v;
    if (!(is >> i >> j >> v)) {
      throw std::runtime_error("matrix entry " + std::to_string(k) +
                               " malformed or missing");
    }
    trips.push_back({static_cast<std::int32_t>(i), static_cast<std::int32_t>(j), v});
  }
  return SparseMatrix(static_cast<std::int32_t>(m), static_cast<std::int32_t>(n),
                      std::move(trips));
}

SparseMatrix read_matrix_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open: " + path);
  return read_matrix(is);
}

}  // namespace sfg
