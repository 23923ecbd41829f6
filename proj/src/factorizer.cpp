#include "sfg/factorizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "sfg/matrix_io.hpp"

namespace sfg {

namespace {

/// Quotients within this relative distance land in the same mode bucket.
constexpr double kQuotientRelTol = 1e-9;

/// Residual access shared by the explicit (mutable working copy) and
/// implicit (immutable oracle) modes. Queries filter |value| <= kZeroTol.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual std::int32_t rows() const = 0;
  virtual std::int32_t cols() const = 0;
  virtual std::span<const Entry> row(std::int32_t i, ResidualScratch&) const = 0;
  virtual std::span<const Entry> col(std::int32_t j, ResidualScratch&) const = 0;
  virtual void commit(const SparseVector& u, const SparseVector& v) = 0;
  virtual std::vector<Triplet> residual_triplets(ResidualScratch&) const = 0;
};

class ImplicitBackend final : public Backend {
 public:
  explicit ImplicitBackend(const SparseMatrix& a) : view_(a) {}

  std::int32_t rows() const override { return view_.rows(); }
  std::int32_t cols() const override { return view_.cols(); }
  std::span<const Entry> row(std::int32_t i, ResidualScratch& s) const override {
    return view_.row(i, s);
  }
  std::span<const Entry> col(std::int32_t j, ResidualScratch& s) const override {
    return view_.col(j, s);
  }
  void commit(const SparseVector& u, const SparseVector& v) override {
    view_.append_factor(u, v);
  }
  std::vector<Triplet> residual_triplets(ResidualScratch& s) const override {
    std::vector<Triplet> out;
    for (std::int32_t i = 0; i < rows(); ++i) {
      for (const Entry& e : view_.row(i, s)) out.push_back({i, e.index, e.value});
    }
    return out;
  }

 private:
  ResidualView view_;
};

// Mutable working copy. Raw values are kept even below the zero threshold
// so the arithmetic matches the implicit lazy evaluation bit for bit; the
// zero filter applies only at query time.
class ExplicitBackend final : public Backend {
 public:
  explicit ExplicitBackend(const SparseMatrix& a)
      : rows_data_(a.rows()), cols_data_(a.cols()) {
    for (std::int32_t i = 0; i < a.rows(); ++i) {
      auto r = a.row(i);
      rows_data_[i].assign(r.begin(), r.end());
    }
    for (std::int32_t j = 0; j < a.cols(); ++j) {
      auto c = a.col(j);
      cols_data_[j].assign(c.begin(), c.end());
    }
  }

  std::int32_t rows() const override {
    return static_cast<std::int32_t>(rows_data_.size());
  }
  std::int32_t cols() const override {
    return static_cast<std::int32_t>(cols_data_.size());
  }
  std::span<const Entry> row(std::int32_t i, ResidualScratch& s) const override {
    return filter(rows_data_[i], s);
  }
  std::span<const Entry> col(std::int32_t j, ResidualScratch& s) const override {
    return filter(cols_data_[j], s);
  }

  void commit(const SparseVector& u, const SparseVector& v) override {
    for (const Entry& e : u.entries) {
      subtract_scaled(rows_data_[e.index], v.entries, e.value, /*row_major=*/true);
    }
    for (const Entry& e : v.entries) {
      subtract_scaled(cols_data_[e.index], u.entries, e.value, /*row_major=*/false);
    }
  }

  std::vector<Triplet> residual_triplets(ResidualScratch&) const override {
    std::vector<Triplet> out;
    for (std::int32_t i = 0; i < rows(); ++i) {
      for (const Entry& e : rows_data_[i]) {
        if (std::abs(e.value) > kZeroTol) out.push_back({i, e.index, e.value});
      }
    }
    return out;
  }

 private:
  static std::span<const Entry> filter(const std::vector<Entry>& line,
                                       ResidualScratch& s) {
    std::vector<Entry>& out = s.out();
    out.clear();
    for (const Entry& e : line) {
      if (std::abs(e.value) > kZeroTol) out.push_back(e);
    }
    return {out.data(), out.size()};
  }

  // line -= coef * other, merging sorted entry lists. A missing entry
  // starts from literal 0.0, exactly like the lazy evaluation; exact-zero
  // results are dropped from storage (recreating them later from 0.0 is
  // bitwise the same arithmetic).
  static void subtract_scaled(std::vector<Entry>& line,
                              const std::vector<Entry>& other, double coef,
                              bool row_major) {
    std::vector<Entry> out;
    out.reserve(line.size() + other.size());
    std::size_t a = 0, b = 0;
    while (a < line.size() || b < other.size()) {
      if (b == other.size() ||
          (a < line.size() && line[a].index < other[b].index)) {
        out.push_back(line[a++]);
      } else {
        // Keep the u*v operand order of the row update in both directions.
        const double prod = row_major ? coef * other[b].value
                                      : other[b].value * coef;
        if (a < line.size() && line[a].index == other[b].index) {
          const double v = line[a].value - prod;
          if (v != 0.0) out.push_back({line[a].index, v});
          ++a;
        } else {
          const double v = 0.0 - prod;
          if (v != 0.0) out.push_back({other[b].index, v});
        }
        ++b;
      }
    }
    line = std::move(out);
  }

  std::vector<std::vector<Entry>> rows_data_;
  std::vector<std::vector<Entry>> cols_data_;
};

/// Read-only adapter so the public per-step entry points run the exact code
/// the driver does.
class ViewBackend final : public Backend {
 public:
  explicit ViewBackend(const ResidualView& v) : v_(v) {}
  std::int32_t rows() const override { return v_.rows(); }
  std::int32_t cols() const override { return v_.cols(); }
  std::span<const Entry> row(std::int32_t i, ResidualScratch& s) const override {
    return v_.row(i, s);
  }
  std::span<const Entry> col(std::int32_t j, ResidualScratch& s) const override {
    return v_.col(j, s);
  }
  void commit(const SparseVector&, const SparseVector&) override {
    throw std::logic_error("read-only backend");
  }
  std::vector<Triplet> residual_triplets(ResidualScratch&) const override {
    throw std::logic_error("read-only backend");
  }

 private:
  const ResidualView& v_;
};

/// One mode step of the alternating minimization. With `solve_for_v`,
/// `fixed` is u and quotients R_ij/u_i are grouped per column j; otherwise
/// the transposed problem is solved.
SparseVector mode_step(const Backend& backend, const SparseVector& fixed,
                       bool solve_for_v, ResidualScratch& scratch) {
  if (fixed.empty()) {
    throw std::invalid_argument("factor subproblem: fixed vector is zero");
  }
  std::vector<std::pair<std::int32_t, double>> quotients;
  for (const Entry& f : fixed.entries) {
    const auto line = solve_for_v ? backend.row(f.index, scratch)
                                  : backend.col(f.index, scratch);
    for (const Entry& e : line) {
      quotients.emplace_back(e.index, e.value / f.value);
    }
  }
  std::sort(quotients.begin(), quotients.end());

  const std::int64_t fixed_nnz = static_cast<std::int64_t>(fixed.nnz());
  SparseVector result;
  std::size_t g = 0;
  while (g < quotients.size()) {
    std::size_t g_end = g;
    const std::int32_t idx = quotients[g].first;
    while (g_end < quotients.size() && quotients[g_end].first == idx) ++g_end;
    const std::int64_t len = static_cast<std::int64_t>(g_end - g);

    // Mode over the sorted quotient run; a bucket is a maximal run of
    // values within relative tolerance of its first (smallest) element.
    // Ties keep the earlier, i.e. smaller, value.
    std::int64_t best_count = 0;
    double best_value = 0.0;
    std::size_t s = g;
    while (s < g_end) {
      const double anchor = quotients[s].second;
      std::size_t k = s + 1;
      while (k < g_end) {
        const double q = quotients[k].second;
        if (std::abs(q - anchor) >
            kQuotientRelTol * std::max(std::abs(q), std::abs(anchor))) {
          break;
        }
        ++k;
      }
      const std::int64_t count = static_cast<std::int64_t>(k - s);
      if (count > best_count) {
        best_count = count;
        best_value = anchor;
      }
      s = k;
    }
    if (best_count > fixed_nnz - len && best_value != 0.0) {
      result.entries.push_back({idx, best_value});
    }
    g = g_end;
  }
  return result;
}

/// Change in residual nonzeros if u v^T were subtracted: fill-ins minus
/// cancellations over supp(u) x supp(v).
std::int64_t objective_delta(const Backend& backend, const SparseVector& u,
                             const SparseVector& v, ResidualScratch& scratch) {
  std::int64_t delta = 0;
  for (const Entry& ue : u.entries) {
    const auto line = backend.row(ue.index, scratch);
    std::size_t a = 0;
    for (const Entry& ve : v.entries) {
      while (a < line.size() && line[a].index < ve.index) ++a;
      const double prod = ue.value * ve.value;
      if (a < line.size() && line[a].index == ve.index) {
        if (std::abs(line[a].value - prod) <= kZeroTol) --delta;
      } else if (std::abs(prod) > kZeroTol) {
        ++delta;
      }
    }
  }
  return delta;
}

std::vector<std::int32_t> support_rows(const Backend& backend,
                                       ResidualScratch& scratch) {
  std::vector<std::int32_t> rows;
  for (std::int32_t i = 0; i < backend.rows(); ++i) {
    if (!backend.row(i, scratch).empty()) rows.push_back(i);
  }
  return rows;
}

std::int64_t count_nnz(const Backend& backend, ResidualScratch& scratch) {
  std::int64_t n = 0;
  for (std::int32_t i = 0; i < backend.rows(); ++i) {
    n += static_cast<std::int64_t>(backend.row(i, scratch).size());
  }
  return n;
}

struct Rank1Internal {
  SparseVector u, v;
  std::int64_t objective = 0;
  std::int64_t alternations = 0;
};

Rank1Internal rank1(const Backend& backend, std::int64_t residual_nnz,
                    const std::vector<std::int32_t>& rows_with_support,
                    Rng& rng, ResidualScratch& scratch) {
  const std::int32_t start =
      rows_with_support[uniform_below(rng, rows_with_support.size())];

  Rank1Internal r;
  r.u.entries = {{start, 1.0}};
  r.v = mode_step(backend, r.u, /*solve_for_v=*/true, scratch);
  r.objective = residual_nnz + objective_delta(backend, r.u, r.v, scratch);

  for (;;) {
    SparseVector u_next = mode_step(backend, r.v, /*solve_for_v=*/false, scratch);
    if (u_next.empty()) break;
    SparseVector v_next =
        mode_step(backend, u_next, /*solve_for_v=*/true, scratch);
    if (v_next.empty()) break;
    const std::int64_t obj =
        residual_nnz + objective_delta(backend, u_next, v_next, scratch);
    ++r.alternations;
    if (obj <= r.objective) {
      const bool improved = obj < r.objective;
      r.u = std::move(u_next);
      r.v = std::move(v_next);
      r.objective = obj;
      if (!improved) break;  // local optimum
    } else {
      break;  // tolerance quirk; keep the previous pair
    }
  }
  return r;
}

}  // namespace

SparseVector factor_subproblem(const ResidualView& view, const SparseVector& u) {
  ResidualScratch scratch;
  return mode_step(ViewBackend(view), u, /*solve_for_v=*/true, scratch);
}

Rank1Result factor_rank1(const ResidualView& view, Rng& rng) {
  ViewBackend backend(view);
  ResidualScratch scratch;
  const std::vector<std::int32_t> rows = support_rows(backend, scratch);
  if (rows.empty()) {
    throw std::invalid_argument("factor_rank1: residual has no nonzeros");
  }
  const std::int64_t nnz = count_nnz(backend, scratch);
  Rank1Internal r = rank1(backend, nnz, rows, rng, scratch);
  return {std::move(r.u), std::move(r.v), r.objective, r.alternations};
}

Factorization factorize(const SparseMatrix& a, const FactorConfig& config) {
  if (a.rows() == 0 || a.cols() == 0) {
    throw std::invalid_argument("factorize: empty matrix");
  }
  const auto t_start = std::chrono::steady_clock::now();

  std::unique_ptr<Backend> backend;
  if (config.implicit_mode) {
    backend = std::make_unique<ImplicitBackend>(a);
  } else {
    backend = std::make_unique<ExplicitBackend>(a);
  }

  Factorization out;
  out.rows = a.rows();
  out.cols = a.cols();
  out.u = FactorColumns(a.rows());
  out.v = FactorColumns(a.cols());

  Rng rng(config.seed);
  ResidualScratch scratch;
  std::int64_t residual_nnz = count_nnz(*backend, scratch);
  std::vector<std::int32_t> rows_ws = support_rows(*backend, scratch);

  // Worst-case guard: every inner round is at most quadratic and removes at
  // least one stored nonzero in the accounting, so nnz * max(m,n)^2 bounds
  // the total alternation count.
  const double alternation_cap =
      64.0 + static_cast<double>(a.nnz()) *
                 static_cast<double>(std::max(a.rows(), a.cols())) *
                 static_cast<double>(std::max(a.rows(), a.cols()));

  while (residual_nnz > 0) {
    Rank1Internal cand = rank1(*backend, residual_nnz, rows_ws, rng, scratch);
    out.stats.alternations += cand.alternations;
    if (static_cast<double>(out.stats.alternations) > alternation_cap) {
      throw std::runtime_error("factorize: inner-iteration budget exceeded");
    }

    // Accept only if the stored size strictly shrinks: the residual must
    // lose more entries than u and v add.
    const std::int64_t stored_gain =
        (residual_nnz - cand.objective) -
        static_cast<std::int64_t>(cand.u.nnz() + cand.v.nnz());
    if (cand.u.nnz() > 1 && cand.v.nnz() > 1 && stored_gain > 0) {
      backend->commit(cand.u, cand.v);
      out.u.append(std::move(cand.u));
      out.v.append(std::move(cand.v));
      residual_nnz = cand.objective;
      rows_ws = support_rows(*backend, scratch);
      ++out.stats.successes;
    } else {
      ++out.stats.failures;
    }
    if (out.stats.failures > out.stats.successes) break;
  }

  out.residual =
      SparseMatrix(a.rows(), a.cols(), backend->residual_triplets(scratch));

  out.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();

  // Exit contract: exact reconstruction and never denser.
  const double err = reconstruction_error(a, out);
  const double tol = 1e-10 * std::max(1.0, a.max_abs());
  if (err > tol) {
    throw std::runtime_error("factorize: reconstruction check failed, error " +
                             std::to_string(err));
  }
  if (out.fnnz() > a.nnz()) {
    throw std::runtime_error("factorize: output denser than input");
  }
  return out;
}

double reconstruction_error(const SparseMatrix& a, const Factorization& f) {
  if (f.rows != a.rows() || f.cols != a.cols()) {
    throw std::invalid_argument("reconstruction_error: shape mismatch");
  }
  ResidualScratch scratch;
  double worst = 0.0;
  for (std::int32_t i = 0; i < a.rows(); ++i) {
    scratch.reset(a.cols());
    for (const Entry& e : f.residual.row(i)) scratch.at(e.index) = e.value;
    for (const Entry& ue : f.u.row(i)) {
      for (const Entry& ve : f.v.col(ue.index).entries) {
        scratch.at(ve.index) += ue.value * ve.value;
      }
    }
    for (const Entry& e : a.row(i)) scratch.at(e.index) -= e.value;
    for (std::int32_t idx : scratch.touched()) {
      worst = std::max(worst, std::abs(scratch.at(idx)));
    }
  }
  return worst;
}

BlockLocalityReport check_block_locality(
    const Factorization& f, const std::vector<std::int32_t>& row_splits,
    const std::vector<std::int32_t>& col_splits) {
  if (row_splits.size() != col_splits.size() || row_splits.size() < 2) {
    throw std::invalid_argument("check_block_locality: bad split vectors");
  }
  auto block_of = [](const std::vector<std::int32_t>& splits, std::int32_t idx) {
    const auto it = std::upper_bound(splits.begin(), splits.end(), idx);
    return static_cast<std::int32_t>(it - splits.begin()) - 1;
  };
  for (std::int32_t k = 0; k < f.rank(); ++k) {
    const auto& ue = f.u.col(k).entries;
    const auto& ve = f.v.col(k).entries;
    const std::int32_t b = block_of(row_splits, ue.front().index);
    bool local = block_of(col_splits, ve.front().index) == b;
    for (const Entry& e : ue) {
      if (block_of(row_splits, e.index) != b) local = false;
    }
    for (const Entry& e : ve) {
      if (block_of(col_splits, e.index) != b) local = false;
    }
    if (!local) {
      BlockLocalityReport rep;
      rep.ok = false;
      rep.bad_column = k;
      rep.message =
          "factor column " + std::to_string(k) + " spans more than one block";
      return rep;
    }
  }
  return {};
}

void write_factorization(std::ostream& os, const Factorization& f) {
  os << f.rows << ' ' << f.cols << ' ' << f.rank() << ' ' << f.u.nnz() << ' '
     << f.v.nnz() << ' ' << f.residual.nnz() << '\n';
  os << "U\n";
  for (const Triplet& t : f.u.triplets()) {
    os << t.row << ' ' << t.col << ' ' << format_double(t.value) << '\n';
  }
  os << "V\n";
  for (const Triplet& t : f.v.triplets()) {
    os << t.row << ' ' << t.col << ' ' << format_double(t.value) << '\n';
  }
  os << "R\n";
  for (const Triplet& t : f.residual.triplets()) {
    os << t.row << ' ' << t.col << ' ' << format_double(t.value) << '\n';
  }
}

void write_factorization_file(const std::string& path, const Factorization& f) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_factorization(os, f);
  if (!os) throw std::runtime_error("write failed: " + path);
}

Factorization read_factorization(std::istream& is) {
  std::int64_t m, n, r, nnz_u, nnz_v, nnz_r;
  if (!(is >> m >> n >> r >> nnz_u >> nnz_v >> nnz_r)) {
    throw std::runtime_error("factorization header malformed");
  }
  auto read_section = [&](const char* tag, std::int64_t count) {
    std::string label;
    if (!(is >> label) || label != tag) {
      throw std::runtime_error(std::string("expected section ") + tag);
    }
    std::vector<Triplet> trips;
    trips.reserve(static_cast<std::size_t>(count));
    for (std::int64_t k = 0; k < count; ++k) {
      std::int64_t i, j;
      double v;
      if (!(is >> i >> j >> v)) {
        throw std::runtime_error(std::string("section ") + tag + " truncated");
      }
      trips.push_back(
          {static_cast<std::int32_t>(i), static_cast<std::int32_t>(j), v});
    }
    return trips;
  };

  Factorization f;
  f.rows = static_cast<std::int32_t>(m);
  f.cols = static_cast<std::int32_t>(n);
  f.u = FactorColumns(f.rows);
  f.v = FactorColumns(f.cols);

  auto to_columns = [&](std::vector<Triplet> trips, FactorColumns& dst) {
    std::stable_sort(trips.begin(), trips.end(),
                     [](const Triplet& a, const Triplet& b) {
                       return a.col != b.col ? a.col < b.col : a.row < b.row;
                     });
    std::size_t k = 0;
    for (std::int32_t c = 0; c < static_cast<std::int32_t>(r); ++c) {
      SparseVector col;
      while (k < trips.size() && trips[k].col == c) {
        col.entries.push_back({trips[k].row, trips[k].value});
        ++k;
      }
      dst.append(std::move(col));
    }
    if (k != trips.size()) {
      throw std::runtime_error("factorization column index out of range");
    }
  };
  to_columns(read_section("U", nnz_u), f.u);
  to_columns(read_section("V", nnz_v), f.v);
  f.residual = SparseMatrix(f.rows, f.cols, read_section("R", nnz_r));
  return f;
}

Factorization read_factorization_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open: " + path);
  return read_factorization(is);
}

}  // namespace sfg
