#include "sfg/trace.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "sfg/matrix_io.hpp"

namespace sfg {

void SolveTrace::add(double elapsed_s, std::int64_t iteration, double gap,
                     std::string phase) {
  if (!rows.empty() && elapsed_s <= rows.back().elapsed_s) {
    // Clocks have nanosecond resolution; nudge to keep rows ordered.
    elapsed_s = std::nextafter(rows.back().elapsed_s,
                               std::numeric_limits<double>::infinity());
  }
  rows.push_back({elapsed_s, iteration, gap, std::move(phase)});
}

void SolveTrace::validate() const {
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k].nash_gap < 0.0) {
      throw std::runtime_error("trace: negative gap at row " + std::to_string(k));
    }
    if (k > 0 && rows[k].elapsed_s <= rows[k - 1].elapsed_s) {
      throw std::runtime_error("trace: non-increasing timestamp at row " +
                               std::to_string(k));
    }
  }
}

void write_trace_csv(std::ostream& os, const SolveTrace& trace) {
  os << "elapsed_s,iteration,nash_gap,phase\n";
  for (const TraceRow& r : trace.rows) {
    os << format_double(r.elapsed_s) << ',' << r.iteration << ','
       << format_double(r.nash_gap) << ',' << r.phase << '\n';
  }
}

void write_trace_csv_file(const std::string& path, const SolveTrace& trace) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_trace_csv(os, trace);
}

SolveTrace read_trace_csv(std::istream& is) {
  SolveTrace t;
  std::string line;
  if (!std::getline(is, line) || line != "elapsed_s,iteration,nash_gap,phase") {
    throw std::runtime_error("trace csv: bad header");
  }
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ss(line);
    TraceRow r;
    std::string field;
    try {
      if (!std::getline(ss, field, ',')) throw std::runtime_error("");
      r.elapsed_s = std::stod(field);
      if (!std::getline(ss, field, ',')) throw std::runtime_error("");
      r.iteration = std::stoll(field);
      if (!std::getline(ss, field, ',')) throw std::runtime_error("");
      r.nash_gap = std::stod(field);
      if (!std::getline(ss, r.phase)) throw std::runtime_error("");
    } catch (const std::exception&) {
      throw std::runtime_error("trace csv: malformed line " +
                               std::to_string(line_no));
    }
    t.rows.push_back(std::move(r));
  }
  return t;
}

SolveTrace read_trace_csv_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open: " + path);
  return read_trace_csv(is);
}

}  // namespace sfg
