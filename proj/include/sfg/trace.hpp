#ifndef SFG_TRACE_HPP
#define SFG_TRACE_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace sfg {

/// One anytime measurement. `phase` is "factorize" or "solve"; time spent
/// factoring is charged to the same clock as the solve that follows it.
struct TraceRow {
  double elapsed_s = 0.0;
  std::int64_t iteration = 0;
  double nash_gap = 0.0;
  std::string phase;
};

struct SolveTrace {
  std::vector<TraceRow> rows;

  void add(double elapsed_s, std::int64_t iteration, double gap,
           std::string phase);
  /// Throws unless timestamps strictly increase and gaps are nonnegative.
  void validate() const;
};

/// CSV with header "elapsed_s,iteration,nash_gap,phase".
void write_trace_csv(std::ostream& os, const SolveTrace& trace);
void write_trace_csv_file(const std::string& path, const SolveTrace& trace);
SolveTrace read_trace_csv(std::istream& is);
SolveTrace read_trace_csv_file(const std::string& path);

}  // namespace sfg

#endif  // SFG_TRACE_HPP
