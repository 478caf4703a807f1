#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/experiment.hpp"
#include "qwalk/stationary_grid.hpp"

namespace qwalk {

/// Locale-independent, 9 significant digits.
std::string format_number(double v);
/// Throws Io on malformed input.
double parse_number(std::string_view s);

/// Series as read back from disk.
struct SeriesData {
  std::vector<double> probability;
  std::vector<double> overlap;  // empty when the file has no overlap column
};

// Series CSV: header "step,probability[,overlap]", one record per step.
void write_series_csv(std::ostream& out, const RunSeries& series);
SeriesData read_series_csv(std::istream& in);
// Series JSON: {"step": [...], "probability": [...], "overlap": [...]}.
void write_series_json(std::ostream& out, const RunSeries& series);
SeriesData read_series_json(std::istream& in);

struct RunSummary {
  int n = 0;  // grid side, or vertex count for graph runs
  int k = 0;  // marked count
  CoinScheme scheme = CoinScheme::Akr;
  int peak_step = 0;
  double peak_probability = 0;
  std::optional<double> runtime;  // absent when peak_probability is 0
  StoppingRule stop_rule = StoppingRule::OverlapCrossing;
  int horizon = 0;
  int argmax_step = 0;
  double argmax_probability = 0;
};

RunSummary summarize(int n, int k, CoinScheme scheme, const RunSeries& series);
// Summary JSON: {n, k, scheme, peak_step, peak_probability, runtime, stop_rule, horizon, argmax_step, argmax_probability}.
void write_summary_json(std::ostream& out, const RunSummary& summary);
RunSummary read_summary_json(std::istream& in);

// Table CSV: "n,k,scheme,steps,probability,runtime,status"; cells cut by the
// budget appear with status "truncated" and empty measurements.
void write_table_csv(std::ostream& out, const TableResult& table);
// Ratio CSV: "n,k,akr_runtime,grover_runtime,ratio".
void write_ratio_csv(std::ostream& out, const std::vector<RatioRow>& ratios);
/// Reads a table CSV; ratios are left empty.
TableResult read_table_csv(std::istream& in);
std::vector<RatioRow> read_ratio_csv(std::istream& in);
// Table JSON: {"rows": [...], "ratios": [...], "truncated": bool, "skipped": [...]}.
void write_table_json(std::ostream& out, const TableResult& table);
TableResult read_table_json(std::istream& in);

// State JSON: {"n", "baseline", "basis", "marked": [[x, y], ...], "amplitudes": [...]},
// amplitudes at full double precision in GridState order.
void write_state_json(std::ostream& out, const StationaryCandidate<double>& candidate);
StationaryCandidate<double> read_state_json(std::istream& in);

}  // namespace qwalk
