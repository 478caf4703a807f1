#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/graph.hpp"
#include "qwalk/marked_set.hpp"

namespace qwalk {

/// How a run picks its measurement step.
///   OverlapCrossing:   first t >= 1 with <psi(t)|psi0> <= 0; falls back to the
///                      probability argmax when the overlap never crosses zero.
///   ProbabilityArgmax: global argmax of the marked probability, earliest on ties.
enum class StoppingRule { OverlapCrossing, ProbabilityArgmax };

std::string_view name_of(StoppingRule rule) noexcept;
std::optional<StoppingRule> parse_stopping_rule(std::string_view s);

struct RunOptions {
  int horizon = 0;  // 0 selects default_horizon(n)
  StoppingRule rule = StoppingRule::OverlapCrossing;
  bool record_overlap = true;
  bool stop_at_crossing = false;  // end the run at the crossing (OverlapCrossing only)
  double budget_seconds = 0;      // 0 is unlimited; exceeding throws BudgetExceeded
};

struct RunSeries {
  std::vector<double> probability;  // t = 0..steps run
  std::vector<double> overlap;      // empty unless record_overlap
  int peak_step = 0;
  double peak_probability = 0;
  StoppingRule rule_used = StoppingRule::ProbabilityArgmax;
  int horizon = 0;
};

struct Peak {
  int step = 0;
  double probability = 0;
};

/// Global argmax, smallest index on ties. Requires a nonempty series.
Peak detect_peak(std::span<const double> probability);
/// First t >= 1 with overlap[t] <= 0.
std::optional<int> detect_overlap_crossing(std::span<const double> overlap);

/// ceil(4 sqrt(N ln N)), at least 1.
int horizon_for_cells(double cells);
/// horizon_for_cells(n^2).
int default_horizon(int n);

/// Walks from the uniform state for the horizon, recording both series at every step.
RunSeries run_walk(int n, const MarkedSet& marked, CoinScheme scheme, const RunOptions& options = {});
/// Same for a general graph; the default horizon uses N = vertex count.
RunSeries run_graph_walk(const Graph& g, const MarkedVertices& marked, CoinScheme scheme,
                         const RunOptions& options = {});

/// steps / sqrt(probability); throws UndefinedMetric for probability <= 0.
double runtime_metric(double steps, double probability);

struct TableRow {
  int n = 0;
  int k = 0;
  CoinScheme scheme = CoinScheme::Akr;
  int steps = 0;
  double probability = 0;
  double runtime = 0;
};

/// AKR runtime over Grover runtime for one (n, k).
struct RatioRow {
  int n = 0;
  int k = 0;
  double akr_runtime = 0;
  double grover_runtime = 0;
  double ratio = 0;
};

inline constexpr int kLargeGridThreshold = 500;

struct TableConfig {
  std::vector<int> sizes;
  std::vector<int> block_sides;  // sqrt(k)
  std::vector<CoinScheme> schemes{CoinScheme::Akr, CoinScheme::Grover};
  double budget_seconds = 0;
  bool parallel = false;
  bool allow_large = false;  // permits n >= kLargeGridThreshold
};

struct SkippedCell {
  int n = 0;
  int k = 0;
  CoinScheme scheme = CoinScheme::Akr;
};

struct TableResult {
  std::vector<TableRow> rows;  // sorted by (n, k, scheme)
  std::vector<RatioRow> ratios;
  bool truncated = false;
  std::vector<SkippedCell> skipped;  // cells cut by the budget
};

/// Validates the config (InvalidArgument) and runs every (n, k, scheme) cell with
/// a centred sqrt(k) x sqrt(k) block and the overlap-crossing rule.
TableResult reproduce_tables(const TableConfig& config);

}  // namespace qwalk
