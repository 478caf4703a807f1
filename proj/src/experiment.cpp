#include "qwalk/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <map>
#include <tuple>

#include "qwalk/errors.hpp"
#include "qwalk/graph_walk.hpp"
#include "qwalk/grid_ops.hpp"
#include "qwalk/grid_state.hpp"

namespace qwalk {

std::string_view name_of(StoppingRule rule) noexcept {
  return rule == StoppingRule::OverlapCrossing ? "overlap-crossing" : "probability-argmax";
}

std::optional<StoppingRule> parse_stopping_rule(std::string_view s) {
  if (s == "overlap-crossing" || s == "crossing") return StoppingRule::OverlapCrossing;
  if (s == "probability-argmax" || s == "argmax") return StoppingRule::ProbabilityArgmax;
  return std::nullopt;
}

Peak detect_peak(std::span<const double> probability) {
  if (probability.empty()) throw Error(ErrorKind::InvalidArgument, "cannot detect a peak in an empty series");
  const auto it = std::max_element(probability.begin(), probability.end());
  return {static_cast<int>(it - probability.begin()), *it};
}

std::optional<int> detect_overlap_crossing(std::span<const double> overlap) {
  for (std::size_t t = 1; t < overlap.size(); ++t)
    if (overlap[t] <= 0) return static_cast<int>(t);
  return std::nullopt;
}

int horizon_for_cells(double cells) {
  if (cells < 2) return 1;
  return static_cast<int>(std::ceil(4.0 * std::sqrt(cells * std::log(cells))));
}

int default_horizon(int n) { return horizon_for_cells(static_cast<double>(n) * n); }

namespace {

using Clock = std::chrono::steady_clock;

class Budget {
 public:
  explicit Budget(double seconds)
      : limited_(seconds > 0),
        deadline_(Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds))) {}

  void check() const {
    if (limited_ && Clock::now() > deadline_) throw Error(ErrorKind::BudgetExceeded, "runtime budget exceeded");
  }

 private:
  bool limited_;
  Clock::time_point deadline_;
};

// Drives any walk given probability/overlap probes and a step callback.
template <typename Probe, typename Advance>
RunSeries drive(int horizon, const RunOptions& options, Probe probe, Advance advance) {
  if (horizon < 1) throw Error(ErrorKind::InvalidArgument, "horizon must be at least 1");
  const Budget budget(options.budget_seconds);
  const bool may_stop = options.stop_at_crossing && options.rule == StoppingRule::OverlapCrossing;

  RunSeries series;
  series.horizon = horizon;
  std::vector<double> overlap;
  series.probability.reserve(static_cast<std::size_t>(horizon) + 1);
  overlap.reserve(static_cast<std::size_t>(horizon) + 1);
  for (int t = 0;; ++t) {
    const auto [p, o] = probe();
    series.probability.push_back(p);
    overlap.push_back(o);
    if (t == horizon || (may_stop && t >= 1 && o <= 0)) break;
    if (t % 64 == 63) budget.check();
    advance();
  }

  const auto crossing = options.rule == StoppingRule::OverlapCrossing ? detect_overlap_crossing(overlap) : std::nullopt;
  if (crossing) {
    series.peak_step = *crossing;
    series.peak_probability = series.probability[*crossing];
    series.rule_used = StoppingRule::OverlapCrossing;
  } else {
    const Peak peak = detect_peak(series.probability);
    series.peak_step = peak.step;
    series.peak_probability = peak.probability;
    series.rule_used = StoppingRule::ProbabilityArgmax;
  }
  if (options.record_overlap) series.overlap = std::move(overlap);
  return series;
}

}  // namespace

RunSeries run_walk(int n, const MarkedSet& marked, CoinScheme scheme, const RunOptions& options) {
  GridState<double> state = uniform_state<double>(n);
  if (marked.n() != n) throw Error(ErrorKind::DimensionMismatch, "marked set is for another grid");
  const double a0 = state.values()[0];
  GridWalker<double> walker(n);
  const int horizon = options.horizon > 0 ? options.horizon : default_horizon(n);
  return drive(
      horizon, options,
      [&] { return std::pair{marked_probability(state, marked), a0 * state.values().sum()}; },
      [&] { walker.step(state, scheme, marked); });
}

RunSeries run_graph_walk(const Graph& g, const MarkedVertices& marked, CoinScheme scheme, const RunOptions& options) {
  ArcVector<double> state = graph_uniform_state<double>(g);
  detail::require_marked_fits(g, marked);
  const double a0 = state[0];
  const int horizon = options.horizon > 0 ? options.horizon : horizon_for_cells(g.vertex_count());
  return drive(
      horizon, options,
      [&] { return std::pair{graph_marked_probability(state, g, marked), a0 * state.sum()}; },
      [&] { graph_step(state, g, marked, scheme); });
}

double runtime_metric(double steps, double probability) {
  if (!(probability > 0)) throw Error(ErrorKind::UndefinedMetric, "runtime metric needs a positive probability");
  return steps / std::sqrt(probability);
}

TableResult reproduce_tables(const TableConfig& config) {
  if (config.sizes.empty()) throw Error(ErrorKind::InvalidArgument, "no grid sizes given");
  if (config.block_sides.empty()) throw Error(ErrorKind::InvalidArgument, "no block sides given");
  if (config.schemes.empty()) throw Error(ErrorKind::InvalidArgument, "no coin schemes given");
  for (int n : config.sizes) {
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "grid size " + std::to_string(n) + " is below 2");
    if (n >= kLargeGridThreshold && !config.allow_large)
      throw Error(ErrorKind::InvalidArgument, "grid size " + std::to_string(n) + " needs the large-grid opt-in");
    for (int side : config.block_sides)
      if (side < 1 || side > n)
        throw Error(ErrorKind::InvalidArgument, "block side " + std::to_string(side) + " does not fit grid " + std::to_string(n));
  }

  struct Cell {
    int n, side;
    CoinScheme scheme;
  };
  std::vector<Cell> cells;
  for (int n : config.sizes)
    for (int side : config.block_sides)
      for (CoinScheme s : config.schemes) cells.push_back({n, side, s});

  const Budget budget(config.budget_seconds);
  const auto start = Clock::now();
  auto remaining = [&] {
    if (config.budget_seconds <= 0) return 0.0;
    const double used = std::chrono::duration<double>(Clock::now() - start).count();
    return std::max(1e-9, config.budget_seconds - used);
  };

  auto run_cell = [&](const Cell& c) -> std::optional<TableRow> {
    try {
      budget.check();
      const MarkedSet marked = MarkedSet::from_block(c.n, centered_block(c.n, c.side, c.side));
      RunOptions options;
      options.stop_at_crossing = true;
      options.record_overlap = false;
      options.budget_seconds = remaining();
      const RunSeries s = run_walk(c.n, marked, c.scheme, options);
      return TableRow{c.n, c.side * c.side, c.scheme, s.peak_step, s.peak_probability,
                      runtime_metric(s.peak_step, s.peak_probability)};
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BudgetExceeded) throw;
      return std::nullopt;
    }
  };

  std::vector<std::optional<TableRow>> results(cells.size());
  if (config.parallel) {
    std::vector<std::future<std::optional<TableRow>>> pending;
    pending.reserve(cells.size());
    for (const Cell& c : cells) pending.push_back(std::async(std::launch::async, run_cell, c));
    for (std::size_t i = 0; i < cells.size(); ++i) results[i] = pending[i].get();
  } else {
    for (std::size_t i = 0; i < cells.size(); ++i) results[i] = run_cell(cells[i]);
  }

  TableResult out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (results[i]) {
      out.rows.push_back(*results[i]);
    } else {
      out.truncated = true;
      out.skipped.push_back({cells[i].n, cells[i].side * cells[i].side, cells[i].scheme});
    }
  }
  auto key = [](const TableRow& r) { return std::tuple{r.n, r.k, static_cast<int>(r.scheme)}; };
  std::sort(out.rows.begin(), out.rows.end(), [&](const TableRow& a, const TableRow& b) { return key(a) < key(b); });
  out.rows.erase(std::unique(out.rows.begin(), out.rows.end(),
                             [&](const TableRow& a, const TableRow& b) { return key(a) == key(b); }),
                 out.rows.end());

  std::map<std::pair<int, int>, std::pair<std::optional<double>, std::optional<double>>> by_cell;
  for (const TableRow& r : out.rows) {
    auto& slot = by_cell[{r.n, r.k}];
    (r.scheme == CoinScheme::Akr ? slot.first : slot.second) = r.runtime;
  }
  for (const auto& [nk, runtimes] : by_cell)
    if (runtimes.first && runtimes.second)
      out.ratios.push_back({nk.first, nk.second, *runtimes.first, *runtimes.second, *runtimes.first / *runtimes.second});
  return out;
}

}  // namespace qwalk
