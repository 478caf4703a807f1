#include "qwalk/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "qwalk/dense_oracle.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/experiment.hpp"
#include "qwalk/graph_stationary.hpp"
#include "qwalk/graph_walk.hpp"
#include "qwalk/io.hpp"
#include "qwalk/stationary_grid.hpp"

namespace qwalk {

namespace {

namespace fs = std::filesystem;

[[noreturn]] void config_error(std::string_view field, const std::string& what) {
  throw Error(ErrorKind::InvalidArgument, "invalid " + std::string(field) + ": " + what);
}

int parse_int_field(std::string_view s, std::string_view field) {
  int v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    config_error(field, "'" + std::string(s) + "' is not an integer");
  return v;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

struct OutputOptions {
  std::string dir;
  std::string name;
  std::string format = "csv";

  fs::path path(const std::string& suffix) const {
    fs::path base = dir.empty() ? fs::path(".") : fs::path(dir);
    fs::create_directories(base);
    return base / (name + suffix);
  }
};

std::string default_output_dir() {
  const char* env = std::getenv(kOutputDirEnv);
  return env ? std::string(env) : std::string(".");
}

template <typename Writer>
void write_file(const fs::path& p, Writer&& writer) {
  std::ofstream f(p);
  if (!f) throw Error(ErrorKind::Io, "cannot open " + p.string() + " for writing");
  writer(f);
  if (!f) throw Error(ErrorKind::Io, "failed writing " + p.string());
}

CoinScheme coin_field(const std::string& s) {
  const auto scheme = parse_coin_scheme(s);
  if (!scheme) config_error("--coin", "expected akr or grover, got '" + s + "'");
  return *scheme;
}

StoppingRule rule_field(const std::string& s) {
  const auto rule = parse_stopping_rule(s);
  if (!rule) config_error("--stop-rule", "expected crossing or argmax, got '" + s + "'");
  return *rule;
}

void check_format(const std::string& f) {
  if (f != "csv" && f != "json") config_error("--format", "expected csv or json, got '" + f + "'");
}

struct RunFlags {
  std::string coin = "grover";
  int horizon = 0;
  std::string stop_rule = "crossing";
  bool record_overlap = false;
  double budget_seconds = 0;
};

void add_run_flags(CLI::App* cmd, RunFlags& f, OutputOptions& o) {
  cmd->add_option("--coin", f.coin, "Coin scheme: akr or grover");
  cmd->add_option("--horizon", f.horizon, "Number of steps (default ceil(4 sqrt(N ln N)))");
  cmd->add_option("--stop-rule", f.stop_rule, "Measurement step rule: crossing or argmax");
  cmd->add_flag("--record-overlap", f.record_overlap, "Add the overlap column to the series");
  cmd->add_option("--budget-seconds", f.budget_seconds, "Wall-clock budget, 0 for none");
  cmd->add_option("--out-dir", o.dir, "Output directory (default $QWALK_OUTPUT_DIR or .)");
  cmd->add_option("--name", o.name, "Output file prefix");
  cmd->add_option("--format", o.format, "Series format: csv or json");
}

RunOptions run_options(const RunFlags& f) {
  if (f.horizon < 0) config_error("--horizon", "must be positive");
  if (f.budget_seconds < 0) config_error("--budget-seconds", "must be non-negative");
  RunOptions o;
  o.horizon = f.horizon;
  o.rule = rule_field(f.stop_rule);
  o.record_overlap = f.record_overlap;
  o.budget_seconds = f.budget_seconds;
  return o;
}

void emit_run(const RunSeries& series, const RunSummary& summary, const OutputOptions& o, std::ostream& out) {
  write_file(o.path("_series." + o.format), [&](std::ostream& f) {
    if (o.format == "json")
      write_series_json(f, series);
    else
      write_series_csv(f, series);
  });
  write_file(o.path("_summary.json"), [&](std::ostream& f) { write_summary_json(f, summary); });
  write_summary_json(out, summary);
}

struct SimulateArgs {
  int n = 0;
  std::string block;
  std::string cells;
  bool allow_large = false;
  RunFlags run;
  OutputOptions output{"", "simulate"};
};

int cmd_simulate(const SimulateArgs& a, bool has_block, bool has_cells, std::ostream& out) {
  if (a.n < 2) config_error("--n", "grid side must be at least 2");
  if (a.n >= kLargeGridThreshold && !a.allow_large)
    config_error("--n", "grids of side >= " + std::to_string(kLargeGridThreshold) + " need --allow-large");
  if (has_block == has_cells) config_error("--block/--cells", "give exactly one marked-set descriptor");
  check_format(a.output.format);
  const MarkedSet marked =
      has_block ? MarkedSet::from_block(a.n, parse_block(a.block, a.n)) : [&] {
        const auto cells = parse_cells(a.cells);
        return MarkedSet(a.n, cells);
      }();
  const RunOptions options = run_options(a.run);
  const CoinScheme scheme = coin_field(a.run.coin);
  const RunSeries series = run_walk(a.n, marked, scheme, options);
  emit_run(series, summarize(a.n, static_cast<int>(marked.size()), scheme, series), a.output, out);
  return kExitSuccess;
}

struct GraphSimArgs {
  std::string graph_path;
  std::string marked_path;
  RunFlags run;
  OutputOptions output{"", "graph_sim"};
};

int cmd_graph_sim(const GraphSimArgs& a, std::ostream& out) {
  check_format(a.output.format);
  std::ifstream gf(a.graph_path);
  if (!gf) config_error("--graph", "cannot read '" + a.graph_path + "'");
  const Graph g = read_edge_list(gf);
  std::ifstream mf(a.marked_path);
  if (!mf) config_error("--marked", "cannot read '" + a.marked_path + "'");
  const auto ids = read_vertex_ids(mf);
  const MarkedVertices marked(g.vertex_count(), ids);
  const RunOptions options = run_options(a.run);
  const CoinScheme scheme = coin_field(a.run.coin);
  const RunSeries series = run_graph_walk(g, marked, scheme, options);
  emit_run(series, summarize(g.vertex_count(), static_cast<int>(marked.size()), scheme, series), a.output, out);
  return kExitSuccess;
}

struct VerifyArgs {
  int n = 0;
  std::string block;
  std::string construction = "layered";
  int tiling_index = 0;
  std::string state_out;
  bool two_marked = false;
  std::string generic_three;
  bool ring = false;
  int k = 0;
  int r = 0;
  int oracle_cap = -1;  // -1 keeps the library defaults
  OutputOptions output{"", "verify"};
};

struct VerifyReport {
  std::string target;
  ConditionReport conditions;
  double residual = 0;
  double delta_norm2 = 0;
  std::optional<double> oracle_residual;  // dense-matrix cross-check, when within the cap

  bool passed() const {
    return residual <= kStationaryTolerance && (!oracle_residual || *oracle_residual <= kStationaryTolerance);
  }
};

void write_report(std::ostream& out, const VerifyReport& r) {
  out << "{\n"
      << "  \"target\": \"" << r.target << "\",\n"
      << "  \"conditions\": {\"uniform_unmarked\": " << std::boolalpha << r.conditions.uniform_unmarked
      << ", \"zero_sum_marked\": " << r.conditions.zero_sum_marked << ", \"facing_equal\": " << r.conditions.facing_equal
      << "},\n"
      << "  \"residual\": " << format_number(r.residual) << ",\n"
      << "  \"delta_norm2\": " << format_number(r.delta_norm2) << ",\n"
      << "  \"oracle_residual\": " << (r.oracle_residual ? format_number(*r.oracle_residual) : "null") << ",\n"
      << "  \"passed\": " << r.passed() << "\n"
      << "}\n";
}

int cmd_verify(const VerifyArgs& a, bool has_block, std::ostream& out) {
  const int graph_targets = (a.two_marked ? 1 : 0) + (a.generic_three.empty() ? 0 : 1) + (a.ring ? 1 : 0);
  if (graph_targets + (has_block ? 1 : 0) != 1)
    config_error("target", "give exactly one of --block, --graph-two-marked, --graph-generic-three, --graph-ring");

  if (a.oracle_cap < -1) config_error("--oracle-cap", "must be non-negative");
  VerifyReport report;
  if (has_block) {
    if (a.n < 2) config_error("--n", "grid side must be at least 2");
    const BlockSpec block = parse_block(a.block, a.n);
    const double baseline = uniform_state<double>(a.n).values()[0];
    StationaryCandidate<double> c;
    if (a.construction == "layered") {
      c = build_block_layered(a.n, block, baseline);
    } else if (a.construction == "tiling") {
      const auto tilings = enumerate_domino_tilings(block.width, block.height, static_cast<std::size_t>(a.tiling_index) + 1);
      if (tilings.empty())
        throw Error(ErrorKind::OddOddImpossible, "a " + std::to_string(block.width) + "x" + std::to_string(block.height) +
                                                     " block has no domino tiling (odd area)");
      if (a.tiling_index < 0 || static_cast<std::size_t>(a.tiling_index) >= tilings.size())
        config_error("--tiling-index", "block has only " + std::to_string(tilings.size()) + " tilings");
      c = build_block_tiling(a.n, block, baseline, tilings[static_cast<std::size_t>(a.tiling_index)]);
    } else {
      config_error("--construction", "expected layered or tiling, got '" + a.construction + "'");
    }
    report.target = "grid n=" + std::to_string(a.n) + " block " + std::to_string(block.width) + "x" +
                    std::to_string(block.height) + " " + a.construction;
    report.conditions = check_conditions(c);
    report.residual = step_residual(c.state, CoinScheme::Grover, c.marked);
    report.delta_norm2 = decompose_initial(a.n, c).moving_norm2;
    const int cap = a.oracle_cap < 0 ? kDefaultGridOracleCap : a.oracle_cap;
    if (a.n <= cap) {
      const Eigen::VectorXd s = c.state.values().matrix();
      report.oracle_residual = (dense_step_matrix<double>(a.n, CoinScheme::Grover, c.marked, cap) * s - s).norm();
    }
    if (!a.state_out.empty()) write_file(a.state_out, [&](std::ostream& f) { write_state_json(f, c); });
  } else {
    GraphWitness<double> w;
    if (a.two_marked) {
      if (a.k < 1) config_error("--k", "must be at least 1");
      w = build_two_marked<double>(a.k);
      report.target = "graph two-marked k=" + std::to_string(a.k);
    } else if (a.ring) {
      if (a.r < 2) config_error("--r", "must be at least 2");
      if (a.k < 1) config_error("--k", "must be at least 1");
      w = build_symmetric_ring<double>(a.r, a.k);
      report.target = "graph ring r=" + std::to_string(a.r) + " k=" + std::to_string(a.k);
    } else {
      const auto l = parse_int_list(a.generic_three);
      if (l.size() != 3) config_error("--graph-generic-three", "expected three weights l12,l23,l31");
      w = build_generic_three<double>({l[0], l[1], l[2]});
      report.target = "graph generic-three " + a.generic_three;
    }
    const double a0 = graph_uniform_state<double>(w.graph)[0];
    const GraphWitness<double> scaled = rescaled(w, a0);
    report.conditions = check_graph_conditions(scaled);
    report.residual = graph_step_residual(scaled.graph, scaled.marked, scaled.state);
    report.delta_norm2 = decompose_graph_initial(scaled).moving_norm2;
    const std::size_t cap = a.oracle_cap < 0 ? kDefaultGraphOracleCap : static_cast<std::size_t>(a.oracle_cap);
    if (scaled.graph.arc_count() <= cap)
      report.oracle_residual =
          (graph_dense_step_matrix<double>(scaled.graph, scaled.marked, CoinScheme::Grover, cap) * scaled.state -
           scaled.state)
              .norm();
  }

  write_file(a.output.path("_verify.json"), [&](std::ostream& f) { write_report(f, report); });
  write_report(out, report);
  return report.passed() ? kExitSuccess : kExitVerificationFailed;
}

struct TableArgs {
  std::string sizes;
  std::string blocks;
  std::string coins = "akr,grover";
  double budget_seconds = 0;
  bool parallel = false;
  bool allow_large = false;
  OutputOptions output{"", "table"};
};

int cmd_table(const TableArgs& a, std::ostream& out) {
  check_format(a.output.format);
  TableConfig config;
  config.sizes = parse_int_list(a.sizes);
  if (config.sizes.empty()) config_error("--sizes", "no grid sizes given");
  config.block_sides = parse_int_list(a.blocks);
  if (config.block_sides.empty()) config_error("--blocks", "no block sides given");
  config.schemes.clear();
  for (const std::string& c : split(a.coins, ',')) config.schemes.push_back(coin_field(c));
  if (a.budget_seconds < 0) config_error("--budget-seconds", "must be non-negative");
  config.budget_seconds = a.budget_seconds;
  config.parallel = a.parallel;
  config.allow_large = a.allow_large;

  const TableResult table = reproduce_tables(config);
  if (a.output.format == "json") {
    write_file(a.output.path(".json"), [&](std::ostream& f) { write_table_json(f, table); });
  } else {
    write_file(a.output.path(".csv"), [&](std::ostream& f) { write_table_csv(f, table); });
    write_file(a.output.path("_ratios.csv"), [&](std::ostream& f) { write_ratio_csv(f, table.ratios); });
  }
  write_table_csv(out, table);
  write_ratio_csv(out, table.ratios);
  return table.truncated ? kExitBudgetExceeded : kExitSuccess;
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::OddOddImpossible: return kExitImpossibleConstruction;
    case ErrorKind::BudgetExceeded: return kExitBudgetExceeded;
    default: return kExitInvalidConfig;
  }
}

}  // namespace

BlockSpec parse_block(std::string_view text, int n) {
  const std::string s = trim(text);
  const auto at = s.find('@');
  const std::string size = s.substr(0, at);
  const auto x = size.find_first_of("xX");
  if (x == std::string::npos) config_error("--block", "expected MxL[@x,y], got '" + s + "'");
  BlockSpec b;
  b.width = parse_int_field(trim(size.substr(0, x)), "--block");
  b.height = parse_int_field(trim(size.substr(x + 1)), "--block");
  if (b.width < 1 || b.height < 1) config_error("--block", "sides must be positive");
  if (at == std::string::npos) {
    b.origin = centered_block(n, b.width, b.height).origin;
  } else {
    const auto parts = split(std::string_view(s).substr(at + 1), ',');
    if (parts.size() != 2) config_error("--block", "origin must be x,y");
    b.origin = {parse_int_field(parts[0], "--block"), parse_int_field(parts[1], "--block")};
  }
  try {
    b.validate(n);
  } catch (const Error& e) {
    config_error("--block", e.what());
  }
  return b;
}

std::vector<Cell> parse_cells(std::string_view text) {
  std::vector<Cell> cells;
  if (trim(text).empty()) return cells;
  for (const std::string& item : split(text, ';')) {
    if (item.empty()) continue;
    const auto xy = split(item, ',');
    if (xy.size() != 2) config_error("--cells", "expected x,y pairs separated by ';', got '" + item + "'");
    cells.push_back({parse_int_field(xy[0], "--cells"), parse_int_field(xy[1], "--cells")});
  }
  return cells;
}

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> values;
  if (trim(text).empty()) return values;
  for (const std::string& item : split(text, ',')) values.push_back(parse_int_field(item, "list"));
  return values;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coined quantum-walk search on torus grids and general graphs"};
  app.require_subcommand(1);

  SimulateArgs sim;
  sim.output.dir = default_output_dir();
  auto* simulate = app.add_subcommand("simulate", "Run the search walk on an n x n torus");
  simulate->add_option("--n", sim.n, "Grid side")->required();
  auto* block_opt = simulate->add_option("--block", sim.block, "Marked block MxL[@x,y]");
  auto* cells_opt = simulate->add_option("--cells", sim.cells, "Marked cells x,y;x,y;...");
  simulate->add_flag("--allow-large", sim.allow_large, "Permit n >= 500");
  add_run_flags(simulate, sim.run, sim.output);

  GraphSimArgs gsim;
  gsim.output.dir = default_output_dir();
  auto* graph_sim = app.add_subcommand("graph-sim", "Run the search walk on a graph from an edge list");
  graph_sim->add_option("--graph", gsim.graph_path, "Edge-list file")->required();
  graph_sim->add_option("--marked", gsim.marked_path, "Marked vertex id file")->required();
  add_run_flags(graph_sim, gsim.run, gsim.output);

  VerifyArgs ver;
  ver.output.dir = default_output_dir();
  auto* verify = app.add_subcommand("verify", "Build a stationary state and check it");
  verify->add_option("--n", ver.n, "Grid side");
  auto* vblock_opt = verify->add_option("--block", ver.block, "Marked block MxL[@x,y]");
  verify->add_option("--construction", ver.construction, "layered or tiling");
  verify->add_option("--tiling-index", ver.tiling_index, "Which enumerated tiling to use");
  verify->add_option("--state-out", ver.state_out, "Write the grid state as JSON");
  verify->add_flag("--graph-two-marked", ver.two_marked, "Two adjacent marked vertices");
  verify->add_option("--graph-generic-three", ver.generic_three, "Weights l12,l23,l31");
  verify->add_flag("--graph-ring", ver.ring, "Symmetric ring of marked vertices");
  verify->add_option("--k", ver.k, "Private neighbours per marked vertex");
  verify->add_option("--r", ver.r, "Marked vertices on the ring");
  verify->add_option("--out-dir", ver.output.dir, "Output directory");
  verify->add_option("--name", ver.output.name, "Output file prefix");
  verify->add_option("--oracle-cap", ver.oracle_cap, "Largest grid side / arc count checked against the dense matrix");

  TableArgs tab;
  tab.output.dir = default_output_dir();
  auto* table = app.add_subcommand("table", "Reproduce the steps/probability/runtime tables");
  table->add_option("--sizes", tab.sizes, "Grid sides, comma separated")->required();
  table->add_option("--blocks", tab.blocks, "Block sides sqrt(k), comma separated")->required();
  table->add_option("--coins", tab.coins, "Coin schemes, comma separated");
  table->add_option("--budget-seconds", tab.budget_seconds, "Wall-clock budget, 0 for none");
  table->add_flag("--parallel", tab.parallel, "Run table cells concurrently");
  table->add_flag("--allow-large", tab.allow_large, "Permit n >= 500");
  table->add_option("--out-dir", tab.output.dir, "Output directory");
  table->add_option("--name", tab.output.name, "Output file prefix");
  table->add_option("--format", tab.output.format, "csv or json");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidConfig;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(sim, block_opt->count() > 0, cells_opt->count() > 0, out);
    if (graph_sim->parsed()) return cmd_graph_sim(gsim, out);
    if (verify->parsed()) return cmd_verify(ver, vblock_opt->count() > 0, out);
    if (table->parsed()) return cmd_table(tab, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidConfig;
  }
  return kExitInvalidConfig;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace qwalk
