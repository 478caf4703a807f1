#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "qwalk/cli.hpp"
#include "qwalk/io.hpp"
#include "test_support.hpp"

using namespace qwalk;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("qwalk_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string str() const { return path.string(); }
};

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunSeries random_series(std::mt19937_64& rng, bool with_overlap) {
  std::uniform_real_distribution<double> u(-1, 1);
  const int len = std::uniform_int_distribution<int>(1, 40)(rng);
  RunSeries s;
  for (int i = 0; i < len; ++i) {
    s.probability.push_back(std::abs(u(rng)) * std::pow(10.0, -std::uniform_int_distribution<int>(0, 12)(rng)));
    if (with_overlap) s.overlap.push_back(u(rng));
  }
  return s;
}

}  // namespace

TEST_CASE("format_number and parse_number") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(0.556187) == "0.556187");
  CHECK(format_number(318) == "318");
  CHECK(parse_number("1e-3") == 1e-3);
  CHECK(parse_number("-2.5") == -2.5);
  CHECK_THROWS_AS(parse_number("abc"), Error);
  CHECK_THROWS_AS(parse_number("1.5x"), Error);
  CHECK_THROWS_AS(parse_number(""), Error);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int i = 0; i < 200; ++i) {
    const double v = u(rng);
    CHECK(parse_number(format_number(v)) == doctest::Approx(v).epsilon(1e-8));
  }
}

TEST_CASE("series round trips") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const bool with_overlap = trial % 2 == 0;
    const RunSeries s = random_series(rng, with_overlap);
    std::stringstream csv, json;
    write_series_csv(csv, s);
    write_series_json(json, s);
    const SeriesData from_csv = read_series_csv(csv);
    const SeriesData from_json = read_series_json(json);
    for (const SeriesData* d : {&from_csv, &from_json}) {
      REQUIRE(d->probability.size() == s.probability.size());
      REQUIRE(d->overlap.size() == s.overlap.size());
      for (std::size_t i = 0; i < s.probability.size(); ++i)
        CHECK(d->probability[i] == doctest::Approx(s.probability[i]).epsilon(1e-8));
      for (std::size_t i = 0; i < s.overlap.size(); ++i)
        CHECK(d->overlap[i] == doctest::Approx(s.overlap[i]).epsilon(1e-8));
    }
  }
  std::istringstream bad("step,probability\n0,zz\n");
  CHECK_THROWS_AS(read_series_csv(bad), Error);
  std::istringstream wrong_header("t,p\n0,1\n");
  CHECK_THROWS_AS(read_series_csv(wrong_header), Error);
}

TEST_CASE("summary round trip") {
  RunSeries s;
  s.probability = {0.0, 0.2, 0.5, 0.3};
  s.overlap = {1.0, 0.4, -0.1, -0.5};
  s.peak_step = 2;
  s.peak_probability = 0.5;
  s.rule_used = StoppingRule::OverlapCrossing;
  s.horizon = 3;
  const RunSummary summary = summarize(10, 4, CoinScheme::Grover, s);
  CHECK(summary.runtime.has_value());
  CHECK(*summary.runtime == doctest::Approx(2 / std::sqrt(0.5)));
  CHECK(summary.argmax_step == 2);
  std::stringstream ss;
  write_summary_json(ss, summary);
  const RunSummary back = read_summary_json(ss);
  CHECK(back.n == 10);
  CHECK(back.k == 4);
  CHECK(back.scheme == CoinScheme::Grover);
  CHECK(back.peak_step == 2);
  CHECK(back.peak_probability == 0.5);
  CHECK(back.stop_rule == StoppingRule::OverlapCrossing);
  CHECK(back.horizon == 3);

  RunSeries zero;
  zero.probability = {0.0, 0.0};
  const RunSummary z = summarize(10, 0, CoinScheme::Akr, zero);
  CHECK_FALSE(z.runtime.has_value());
  std::stringstream zs;
  write_summary_json(zs, z);
  CHECK_FALSE(read_summary_json(zs).runtime.has_value());
}

TEST_CASE("table and ratio round trips") {
  TableResult t;
  t.rows = {{100, 9, CoinScheme::Akr, 156, 0.086454, 530.5614},
            {100, 9, CoinScheme::Grover, 318, 0.556187, 426.3994}};
  t.ratios = {{100, 9, 530.5614, 426.3994, 530.5614 / 426.3994}};
  t.truncated = true;
  t.skipped = {{200, 9, CoinScheme::Akr}};

  std::stringstream csv;
  write_table_csv(csv, t);
  CHECK(csv.str().find("status") != std::string::npos);
  CHECK(csv.str().find("truncated") != std::string::npos);
  const TableResult from_csv = read_table_csv(csv);
  REQUIRE(from_csv.rows.size() == 2);
  CHECK(from_csv.rows[1].steps == 318);
  CHECK(from_csv.rows[1].scheme == CoinScheme::Grover);
  CHECK(from_csv.truncated);
  REQUIRE(from_csv.skipped.size() == 1);
  CHECK(from_csv.skipped[0].n == 200);

  std::stringstream ratio_csv;
  write_ratio_csv(ratio_csv, t.ratios);
  const auto ratios = read_ratio_csv(ratio_csv);
  REQUIRE(ratios.size() == 1);
  CHECK(ratios[0].ratio == doctest::Approx(t.ratios[0].ratio).epsilon(1e-8));

  std::stringstream json;
  write_table_json(json, t);
  const TableResult from_json = read_table_json(json);
  CHECK(from_json.rows.size() == 2);
  CHECK(from_json.ratios.size() == 1);
  CHECK(from_json.truncated);
  CHECK(from_json.skipped.size() == 1);
  CHECK(from_json.rows[0].probability == doctest::Approx(0.086454).epsilon(1e-8));
}

TEST_CASE("state JSON round trip is exact") {
  const int n = 8;
  const auto c = build_block_layered<double>(n, BlockSpec{{2, 3}, 4, 2}, 1.0 / 16);
  std::stringstream ss;
  write_state_json(ss, c);
  const auto back = read_state_json(ss);
  CHECK(back.state == c.state);
  CHECK(back.marked.cells() == c.marked.cells());
  CHECK(back.baseline == c.baseline);
  const auto j = nlohmann::json::parse(ss.str());
  CHECK(j["basis"].is_string());
}

TEST_CASE("parsers") {
  const BlockSpec centred = parse_block("3x3", 100);
  CHECK(centred.origin == Cell{49, 49});
  CHECK(centred.width == 3);
  const BlockSpec placed = parse_block("2x4@5,6", 10);
  CHECK(placed.origin == Cell{5, 6});
  CHECK(placed.height == 4);
  CHECK_THROWS_AS(parse_block("3by3", 10), Error);
  CHECK_THROWS_AS(parse_block("0x3", 10), Error);
  CHECK_THROWS_AS(parse_block("11x1", 10), Error);

  CHECK(parse_cells("").empty());
  const auto cells = parse_cells("1,2;3,4");
  REQUIRE(cells.size() == 2);
  CHECK(cells[1] == Cell{3, 4});
  CHECK_THROWS_AS(parse_cells("1;2"), Error);

  CHECK(parse_int_list("") == std::vector<int>{});
  CHECK(parse_int_list("100,200") == std::vector<int>{100, 200});
  CHECK_THROWS_AS(parse_int_list("1,x"), Error);
}

TEST_CASE("cli simulate") {
  TempDir dir;
  const auto grover = cli({"simulate", "--n", "100", "--block", "3x3", "--coin", "grover", "--horizon", "400",
                           "--out-dir", dir.str()});
  REQUIRE(grover.code == kExitSuccess);
  const auto summary = nlohmann::json::parse(grover.out);
  CHECK(summary["peak_step"] == 318);
  CHECK(summary["peak_probability"].get<double>() == doctest::Approx(0.556187).epsilon(1e-5));
  CHECK(fs::exists(dir.path / "simulate_series.csv"));
  CHECK(fs::exists(dir.path / "simulate_summary.json"));
  std::ifstream series_file(dir.path / "simulate_series.csv");
  CHECK(read_series_csv(series_file).probability.size() == 401);

  const auto akr = cli({"simulate", "--n", "100", "--block", "3x3", "--coin", "akr", "--horizon", "250",
                        "--out-dir", dir.str(), "--name", "akr", "--format", "json"});
  REQUIRE(akr.code == kExitSuccess);
  CHECK(nlohmann::json::parse(akr.out)["peak_step"] == 156);
  CHECK(fs::exists(dir.path / "akr_series.json"));

  const auto empty = cli({"simulate", "--n", "10", "--cells", "", "--horizon", "20", "--out-dir", dir.str(),
                          "--name", "empty"});
  REQUIRE(empty.code == kExitSuccess);
  std::ifstream empty_file(dir.path / "empty_series.csv");
  const auto data = read_series_csv(empty_file);
  CHECK(std::all_of(data.probability.begin(), data.probability.end(), [](double p) { return p == 0; }));

  CHECK(cli({"simulate", "--n", "10", "--out-dir", dir.str()}).code == kExitInvalidConfig);
  CHECK(cli({"simulate", "--n", "10", "--block", "2x2", "--cells", "1,1", "--out-dir", dir.str()}).code ==
        kExitInvalidConfig);
  CHECK(cli({"simulate", "--n", "1", "--block", "1x1", "--out-dir", dir.str()}).code == kExitInvalidConfig);
  CHECK(cli({"simulate", "--n", "10", "--block", "2x2", "--coin", "hadamard", "--out-dir", dir.str()}).code ==
        kExitInvalidConfig);
  CHECK(cli({"simulate", "--n", "600", "--block", "2x2", "--out-dir", dir.str()}).code == kExitInvalidConfig);
  CHECK(cli({"simulate", "--n", "200", "--block", "3x3", "--horizon", "1000000", "--budget-seconds", "0.001",
             "--out-dir", dir.str()})
            .code == kExitBudgetExceeded);
  CHECK(cli({"frobnicate"}).code == kExitInvalidConfig);
}

TEST_CASE("cli output directory from the environment") {
  TempDir dir;
  ::setenv(kOutputDirEnv, dir.str().c_str(), 1);
  const auto r = cli({"simulate", "--n", "6", "--block", "2x1", "--horizon", "5", "--name", "env"});
  ::unsetenv(kOutputDirEnv);
  CHECK(r.code == kExitSuccess);
  CHECK(fs::exists(dir.path / "env_summary.json"));
}

TEST_CASE("cli verify") {
  TempDir dir;
  const auto domino = cli({"verify", "--n", "100", "--block", "1x2", "--out-dir", dir.str()});
  CHECK(domino.code == kExitSuccess);
  const auto report = nlohmann::json::parse(slurp(dir.path / "verify_verify.json"));
  CHECK(report["passed"] == true);
  CHECK(report["residual"].get<double>() <= 1e-12);
  CHECK(report["delta_norm2"].get<double>() == doctest::Approx(8.0 / 10000).epsilon(1e-9));
  CHECK(report["oracle_residual"].is_null());

  const auto small = cli({"verify", "--n", "6", "--block", "2x2", "--out-dir", dir.str(), "--name", "small"});
  CHECK(small.code == kExitSuccess);
  const auto small_report = nlohmann::json::parse(small.out);
  CHECK(small_report["oracle_residual"].get<double>() <= 1e-12);
  const auto uncapped = cli({"verify", "--n", "6", "--block", "2x2", "--oracle-cap", "5", "--out-dir", dir.str()});
  CHECK(nlohmann::json::parse(uncapped.out)["oracle_residual"].is_null());
  const auto two = cli({"verify", "--graph-two-marked", "--k", "3", "--out-dir", dir.str(), "--name", "two"});
  CHECK(nlohmann::json::parse(two.out)["oracle_residual"].get<double>() <= 1e-12);

  const auto tiling = cli({"verify", "--n", "10", "--block", "4x3", "--construction", "tiling", "--tiling-index",
                           "10", "--state-out", (dir.path / "state.json").string(), "--out-dir", dir.str()});
  CHECK(tiling.code == kExitSuccess);
  std::ifstream state_file(dir.path / "state.json");
  const auto state = read_state_json(state_file);
  CHECK(state.marked.size() == 12);
  CHECK(cli({"verify", "--n", "10", "--block", "4x3", "--construction", "tiling", "--tiling-index", "11",
             "--out-dir", dir.str()})
            .code == kExitInvalidConfig);

  CHECK(cli({"verify", "--n", "100", "--block", "3x3", "--out-dir", dir.str()}).code ==
        kExitImpossibleConstruction);
  CHECK(cli({"verify", "--graph-two-marked", "--k", "3", "--out-dir", dir.str()}).code == kExitSuccess);
  CHECK(cli({"verify", "--graph-generic-three", "1,2,3", "--out-dir", dir.str()}).code == kExitSuccess);
  CHECK(cli({"verify", "--graph-ring", "--r", "4", "--k", "2", "--out-dir", dir.str()}).code == kExitSuccess);
  CHECK(cli({"verify", "--graph-generic-three", "1,2", "--out-dir", dir.str()}).code == kExitInvalidConfig);
  CHECK(cli({"verify", "--out-dir", dir.str()}).code == kExitInvalidConfig);
}

TEST_CASE("cli table") {
  TempDir dir;
  CHECK(cli({"table", "--sizes", "", "--blocks", "3", "--out-dir", dir.str()}).code == kExitInvalidConfig);

  const auto r = cli({"table", "--sizes", "20,30", "--blocks", "3", "--out-dir", dir.str()});
  REQUIRE(r.code == kExitSuccess);
  std::ifstream table_file(dir.path / "table.csv");
  CHECK(read_table_csv(table_file).rows.size() == 4);
  std::ifstream ratio_file(dir.path / "table_ratios.csv");
  CHECK(read_ratio_csv(ratio_file).size() == 2);

  const auto j = cli({"table", "--sizes", "20", "--blocks", "2,3", "--coins", "grover", "--format", "json",
                      "--parallel", "--out-dir", dir.str(), "--name", "tj"});
  REQUIRE(j.code == kExitSuccess);
  std::ifstream json_file(dir.path / "tj.json");
  const TableResult t = read_table_json(json_file);
  CHECK(t.rows.size() == 2);
  CHECK(t.ratios.empty());

  CHECK(cli({"table", "--sizes", "100,200", "--blocks", "3", "--budget-seconds", "1e-9", "--out-dir", dir.str(),
             "--name", "cut"})
            .code == kExitBudgetExceeded);
  CHECK(slurp(dir.path / "cut.csv").find("truncated") != std::string::npos);
}

TEST_CASE("cli graph-sim") {
  TempDir dir;
  {
    std::ofstream edges(dir.path / "g.txt");
    edges << "# 5-cycle with a chord\n0 1\n1 2\n2 3\n3 4\n4 0\n0 2\n";
    std::ofstream marked(dir.path / "m.txt");
    marked << "3\n";
  }
  const auto r = cli({"graph-sim", "--graph", (dir.path / "g.txt").string(), "--marked",
                      (dir.path / "m.txt").string(), "--horizon", "30", "--record-overlap", "--out-dir", dir.str()});
  REQUIRE(r.code == kExitSuccess);
  const auto summary = nlohmann::json::parse(r.out);
  CHECK(summary["n"] == 5);
  CHECK(summary["k"] == 1);
  std::ifstream series(dir.path / "graph_sim_series.csv");
  const auto data = read_series_csv(series);
  CHECK(data.probability.size() == 31);
  CHECK(data.overlap.size() == 31);
  CHECK(data.probability[0] == doctest::Approx(2.0 / 12.0));

  {
    std::ofstream bad(dir.path / "bad.txt");
    bad << "0 0\n";
  }
  CHECK(cli({"graph-sim", "--graph", (dir.path / "bad.txt").string(), "--marked", (dir.path / "m.txt").string(),
             "--out-dir", dir.str()})
            .code == kExitInvalidConfig);
  CHECK(cli({"graph-sim", "--graph", (dir.path / "missing.txt").string(), "--marked",
             (dir.path / "m.txt").string(), "--out-dir", dir.str()})
            .code == kExitInvalidConfig);
}
