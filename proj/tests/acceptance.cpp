// Acceptance checks. One PASS/FAIL line per criterion; nonzero exit on any failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qwalk/dense_oracle.hpp"
#include "qwalk/experiment.hpp"
#include "qwalk/graph_stationary.hpp"
#include "qwalk/graph_walk.hpp"
#include "qwalk/grid_ops.hpp"
#include "qwalk/stationary_grid.hpp"
#include "test_support.hpp"

using namespace qwalk;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool condition, const std::string& what) {
    if (!condition) {
      if (ok) detail = what;
      ok = false;
    }
  }
};

std::string fmt(const char* pattern, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

const TableRow* find_row(const TableResult& t, int n, int k, CoinScheme scheme) {
  for (const TableRow& r : t.rows)
    if (r.n == n && r.k == k && r.scheme == scheme) return &r;
  return nullptr;
}

void expect_row(Check& c, const TableResult& t, int n, CoinScheme scheme, int steps, int step_tol, double p) {
  const TableRow* r = find_row(t, n, 9, scheme);
  if (!r) {
    c.expect(false, fmt("missing row n=%d %s", n, std::string(name_of(scheme)).c_str()));
    return;
  }
  c.expect(std::abs(r->steps - steps) <= step_tol,
           fmt("n=%d %s steps %d, expected %d", n, std::string(name_of(scheme)).c_str(), r->steps, steps));
  c.expect(std::abs(r->probability - p) <= 1e-3,
           fmt("n=%d %s probability %.6f, expected %.6f", n, std::string(name_of(scheme)).c_str(), r->probability, p));
}

Check table_n100() {
  Check c;
  TableConfig config;
  config.sizes = {100};
  config.block_sides = {3};
  const TableResult t = reproduce_tables(config);
  expect_row(c, t, 100, CoinScheme::Akr, 156, 2, 0.086454);
  expect_row(c, t, 100, CoinScheme::Grover, 318, 2, 0.556187);
  if (const TableRow* r = find_row(t, 100, 9, CoinScheme::Akr))
    c.expect(std::abs(r->runtime - 531) <= 0.01 * 531, fmt("AKR runtime %.2f", r->runtime));
  if (const TableRow* r = find_row(t, 100, 9, CoinScheme::Grover))
    c.expect(std::abs(r->runtime - 427) <= 0.01 * 427, fmt("Grover runtime %.2f", r->runtime));
  return c;
}

Check table_n200() {
  Check c;
  TableConfig config;
  config.sizes = {200};
  config.block_sides = {3};
  const TableResult t = reproduce_tables(config);
  expect_row(c, t, 200, CoinScheme::Akr, 345, 3, 0.066591);
  expect_row(c, t, 200, CoinScheme::Grover, 653, 3, 0.527665);
  return c;
}

Check ratios_n100() {
  Check c;
  TableConfig config;
  config.sizes = {100};
  config.block_sides = {3, 5, 7, 9};
  const TableResult t = reproduce_tables(config);
  const std::vector<std::pair<int, double>> expected{{9, 1.2436}, {25, 1.0165}, {49, 0.7710}, {81, 0.6246}};
  for (const auto& [k, ratio] : expected) {
    const auto it = std::find_if(t.ratios.begin(), t.ratios.end(), [k = k](const RatioRow& r) { return r.k == k; });
    if (it == t.ratios.end()) {
      c.expect(false, fmt("missing ratio k=%d", k));
      continue;
    }
    c.expect(std::abs(it->ratio - ratio) <= 0.01 * ratio, fmt("k=%d ratio %.4f, expected %.4f", k, it->ratio, ratio));
  }
  return c;
}

Check stationary_constructions() {
  Check c;
  int checked = 0;
  for (int n : {8, 10, 12}) {
    const double a = 1.0 / (2.0 * n);
    for (int m = 1; m <= 6; ++m)
      for (int l = 1; l <= 6; ++l) {
        const BlockSpec block = centered_block(n, m, l);
        if (m % 2 == 1 && l % 2 == 1) {
          bool threw = false;
          try {
            build_block_layered(n, block, a);
          } catch (const Error& e) {
            threw = e.kind() == ErrorKind::OddOddImpossible;
          }
          c.expect(threw, fmt("%dx%d on n=%d did not report an impossible construction", m, l, n));
          c.expect(enumerate_domino_tilings(m, l).empty(), fmt("%dx%d has a domino tiling", m, l));
          continue;
        }
        const auto layered = build_block_layered(n, block, a);
        const double layered_residual = step_residual(layered.state, CoinScheme::Grover, layered.marked);
        c.expect(layered_residual <= 1e-12, fmt("layered %dx%d n=%d residual %.3e", m, l, n, layered_residual));
        for (const Tiling& tiling : enumerate_domino_tilings(m, l)) {
          const auto tiled = build_block_tiling(n, block, a, tiling);
          const double r = step_residual(tiled.state, CoinScheme::Grover, tiled.marked);
          c.expect(r <= 1e-12, fmt("tiled %dx%d n=%d residual %.3e", m, l, n, r));
          ++checked;
        }
      }
  }
  c.expect(checked > 0, "no tilings checked");
  return c;
}

Check exceptional_2x2() {
  Check c;
  const int n = 100;
  const BlockSpec block = centered_block(n, 2, 2);
  const auto candidate = build_block_layered(n, block, 1.0 / (2.0 * n));
  const double delta2 = decompose_initial(n, candidate).moving_norm2;
  RunOptions o;
  o.horizon = 10000;
  const RunSeries s = run_walk(n, MarkedSet::from_block(n, block), CoinScheme::Grover, o);
  const double lowest = *std::min_element(s.overlap.begin(), s.overlap.end());
  const double highest = *std::max_element(s.probability.begin(), s.probability.end());
  c.expect(lowest >= 1 - 2 * delta2, fmt("overlap fell to %.6f, bound %.6f", lowest, 1 - 2 * delta2));
  c.expect(highest <= 0.01, fmt("marked probability reached %.6f", highest));
  return c;
}

Check oracle_equivalence() {
  Check c;
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> side(2, 6);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = side(rng);
    const MarkedSet marked = testing::random_marked(n, rng);
    const GridState<double> s = testing::random_unit_state(n, rng);
    for (CoinScheme scheme : {CoinScheme::Akr, CoinScheme::Grover}) {
      const Eigen::VectorXd dense = dense_step_matrix<double>(n, scheme, marked) * s.values().matrix();
      GridState<double> fast = s;
      step(fast, scheme, marked);
      const double err = (dense - fast.values().matrix()).norm();
      c.expect(err <= 1e-12, fmt("grid trial %d n=%d error %.3e", trial, n, err));
    }
  }
  std::uniform_int_distribution<int> vertex_count(2, 25);
  for (int trial = 0; trial < 50; ++trial) {
    const int v = vertex_count(rng);
    const Graph g = testing::random_graph(v, 0.3, 200, rng);
    const MarkedVertices marked(v, testing::random_vertices(v, rng));
    std::normal_distribution<double> gauss;
    ArcVector<double> s(static_cast<Eigen::Index>(g.arc_count()));
    for (Eigen::Index i = 0; i < s.size(); ++i) s[i] = gauss(rng);
    s.normalize();
    for (CoinScheme scheme : {CoinScheme::Akr, CoinScheme::Grover}) {
      const ArcVector<double> dense = graph_dense_step_matrix<double>(g, marked, scheme) * s;
      ArcVector<double> fast = s;
      graph_step(fast, g, marked, scheme);
      const double err = (dense - fast).norm();
      c.expect(err <= 1e-12, fmt("graph trial %d error %.3e", trial, err));
    }
  }
  return c;
}

void expect_witness(Check& c, const GraphWitness<double>& w, const std::string& label) {
  c.expect(check_graph_conditions(w).all(), label + " violates the stationarity conditions");
  const double r = graph_step_residual(w.graph, w.marked, w.state, CoinScheme::Grover);
  c.expect(r <= 1e-12, fmt("%s residual %.3e", label.c_str(), r));
}

Check graph_witnesses() {
  Check c;
  for (int k = 1; k <= 5; ++k) expect_witness(c, build_two_marked<double>(k), fmt("two-marked k=%d", k));
  const GenericThreeSpec spec{1, 2, 3};
  c.expect(spec.m1() == 4 && spec.m2() == 3 && spec.m3() == 5, "generic spec degrees");
  expect_witness(c, build_generic_three<double>(spec), "generic (1,2,3)");
  for (int r : {2, 3, 4})
    for (int k = 1; k <= 4; ++k) expect_witness(c, build_symmetric_ring<double>(r, k), fmt("ring r=%d k=%d", r, k));
  return c;
}

Check norm_and_determinism() {
  Check c;
  const int n = 100;
  const MarkedSet marked = MarkedSet::from_block(n, centered_block(n, 3, 3));
  for (CoinScheme scheme : {CoinScheme::Akr, CoinScheme::Grover}) {
    GridState<double> s = uniform_state<double>(n);
    GridWalker<double> walker(n);
    double drift = 0;
    for (int t = 0; t < 10000; ++t) {
      walker.step(s, scheme, marked);
      drift = std::max(drift, std::abs(s.squared_norm() - 1));
    }
    c.expect(drift <= 1e-9, fmt("%s norm drift %.3e", std::string(name_of(scheme)).c_str(), drift));
  }
  RunOptions o;
  o.horizon = 2000;
  const RunSeries first = run_walk(n, marked, CoinScheme::Grover, o);
  const RunSeries second = run_walk(n, marked, CoinScheme::Grover, o);
  c.expect(first.probability == second.probability && first.overlap == second.overlap, "reruns differ");
  return c;
}

Check selectivity() {
  Check c;
  const int n = 100;
  const MarkedSet big = MarkedSet::from_block(n, BlockSpec{{49, 49}, 3, 3});
  const MarkedSet small = MarkedSet::from_block(n, BlockSpec{{24, 24}, 2, 2});
  const MarkedSet both = big.merged(small);
  RunOptions o;
  o.horizon = 500;
  const RunSeries s = run_walk(n, both, CoinScheme::Grover, o);
  GridState<double> state = uniform_state<double>(n);
  GridWalker<double> walker(n);
  for (int t = 0; t < s.peak_step; ++t) walker.step(state, CoinScheme::Grover, both);
  const double p_big = marked_probability(state, big);
  const double p_small = marked_probability(state, small);
  c.expect(p_big / 9 >= 10 * p_small,
           fmt("3x3 per-cell mass %.4e vs 2x2 mass %.4e at step %d", p_big / 9, p_small, s.peak_step));
  c.expect(p_big > 0.4, fmt("3x3 mass %.4f at step %d", p_big, s.peak_step));
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Check()>>> criteria{
      {"3x3 block at n=100: steps, probability and runtime for both coins", table_n100},
      {"3x3 block at n=200: steps and probability for both coins", table_n200},
      {"AKR/Grover runtime ratios at n=100 for k = 9, 25, 49, 81", ratios_n100},
      {"layered and tiled stationary states for blocks up to 6x6; odd x odd rejected", stationary_constructions},
      {"2x2 block stays near the initial state for 10^4 steps", exceptional_2x2},
      {"matrix-free step matches the dense oracle on grids and graphs", oracle_equivalence},
      {"graph witnesses are stationary", graph_witnesses},
      {"norm preserved over 10^4 steps; reruns are bit-identical", norm_and_determinism},
      {"3x3 block is found while a coexisting 2x2 block is not", selectivity},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s [%zu] %s", c.ok ? "PASS" : "FAIL", i + 1, criteria[i].first);
    if (!c.ok) std::printf(" (%s)", c.detail.c_str());
    std::printf("\n");
    std::fflush(stdout);
    failures += c.ok ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
