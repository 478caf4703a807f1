#include "qwalk/io.hpp"

#include <json.hpp>

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "qwalk/errors.hpp"

namespace qwalk {

using nlohmann::json;

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 9);
  return std::string(buf, res.ptr);
}

double parse_number(std::string_view s) {
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw Error(ErrorKind::Io, "malformed number '" + std::string(s) + "'");
  return v;
}

namespace {

int parse_int(std::string_view s) {
  int v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw Error(ErrorKind::Io, "malformed integer '" + std::string(s) + "'");
  return v;
}

double rounded(double v) { return parse_number(format_number(v)); }

std::vector<std::string> split_record(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::vector<std::vector<std::string>> read_csv(std::istream& in, const std::vector<std::string>& expected_header,
                                               std::size_t optional_trailing = 0) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::Io, "empty CSV input");
  const auto header = split_record(line);
  if (header.size() > expected_header.size() || header.size() + optional_trailing < expected_header.size() ||
      !std::equal(header.begin(), header.end(), expected_header.begin()))
    throw Error(ErrorKind::Io, "unexpected CSV header '" + line + "'");
  std::vector<std::vector<std::string>> records;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    auto fields = split_record(line);
    if (fields.size() != header.size()) throw Error(ErrorKind::Io, "CSV record has wrong field count: '" + line + "'");
    records.push_back(std::move(fields));
  }
  return records;
}

CoinScheme scheme_from(std::string_view s) {
  const auto scheme = parse_coin_scheme(s);
  if (!scheme) throw Error(ErrorKind::Io, "unknown coin scheme '" + std::string(s) + "'");
  return *scheme;
}

json parse_json(std::istream& in) {
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Io, std::string("malformed JSON: ") + e.what());
  }
}

template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Io, std::string("JSON does not match the expected schema: ") + e.what());
  }
}

json rounded_array(const std::vector<double>& values) {
  json out = json::array();
  for (double v : values) out.push_back(rounded(v));
  return out;
}

}  // namespace

void write_series_csv(std::ostream& out, const RunSeries& series) {
  const bool with_overlap = !series.overlap.empty();
  out << (with_overlap ? "step,probability,overlap\n" : "step,probability\n");
  for (std::size_t t = 0; t < series.probability.size(); ++t) {
    out << t << ',' << format_number(series.probability[t]);
    if (with_overlap) out << ',' << format_number(series.overlap[t]);
    out << '\n';
  }
}

SeriesData read_series_csv(std::istream& in) {
  SeriesData data;
  const auto records = read_csv(in, {"step", "probability", "overlap"}, 1);
  for (std::size_t t = 0; t < records.size(); ++t) {
    if (parse_int(records[t][0]) != static_cast<int>(t)) throw Error(ErrorKind::Io, "series steps are not consecutive");
    data.probability.push_back(parse_number(records[t][1]));
    if (records[t].size() == 3) data.overlap.push_back(parse_number(records[t][2]));
  }
  return data;
}

void write_series_json(std::ostream& out, const RunSeries& series) {
  json j;
  json steps = json::array();
  for (std::size_t t = 0; t < series.probability.size(); ++t) steps.push_back(t);
  j["step"] = std::move(steps);
  j["probability"] = rounded_array(series.probability);
  if (!series.overlap.empty()) j["overlap"] = rounded_array(series.overlap);
  out << j.dump() << '\n';
}

SeriesData read_series_json(std::istream& in) {
  const json j = parse_json(in);
  return guarded([&] {
    SeriesData data;
    data.probability = j.at("probability").get<std::vector<double>>();
    if (j.contains("overlap")) data.overlap = j.at("overlap").get<std::vector<double>>();
    return data;
  });
}

RunSummary summarize(int n, int k, CoinScheme scheme, const RunSeries& series) {
  RunSummary s;
  s.n = n;
  s.k = k;
  s.scheme = scheme;
  s.peak_step = series.peak_step;
  s.peak_probability = series.peak_probability;
  if (series.peak_probability > 0) s.runtime = runtime_metric(series.peak_step, series.peak_probability);
  s.stop_rule = series.rule_used;
  s.horizon = series.horizon;
  const Peak argmax = detect_peak(series.probability);
  s.argmax_step = argmax.step;
  s.argmax_probability = argmax.probability;
  return s;
}

void write_summary_json(std::ostream& out, const RunSummary& s) {
  json j;
  j["n"] = s.n;
  j["k"] = s.k;
  j["scheme"] = std::string(name_of(s.scheme));
  j["peak_step"] = s.peak_step;
  j["peak_probability"] = rounded(s.peak_probability);
  j["runtime"] = s.runtime ? json(rounded(*s.runtime)) : json(nullptr);
  j["stop_rule"] = std::string(name_of(s.stop_rule));
  j["horizon"] = s.horizon;
  j["argmax_step"] = s.argmax_step;
  j["argmax_probability"] = rounded(s.argmax_probability);
  out << j.dump(2) << '\n';
}

RunSummary read_summary_json(std::istream& in) {
  const json j = parse_json(in);
  return guarded([&] {
    RunSummary s;
    s.n = j.at("n").get<int>();
    s.k = j.at("k").get<int>();
    s.scheme = scheme_from(j.at("scheme").get<std::string>());
    s.peak_step = j.at("peak_step").get<int>();
    s.peak_probability = j.at("peak_probability").get<double>();
    if (!j.at("runtime").is_null()) s.runtime = j.at("runtime").get<double>();
    const auto rule = parse_stopping_rule(j.value("stop_rule", std::string("overlap-crossing")));
    if (!rule) throw Error(ErrorKind::Io, "unknown stop rule");
    s.stop_rule = *rule;
    s.horizon = j.value("horizon", 0);
    s.argmax_step = j.value("argmax_step", 0);
    s.argmax_probability = j.value("argmax_probability", 0.0);
    return s;
  });
}

void write_table_csv(std::ostream& out, const TableResult& table) {
  out << "n,k,scheme,steps,probability,runtime,status\n";
  for (const TableRow& r : table.rows)
    out << r.n << ',' << r.k << ',' << name_of(r.scheme) << ',' << r.steps << ',' << format_number(r.probability)
        << ',' << format_number(r.runtime) << ",ok\n";
  for (const SkippedCell& c : table.skipped) out << c.n << ',' << c.k << ',' << name_of(c.scheme) << ",,,,truncated\n";
}

void write_ratio_csv(std::ostream& out, const std::vector<RatioRow>& ratios) {
  out << "n,k,akr_runtime,grover_runtime,ratio\n";
  for (const RatioRow& r : ratios)
    out << r.n << ',' << r.k << ',' << format_number(r.akr_runtime) << ',' << format_number(r.grover_runtime) << ','
        << format_number(r.ratio) << '\n';
}

TableResult read_table_csv(std::istream& in) {
  TableResult table;
  for (const auto& f : read_csv(in, {"n", "k", "scheme", "steps", "probability", "runtime", "status"})) {
    if (f[6] == "ok") {
      table.rows.push_back({parse_int(f[0]), parse_int(f[1]), scheme_from(f[2]), parse_int(f[3]), parse_number(f[4]),
                            parse_number(f[5])});
    } else if (f[6] == "truncated") {
      table.skipped.push_back({parse_int(f[0]), parse_int(f[1]), scheme_from(f[2])});
      table.truncated = true;
    } else {
      throw Error(ErrorKind::Io, "unknown table row status '" + f[6] + "'");
    }
  }
  return table;
}

std::vector<RatioRow> read_ratio_csv(std::istream& in) {
  std::vector<RatioRow> ratios;
  for (const auto& f : read_csv(in, {"n", "k", "akr_runtime", "grover_runtime", "ratio"}))
    ratios.push_back({parse_int(f[0]), parse_int(f[1]), parse_number(f[2]), parse_number(f[3]), parse_number(f[4])});
  return ratios;
}

void write_table_json(std::ostream& out, const TableResult& table) {
  json j;
  j["rows"] = json::array();
  for (const TableRow& r : table.rows)
    j["rows"].push_back({{"n", r.n},
                         {"k", r.k},
                         {"scheme", std::string(name_of(r.scheme))},
                         {"steps", r.steps},
                         {"probability", rounded(r.probability)},
                         {"runtime", rounded(r.runtime)}});
  j["ratios"] = json::array();
  for (const RatioRow& r : table.ratios)
    j["ratios"].push_back({{"n", r.n},
                           {"k", r.k},
                           {"akr_runtime", rounded(r.akr_runtime)},
                           {"grover_runtime", rounded(r.grover_runtime)},
                           {"ratio", rounded(r.ratio)}});
  j["truncated"] = table.truncated;
  j["skipped"] = json::array();
  for (const SkippedCell& c : table.skipped)
    j["skipped"].push_back({{"n", c.n}, {"k", c.k}, {"scheme", std::string(name_of(c.scheme))}});
  out << j.dump(2) << '\n';
}

TableResult read_table_json(std::istream& in) {
  const json j = parse_json(in);
  return guarded([&] {
    TableResult t;
    for (const json& r : j.at("rows"))
      t.rows.push_back({r.at("n").get<int>(), r.at("k").get<int>(), scheme_from(r.at("scheme").get<std::string>()),
                        r.at("steps").get<int>(), r.at("probability").get<double>(), r.at("runtime").get<double>()});
    for (const json& r : j.at("ratios"))
      t.ratios.push_back({r.at("n").get<int>(), r.at("k").get<int>(), r.at("akr_runtime").get<double>(),
                          r.at("grover_runtime").get<double>(), r.at("ratio").get<double>()});
    t.truncated = j.at("truncated").get<bool>();
    for (const json& c : j.at("skipped"))
      t.skipped.push_back({c.at("n").get<int>(), c.at("k").get<int>(), scheme_from(c.at("scheme").get<std::string>())});
    return t;
  });
}

void write_state_json(std::ostream& out, const StationaryCandidate<double>& c) {
  json j;
  j["n"] = c.state.n();
  j["baseline"] = c.baseline;
  j["basis"] = "x-major, then y, then direction U,D,L,R";
  j["marked"] = json::array();
  for (const Cell& cell : c.marked.cells()) j["marked"].push_back({cell.x, cell.y});
  const auto& v = c.state.values();
  j["amplitudes"] = std::vector<double>(v.data(), v.data() + v.size());
  out << j.dump() << '\n';
}

StationaryCandidate<double> read_state_json(std::istream& in) {
  const json j = parse_json(in);
  return guarded([&] {
    const int n = j.at("n").get<int>();
    const auto amps = j.at("amplitudes").get<std::vector<double>>();
    std::vector<Cell> cells;
    for (const json& c : j.at("marked")) cells.push_back({c.at(0).get<int>(), c.at(1).get<int>()});
    GridState<double>::Array values = Eigen::Map<const GridState<double>::Array>(amps.data(), static_cast<Eigen::Index>(amps.size()));
    return StationaryCandidate<double>{GridState<double>(n, std::move(values)), MarkedSet(n, cells),
                                       j.at("baseline").get<double>()};
  });
}

}  // namespace qwalk
