#include "qwalk/graph.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <sstream>
#include <string>

#include "qwalk/errors.hpp"

namespace qwalk {

Graph Graph::from_edges(int vertex_count, std::span<const Edge> edges) {
  if (vertex_count < 0) throw Error(ErrorKind::InvalidGraph, "negative vertex count");
  std::vector<std::vector<int>> adjacency(static_cast<std::size_t>(vertex_count));
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count)
      throw Error(ErrorKind::InvalidGraph, "edge (" + std::to_string(u) + "," + std::to_string(v) +
                                               ") references a vertex outside 0.." + std::to_string(vertex_count - 1));
    if (u == v) throw Error(ErrorKind::InvalidGraph, "self-loop at vertex " + std::to_string(u));
    adjacency[u].push_back(v);
    adjacency[v].push_back(u);
  }

  Graph g;
  g.offsets_.assign(1, 0);
  for (int v = 0; v < vertex_count; ++v) {
    auto& nb = adjacency[v];
    std::sort(nb.begin(), nb.end());
    if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
      throw Error(ErrorKind::InvalidGraph, "parallel edges at vertex " + std::to_string(v));
    g.targets_.insert(g.targets_.end(), nb.begin(), nb.end());
    g.sources_.insert(g.sources_.end(), nb.size(), v);
    g.offsets_.push_back(g.targets_.size());
  }
  g.partner_.resize(g.targets_.size());
  for (std::size_t a = 0; a < g.targets_.size(); ++a) g.partner_[a] = g.arc(g.targets_[a], g.sources_[a]);
  return g;
}

std::size_t Graph::arc(int from, int to) const {
  if (from < 0 || from >= vertex_count())
    throw Error(ErrorKind::InvalidArgument, "vertex " + std::to_string(from) + " out of range");
  const auto nb = neighbors(from);
  const auto it = std::lower_bound(nb.begin(), nb.end(), to);
  if (it == nb.end() || *it != to)
    throw Error(ErrorKind::InvalidArgument,
                "vertices " + std::to_string(from) + " and " + std::to_string(to) + " are not adjacent");
  return offsets_[from] + static_cast<std::size_t>(it - nb.begin());
}

bool Graph::has_isolated_vertex() const noexcept {
  for (int v = 0; v < vertex_count(); ++v)
    if (degree(v) == 0) return true;
  return false;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (std::size_t a = 0; a < targets_.size(); ++a)
    if (sources_[a] < targets_[a]) out.emplace_back(sources_[a], targets_[a]);
  return out;
}

Graph torus_graph(int n) {
  if (n < 3) throw Error(ErrorKind::InvalidSize, "torus graph needs n >= 3 to avoid parallel edges");
  std::vector<Edge> edges;
  edges.reserve(2 * static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      edges.emplace_back(x * n + y, ((x + 1) % n) * n + y);
      edges.emplace_back(x * n + y, x * n + (y + 1) % n);
    }
  return Graph::from_edges(n * n, edges);
}

MarkedVertices::MarkedVertices(int vertex_count, std::span<const int> ids)
    : mask_(static_cast<std::size_t>(vertex_count), 0) {
  for (int v : ids) {
    if (v < 0 || v >= vertex_count)
      throw Error(ErrorKind::InvalidArgument, "marked vertex " + std::to_string(v) + " is not in the graph");
    if (mask_[v] == 0) {
      mask_[v] = 1;
      ids_.push_back(v);
    }
  }
  std::sort(ids_.begin(), ids_.end());
}

namespace {

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

Graph read_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  int max_id = -1;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = strip_comment(line);
    if (blank(body)) continue;
    std::istringstream fields(body);
    long long u = 0, v = 0;
    std::string extra;
    if (!(fields >> u >> v) || (fields >> extra) || u < 0 || v < 0 || u > 1 << 30 || v > 1 << 30)
      throw Error(ErrorKind::Io, "edge list line " + std::to_string(line_no) + ": expected two vertex ids");
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    max_id = std::max({max_id, static_cast<int>(u), static_cast<int>(v)});
  }
  return Graph::from_edges(max_id + 1, edges);
}

std::vector<int> read_vertex_ids(std::istream& in) {
  std::vector<int> ids;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = strip_comment(line);
    if (blank(body)) continue;
    std::istringstream fields(body);
    long long v = 0;
    std::string extra;
    if (!(fields >> v) || (fields >> extra) || v < 0 || v > 1 << 30)
      throw Error(ErrorKind::Io, "vertex id file line " + std::to_string(line_no) + ": expected one vertex id");
    ids.push_back(static_cast<int>(v));
  }
  return ids;
}

}  // namespace qwalk
