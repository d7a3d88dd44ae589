#include "mmc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "mmc/errors.hpp"

namespace mmc {
namespace {

void build_csr(int n, const std::vector<Edge>& edges, bool by_tail,
               std::vector<int>& offset, std::vector<EdgeId>& list) {
  offset.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const Edge& e : edges) ++offset[static_cast<std::size_t>(by_tail ? e.tail : e.head) + 1];
  for (int v = 0; v < n; ++v) offset[v + 1] += offset[v];
  list.assign(edges.size(), 0);
  std::vector<int> fill(offset.begin(), offset.end() - 1);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Vertex key = by_tail ? edges[i].tail : edges[i].head;
    list[static_cast<std::size_t>(fill[key]++)] = static_cast<EdgeId>(i);
  }
  for (int v = 0; v < n; ++v) {
    auto first = list.begin() + offset[v];
    auto last = list.begin() + offset[v + 1];
    std::sort(first, last, [&](EdgeId a, EdgeId b) {
      return by_tail ? edges[a].head < edges[b].head : edges[a].tail < edges[b].tail;
    });
  }
}

}  // namespace

WeightedDigraph::WeightedDigraph(int num_vertices, std::vector<Edge> edges)
    : n_(num_vertices), edges_(std::move(edges)) {
  if (n_ < 0) throw InvalidGraph("negative vertex count");
  if (edges_.size() > static_cast<std::size_t>(std::numeric_limits<EdgeId>::max())) {
    throw InvalidGraph("too many edges");
  }
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.tail < 0 || e.tail >= n_ || e.head < 0 || e.head >= n_) {
      std::ostringstream msg;
      msg << "edge " << i << " (" << e.tail << "," << e.head
          << ") has an endpoint outside [0," << n_ << ")";
      throw InvalidGraph(msg.str());
    }
    if (!std::isfinite(e.weight)) {
      throw InvalidGraph("edge " + std::to_string(i) + " has a non-finite weight");
    }
  }
  build_csr(n_, edges_, true, out_offset_, out_list_);
  build_csr(n_, edges_, false, in_offset_, in_list_);
  for (Vertex v = 0; v < n_; ++v) {
    auto out = out_edges(v);
    for (std::size_t k = 1; k < out.size(); ++k) {
      if (edges_[out[k]].head == edges_[out[k - 1]].head) {
        std::ostringstream msg;
        msg << "duplicate edge (" << v << "," << edges_[out[k]].head
            << ") at input lines " << out[k - 1] << " and " << out[k];
        throw InvalidGraph(msg.str());
      }
    }
  }
  w_max_ = 0.0;
  w_min_ = edges_.empty() ? 0.0 : std::numeric_limits<double>::infinity();
  for (const Edge& e : edges_) {
    w_max_ = std::max(w_max_, std::abs(e.weight));
    w_min_ = std::min(w_min_, e.weight);
  }
}

std::span<const EdgeId> WeightedDigraph::out_edges(Vertex v) const {
  return std::span<const EdgeId>(out_list_).subspan(
      static_cast<std::size_t>(out_offset_[v]),
      static_cast<std::size_t>(out_offset_[v + 1] - out_offset_[v]));
}

std::span<const EdgeId> WeightedDigraph::in_edges(Vertex v) const {
  return std::span<const EdgeId>(in_list_).subspan(
      static_cast<std::size_t>(in_offset_[v]),
      static_cast<std::size_t>(in_offset_[v + 1] - in_offset_[v]));
}

int WeightedDigraph::out_degree(Vertex v) const {
  return out_offset_[v + 1] - out_offset_[v];
}

int WeightedDigraph::in_degree(Vertex v) const {
  return in_offset_[v + 1] - in_offset_[v];
}

std::optional<EdgeId> WeightedDigraph::find_edge(Vertex u, Vertex v) const {
  if (u < 0 || u >= n_ || v < 0 || v >= n_) return std::nullopt;
  auto out = out_edges(u);
  auto it = std::lower_bound(out.begin(), out.end(), v,
                             [&](EdgeId e, Vertex h) { return edges_[e].head < h; });
  if (it == out.end() || edges_[*it].head != v) return std::nullopt;
  return *it;
}

bool WeightedDigraph::adjacency_consistent() const {
  std::vector<int> in_count(static_cast<std::size_t>(n_), 0);
  for (Vertex v = 0; v < n_; ++v) {
    for (EdgeId e : out_edges(v)) {
      if (edges_[e].tail != v) return false;
      ++in_count[edges_[e].head];
    }
  }
  for (Vertex v = 0; v < n_; ++v) {
    if (in_count[v] != in_degree(v)) return false;
    for (EdgeId e : in_edges(v)) {
      if (edges_[e].head != v) return false;
    }
  }
  return true;
}

std::optional<OracleEdge> GraphOracles::out_edge(Vertex v, int k) const {
  if (k < 0 || k >= g_->out_degree(v)) return std::nullopt;
  const EdgeId e = g_->out_edges(v)[static_cast<std::size_t>(k)];
  return OracleEdge{e, v, g_->head(e)};
}

std::optional<OracleEdge> GraphOracles::in_edge(Vertex v, int k) const {
  if (k < 0 || k >= g_->in_degree(v)) return std::nullopt;
  const EdgeId e = g_->in_edges(v)[static_cast<std::size_t>(k)];
  return OracleEdge{e, g_->tail(e), v};
}

std::optional<double> GraphOracles::weight(Vertex u, Vertex v) const {
  auto e = g_->find_edge(u, v);
  if (!e) return std::nullopt;
  return g_->weight(*e);
}

WeightedDigraph read_edge_list(std::istream& in) {
  std::string line;
  auto next_line = [&](std::size_t& lineno) -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      auto pos = line.find_first_not_of(" \t\r");
      if (pos == std::string::npos || line[pos] == '#') continue;
      return true;
    }
    return false;
  };
  std::size_t lineno = 0;
  if (!next_line(lineno)) throw InvalidGraph("empty edge-list input");
  long long n = -1, m = -1;
  {
    std::istringstream hdr(line);
    if (!(hdr >> n >> m) || n < 0 || m < 0) {
      throw InvalidGraph("line " + std::to_string(lineno) + ": expected header \"n m\"");
    }
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!next_line(lineno)) {
      throw InvalidGraph("expected " + std::to_string(m) + " edges, found " +
                         std::to_string(i));
    }
    std::istringstream row(line);
    long long u = 0, v = 0;
    double w = 0.0;
    std::string extra;
    if (!(row >> u >> v >> w) || (row >> extra)) {
      throw InvalidGraph("line " + std::to_string(lineno) + ": expected \"u v w\"");
    }
    if (u < 0 || u >= n || v < 0 || v >= n) {
      throw InvalidGraph("line " + std::to_string(lineno) + ": endpoint out of range");
    }
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), w});
  }
  if (next_line(lineno)) {
    throw InvalidGraph("line " + std::to_string(lineno) + ": trailing data after edges");
  }
  return WeightedDigraph(static_cast<int>(n), std::move(edges));
}

WeightedDigraph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidGraph("cannot open " + path);
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const WeightedDigraph& g) {
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  out << std::setprecision(17);
  for (const Edge& e : g.edges()) {
    out << e.tail << ' ' << e.head << ' ' << e.weight << '\n';
  }
}

}  // namespace mmc
