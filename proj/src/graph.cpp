#include "majority/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include "majority/errors.hpp"
#include "majority/rng.hpp"

namespace majority {

void ModelParams::validate() const {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ParameterError("p must lie in [0, 1], got " + std::to_string(p));
  }
  if (delta < 0 || 2 * delta > static_cast<std::int64_t>(n)) {
    throw ParameterError("delta must lie in [0, n/2], got " +
                         std::to_string(delta));
  }
}

Graph build_from_ordered_edges(std::uint32_t n, std::span<const Edge> edges) {
  Graph g;
  g.n_ = n;
  g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& [hi, lo] : edges) {
    ++g.offsets_[hi + 1];
    ++g.offsets_[lo + 1];
  }
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] += g.offsets_[v];

  // Edges arrive ordered by (hi, lo). For a vertex x, its lower neighbors are
  // appended while hi == x (increasing lo) and its higher neighbors after
  // that (increasing hi), so every row comes out sorted.
  g.adjacency_.resize(2 * edges.size());
  std::vector<std::uint64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [hi, lo] : edges) {
    g.adjacency_[cursor[hi]++] = lo;
    g.adjacency_[cursor[lo]++] = hi;
  }
  return g;
}

Graph Graph::from_edge_list(std::uint32_t n, std::span<const Edge> edges) {
  std::vector<Edge> ordered;
  ordered.reserve(edges.size());
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw ValidationError("edge (" + std::to_string(u) + ", " +
                            std::to_string(v) + ") has an endpoint outside [0, " +
                            std::to_string(n) + ")");
    }
    if (u == v) {
      throw ValidationError("self-loop at vertex " + std::to_string(u));
    }
    ordered.emplace_back(std::max(u, v), std::min(u, v));
  }
  std::sort(ordered.begin(), ordered.end());
  auto dup = std::adjacent_find(ordered.begin(), ordered.end());
  if (dup != ordered.end()) {
    throw ValidationError("duplicate edge {" + std::to_string(dup->second) +
                          ", " + std::to_string(dup->first) + "}");
  }
  return build_from_ordered_edges(n, ordered);
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  if (u >= n_ || v >= n_) return false;
  auto row = neighbors(u);
  return std::binary_search(row.begin(), row.end(), v);
}

bool Graph::is_valid() const {
  if (offsets_.size() != static_cast<std::size_t>(n_) + 1) return false;
  if (offsets_.front() != 0 || offsets_.back() != adjacency_.size()) return false;
  if (adjacency_.size() % 2 != 0) return false;
  for (Vertex v = 0; v < n_; ++v) {
    if (offsets_[v] > offsets_[v + 1]) return false;
    auto row = neighbors(v);
    for (std::size_t i = 0; i < row.size(); ++i) {
      const Vertex u = row[i];
      if (u >= n_ || u == v) return false;
      if (i > 0 && row[i - 1] >= u) return false;
      if (!adjacent(u, v)) return false;
    }
  }
  return true;
}

namespace {

// Batagelj-Brandes geometric skipping: walks the lower-triangular pair index
// (v, w), w < v, jumping over Geometric(p) runs of absent pairs.
std::vector<Edge> sparse_edges(std::uint32_t n, double p, Rng& rng) {
  std::vector<Edge> edges;
  const double pairs = 0.5 * static_cast<double>(n) * (n - 1.0);
  const double expected = pairs * p;
  edges.reserve(static_cast<std::size_t>(expected + 6.0 * std::sqrt(expected) + 16));

  const double log_q = std::log1p(-p);
  std::int64_t v = 1;
  std::int64_t w = -1;
  const auto nn = static_cast<std::int64_t>(n);
  while (v < nn) {
    const double r = std::log(1.0 - uniform01(rng)) / log_q;
    // r can be astronomically large when p is tiny; anything past the end of
    // the pair index terminates the walk.
    if (r >= static_cast<double>(std::numeric_limits<std::int64_t>::max() / 4)) break;
    w += 1 + static_cast<std::int64_t>(r);
    while (w >= v && v < nn) {
      w -= v;
      ++v;
    }
    if (v < nn) edges.emplace_back(static_cast<Vertex>(v), static_cast<Vertex>(w));
  }
  return edges;
}

std::vector<Edge> dense_edges(std::uint32_t n, double p, Rng& rng) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) {
    for (Vertex w = 0; w < v; ++w) {
      if (p >= 1.0 || uniform01(rng) < p) edges.emplace_back(v, w);
    }
  }
  return edges;
}

}  // namespace

Graph generate_gnp(std::uint32_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ParameterError("edge probability must lie in [0, 1], got " +
                         std::to_string(p));
  }
  if (n < 2 || p == 0.0) return build_from_ordered_edges(n, {});
  Rng rng = make_rng(seed);
  auto edges = p < kSparseCutoff ? sparse_edges(n, p, rng) : dense_edges(n, p, rng);
  return build_from_ordered_edges(n, edges);
}

GraphStats graph_stats(const Graph& g) {
  GraphStats s;
  s.edge_count = g.edge_count();
  const std::uint32_t n = g.vertex_count();
  if (n == 0) return s;
  s.min_degree = std::numeric_limits<std::uint32_t>::max();
  for (Vertex v = 0; v < n; ++v) {
    s.min_degree = std::min(s.min_degree, g.degree(v));
    s.max_degree = std::max(s.max_degree, g.degree(v));
  }
  s.mean_degree = 2.0 * static_cast<double>(s.edge_count) / n;
  return s;
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    for (Vertex v : g.neighbors(u)) {
      if (u < v) out << u << ' ' << v << '\n';
    }
  }
}

Graph read_edge_list(std::istream& in) {
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  if (!(in >> n >> m)) throw ValidationError("edge list: missing \"n m\" header");
  if (n > std::numeric_limits<std::uint32_t>::max()) {
    throw ValidationError("edge list: vertex count too large");
  }
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    std::uint64_t u = 0;
    std::uint64_t v = 0;
    if (!(in >> u >> v)) {
      throw ValidationError("edge list: expected " + std::to_string(m) +
                            " edges, got " + std::to_string(i));
    }
    if (u >= v) throw ValidationError("edge list: line must satisfy u < v");
    if (v >= n) throw ValidationError("edge list: endpoint out of range");
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  std::string trailing;
  if (in >> trailing) throw ValidationError("edge list: trailing content");
  return Graph::from_edge_list(static_cast<std::uint32_t>(n), edges);
}

}  // namespace majority
