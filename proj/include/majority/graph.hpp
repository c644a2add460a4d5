#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace majority {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

// Parameters of one G(n, p) instance with a fixed initial advantage.
struct ModelParams {
  std::uint32_t n = 0;
  double p = 0.0;
  std::int64_t delta = 0;
  std::uint64_t seed = 0;

  // Throws ParameterError unless 0 <= p <= 1 and 0 <= delta <= n/2.
  void validate() const;
};

// Immutable simple undirected graph in compressed sparse row form. Every
// neighbor list is strictly increasing, so two neighborhoods can be merged
// in O(d(u) + d(v)).
class Graph {
 public:
  Graph() = default;

  // Exactly the given edges. Throws ValidationError on self-loops, repeated
  // pairs (in either orientation) and out-of-range endpoints.
  static Graph from_edge_list(std::uint32_t n, std::span<const Edge> edges);

  std::uint32_t vertex_count() const { return n_; }
  std::uint64_t edge_count() const { return adjacency_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {adjacency_.data() + offsets_[v],
            adjacency_.data() + offsets_[v + 1]};
  }
  std::uint32_t degree(Vertex v) const {
    return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
  }
  bool adjacent(Vertex u, Vertex v) const;

  std::span<const std::uint64_t> offsets() const { return offsets_; }
  std::span<const Vertex> adjacency() const { return adjacency_; }

  // Walks the structure and checks symmetry, sortedness, absence of loops
  // and duplicates, and offset consistency.
  bool is_valid() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  friend Graph build_from_ordered_edges(std::uint32_t n,
                                        std::span<const Edge> edges);

  std::uint32_t n_ = 0;
  std::vector<std::uint64_t> offsets_{0};
  std::vector<Vertex> adjacency_;
};

// Builds a graph from edges given as (hi, lo) with hi > lo, sorted
// lexicographically and free of duplicates. No validation.
Graph build_from_ordered_edges(std::uint32_t n, std::span<const Edge> edges);

// Probabilities below this use geometric skipping over the pair index;
// denser graphs flip one coin per pair.
inline constexpr double kSparseCutoff = 0.25;

// Samples G(n, p). Deterministic in (n, p, seed). Throws ParameterError when
// p is outside [0, 1] or NaN.
Graph generate_gnp(std::uint32_t n, double p, std::uint64_t seed);

struct GraphStats {
  std::uint64_t edge_count = 0;
  std::uint32_t min_degree = 0;
  std::uint32_t max_degree = 0;
  double mean_degree = 0.0;

  friend bool operator==(const GraphStats&, const GraphStats&) = default;
};

GraphStats graph_stats(const Graph& g);

// Plain-text edge list: first line "n m", then m lines "u v" with u < v.
void write_edge_list(std::ostream& out, const Graph& g);
Graph read_edge_list(std::istream& in);

}  // namespace majority
