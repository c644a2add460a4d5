#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "majority/coloring.hpp"
#include "majority/graph.hpp"

namespace majority {

// d_R(v) - d_B(v) under `c`, i.e. the sum of c over N(v).
std::int64_t signed_discrepancy(const Graph& g, const Coloring& c, Vertex v);

// signed_discrepancy for every vertex.
std::vector<std::int64_t> signed_discrepancies(const Graph& g, const Coloring& c);

struct AlmostRedReport {
  std::int64_t threshold = 0;   // D
  std::vector<Vertex> members;  // sorted
  std::uint32_t count = 0;
  double excess = 0.0;  // count - n/2
};

// Vertices v whose day-one neighborhood sum under the balanced process,
// sum_{u in N(v)} step(g, hat0)(u), is at least -D.
AlmostRedReport almost_red_set(const Graph& g, const Coloring& hat0, std::int64_t D);

// Same, from precomputed day-one sums (signed_discrepancies(g, step(g, hat0))).
AlmostRedReport almost_red_set(std::span<const std::int64_t> day_one_sums, std::int64_t D);

// Vertices Blue on day one from hat_coloring but Red on day one from coloring.
std::vector<Vertex> flipping_set(const Graph& g, const DefectorScenario& scen);

// Vertices u with d_{R_hat}(u) == d_{B_hat \ S}(u) and d_S(u) >= 1. Every such
// vertex is flipping.
std::vector<Vertex> vulnerable_set(const Graph& g, const DefectorScenario& scen);

struct RegularityReport {
  // Thresholds, all with the natural logarithm.
  double log_n = 0.0;
  double size_center = 0.0;  // pn / 2
  double size_radius = 0.0;  // 3 sqrt(pn log n)

  // Single-vertex form: U = N(v) \ {v, pair}, H = G[U].
  std::uint32_t u_plus = 0;
  std::uint32_t u_minus = 0;
  std::int64_t d_inf = 0;        // ||d_U||_inf
  double d_two = 0.0;            // ||d_U||_2
  std::int64_t d_sum = 0;        // 1^T d_U
  bool u_plus_ok = false;
  bool u_minus_ok = false;
  bool d_inf_ok = false;
  bool d_sum_ok = false;  // |1^T d_U| <= 5 log n (single form only)
  bool d_two_ok = false;

  // Pair form.
  bool is_pair = false;
  std::uint32_t u13_plus = 0, u13_minus = 0;
  std::uint32_t u23_plus = 0, u23_minus = 0;
  std::uint32_t u3_plus = 0, u3_minus = 0;
  std::int64_t d13_sum = 0;  // 1^T d_{U13}
  std::int64_t d23_sum = 0;  // 1^T d_{U23}
  bool u13_sizes_ok = false;
  bool u23_sizes_ok = false;
  bool u3_sizes_ok = false;
  bool restricted_sums_ok = false;

  bool regular = false;
};

// Neighborhood regularity of v (or of the pair v, pair) under the balanced
// coloring hat0, with p supplied as the model parameter. The pair form splits
// N(v) and N(pair) into U1 = only v, U2 = only pair, U3 = both; d_U is taken
// over H = G[U1 u U2 u U3] and restricted to U13 = U1 u U3, U23 = U2 u U3.
// Throws ParameterError for an out-of-range vertex or pair == v.
RegularityReport regularity_report(const Graph& g, const Coloring& hat0, Vertex v,
                                   double p, std::optional<Vertex> pair = std::nullopt);

}  // namespace majority
