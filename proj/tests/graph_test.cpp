#include <cmath>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "majority/errors.hpp"
#include "majority/graph.hpp"

namespace majority {
namespace {

Graph path3() { return Graph::from_edge_list(3, std::vector<Edge>{{0, 1}, {1, 2}}); }

TEST(GenerateGnp, CompleteGraphWhenPIsOne) {
  const Graph g = generate_gnp(5, 1.0, 12345);
  EXPECT_EQ(g.edge_count(), 10u);
  for (Vertex v = 0; v < 5; ++v) EXPECT_EQ(g.degree(v), 4u);
  EXPECT_TRUE(g.is_valid());
}

TEST(GenerateGnp, NoEdgesWhenPIsZero) {
  const Graph g = generate_gnp(7, 0.0, 99);
  EXPECT_EQ(g.vertex_count(), 7u);
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(GenerateGnp, EdgeCountInsideWindow) {
  const Graph g = generate_gnp(2000, 0.01, 42);
  const double mean = 0.01 * 2000.0 * 1999.0 / 2.0;
  EXPECT_DOUBLE_EQ(mean, 19990.0);
  EXPECT_NEAR(static_cast<double>(g.edge_count()), mean, 5.0 * std::sqrt(mean));
  EXPECT_TRUE(g.is_valid());
}

TEST(GenerateGnp, RejectsProbabilityOutsideUnitInterval) {
  EXPECT_THROW(generate_gnp(10, -0.1, 1), ParameterError);
  EXPECT_THROW(generate_gnp(10, 1.5, 1), ParameterError);
  EXPECT_THROW(generate_gnp(10, std::nan(""), 1), ParameterError);
}

TEST(GenerateGnp, TinyGraphs) {
  EXPECT_EQ(generate_gnp(0, 0.5, 1).vertex_count(), 0u);
  EXPECT_EQ(generate_gnp(1, 1.0, 1).edge_count(), 0u);
  EXPECT_EQ(generate_gnp(2, 1.0, 1).edge_count(), 1u);
}

TEST(GenerateGnp, DeterministicGivenSeed) {
  for (double p : {0.003, 0.1, 0.6}) {
    const Graph a = generate_gnp(500, p, 7);
    const Graph b = generate_gnp(500, p, 7);
    EXPECT_EQ(a, b);
    EXPECT_TRUE(std::ranges::equal(a.adjacency(), b.adjacency()));
    EXPECT_TRUE(std::ranges::equal(a.offsets(), b.offsets()));
    EXPECT_NE(a, generate_gnp(500, p, 8));
  }
}

TEST(GenerateGnp, ValidatorHoldsAcrossRegimes) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (double p : {0.001, 0.02, 0.24, 0.26, 0.7}) {
      const Graph g = generate_gnp(300, p, seed);
      ASSERT_TRUE(g.is_valid()) << "p=" << p << " seed=" << seed;
      std::uint64_t degree_sum = 0;
      for (Vertex v = 0; v < g.vertex_count(); ++v) degree_sum += g.degree(v);
      EXPECT_EQ(degree_sum, 2 * g.edge_count());
    }
  }
}

// Degree of a fixed vertex over seeds follows Bin(n - 1, p), in both the
// skipping and the per-pair generators.
TEST(GenerateGnp, FixedVertexDegreeIsBinomial) {
  const std::uint32_t n = 200;
  for (double p : {0.05, 0.4}) {
    const int samples = 10000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int s = 0; s < samples; ++s) {
      const double d = generate_gnp(n, p, 1000 + s).degree(17);
      sum += d;
      sum_sq += d * d;
    }
    const double mean = sum / samples;
    const double var = sum_sq / samples - mean * mean;
    const double expected_mean = (n - 1) * p;
    const double expected_var = (n - 1) * p * (1 - p);
    EXPECT_NEAR(mean, expected_mean, 5.0 * std::sqrt(expected_var / samples)) << p;
    EXPECT_NEAR(var, expected_var, 0.1 * expected_var) << p;
  }
}

// Each pair is present with probability p, independently of its position in
// the pair index.
TEST(GenerateGnp, PairFrequenciesUniform) {
  const std::uint32_t n = 12;
  const double p = 0.1;
  const int samples = 20000;
  std::vector<int> hits(n * n, 0);
  for (int s = 0; s < samples; ++s) {
    const Graph g = generate_gnp(n, p, 77 + s);
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v : g.neighbors(u)) ++hits[u * n + v];
  }
  const double se = std::sqrt(p * (1 - p) / samples);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      EXPECT_NEAR(hits[u * n + v] / static_cast<double>(samples), p, 5 * se) << u << "," << v;
    }
  }
}

TEST(FromEdgeList, PathDegrees) {
  const Graph g = path3();
  EXPECT_EQ(g.degree(0), 1u);
  EXPECT_EQ(g.degree(1), 2u);
  EXPECT_EQ(g.degree(2), 1u);
  EXPECT_TRUE(g.adjacent(0, 1));
  EXPECT_TRUE(g.adjacent(1, 0));
  EXPECT_FALSE(g.adjacent(0, 2));
  EXPECT_TRUE(g.is_valid());
}

TEST(FromEdgeList, RowsSortedRegardlessOfInputOrder) {
  const Graph g = Graph::from_edge_list(
      5, std::vector<Edge>{{4, 0}, {2, 3}, {0, 2}, {1, 4}, {3, 0}, {2, 4}});
  EXPECT_TRUE(g.is_valid());
  const auto row = g.neighbors(0);
  EXPECT_EQ(std::vector<Vertex>(row.begin(), row.end()), (std::vector<Vertex>{2, 3, 4}));
}

TEST(FromEdgeList, RejectsSelfLoop) {
  EXPECT_THROW(Graph::from_edge_list(2, std::vector<Edge>{{0, 0}}), ValidationError);
}

TEST(FromEdgeList, RejectsDuplicateInEitherOrientation) {
  EXPECT_THROW(Graph::from_edge_list(4, std::vector<Edge>{{0, 1}, {1, 0}}), ValidationError);
  EXPECT_THROW(Graph::from_edge_list(4, std::vector<Edge>{{2, 3}, {2, 3}}), ValidationError);
}

TEST(FromEdgeList, RejectsOutOfRangeEndpoint) {
  EXPECT_THROW(Graph::from_edge_list(3, std::vector<Edge>{{0, 3}}), ValidationError);
}

TEST(GraphStats, CompleteGraph) {
  const GraphStats s = graph_stats(generate_gnp(5, 1.0, 0));
  EXPECT_EQ(s.edge_count, 10u);
  EXPECT_EQ(s.min_degree, 4u);
  EXPECT_EQ(s.max_degree, 4u);
  EXPECT_DOUBLE_EQ(s.mean_degree, 4.0);
}

TEST(GraphStats, EmptyGraph) {
  const GraphStats s = graph_stats(Graph::from_edge_list(7, {}));
  EXPECT_EQ(s.edge_count, 0u);
  EXPECT_EQ(s.min_degree, 0u);
  EXPECT_EQ(s.max_degree, 0u);
  EXPECT_DOUBLE_EQ(s.mean_degree, 0.0);
}

TEST(GraphStats, Path) {
  const GraphStats s = graph_stats(path3());
  EXPECT_EQ(s.edge_count, 2u);
  EXPECT_EQ(s.min_degree, 1u);
  EXPECT_EQ(s.max_degree, 2u);
  EXPECT_DOUBLE_EQ(s.mean_degree, 4.0 / 3.0);
}

TEST(EdgeListFormat, RoundTrip) {
  const Graph g = generate_gnp(150, 0.05, 3);
  std::stringstream buf;
  write_edge_list(buf, g);
  std::string header;
  std::getline(buf, header);
  EXPECT_EQ(header, "150 " + std::to_string(g.edge_count()));
  buf.seekg(0);
  EXPECT_EQ(read_edge_list(buf), g);
}

TEST(EdgeListFormat, RejectsMalformedInput) {
  std::istringstream missing_header("");
  EXPECT_THROW(read_edge_list(missing_header), ValidationError);
  std::istringstream short_body("3 2\n0 1\n");
  EXPECT_THROW(read_edge_list(short_body), ValidationError);
  std::istringstream loop("3 1\n1 1\n");
  EXPECT_THROW(read_edge_list(loop), ValidationError);
}

}  // namespace
}  // namespace majority
