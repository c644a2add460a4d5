#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <gtest/gtest.h>

#include "majority/coloring.hpp"
#include "majority/errors.hpp"
#include "majority/rng.hpp"

namespace majority {
namespace {

TEST(Coloring, ConstructionAndCounts) {
  const Coloring c(6, kRed);
  EXPECT_EQ(c.red_count(), 6u);
  EXPECT_EQ(c.blue_count(), 0u);
  const Coloring d({kRed, kBlue, kBlue});
  EXPECT_EQ(d.red_count(), 1u);
  EXPECT_EQ(d.blue_count(), 2u);
  EXPECT_THROW(Coloring(std::vector<Label>{kRed, 0}), ValidationError);
  EXPECT_THROW(Coloring(3, 2), ValidationError);
}

TEST(Coloring, SetKeepsCountsInSync) {
  Coloring c(4, kBlue);
  c.set(1, kRed);
  c.set(1, kRed);
  c.set(3, kRed);
  EXPECT_EQ(c.red_count(), 2u);
  c.set(1, kBlue);
  EXPECT_EQ(c.red_count(), 1u);
  EXPECT_THROW(c.set(0, 0), ValidationError);
}

TEST(Coloring, DumpFormatRoundTrip) {
  const Coloring c = Coloring::from_string("RBBRR");
  EXPECT_EQ(c.red_count(), 3u);
  EXPECT_TRUE(c.is_red(0));
  EXPECT_FALSE(c.is_red(1));
  EXPECT_EQ(c.to_string(), "RBBRR");
  EXPECT_EQ(c.negated().to_string(), "BRRBB");
  EXPECT_EQ(c.negated().red_count(), 2u);
  EXPECT_THROW(Coloring::from_string("RXB"), ValidationError);
}

TEST(FixedAdvantage, ExactRedCounts) {
  EXPECT_EQ(fixed_advantage(10, 0, 1).red_count(), 5u);
  EXPECT_EQ(fixed_advantage(10, 2, 1).red_count(), 7u);
  EXPECT_EQ(fixed_advantage(11, 1, 1).red_count(), 7u);
  EXPECT_EQ(fixed_advantage(11, 0, 1).red_count(), 6u);
  EXPECT_EQ(fixed_advantage(10, 5, 1).red_count(), 10u);
}

TEST(FixedAdvantage, RejectsInfeasibleDelta) {
  EXPECT_THROW(fixed_advantage(10, 6, 1), ParameterError);
  EXPECT_THROW(fixed_advantage(11, 6, 1), ParameterError);
  EXPECT_THROW(fixed_advantage(10, -1, 1), ParameterError);
}

TEST(FixedAdvantage, DeterministicAndSeedSensitive) {
  EXPECT_EQ(fixed_advantage(100, 3, 5), fixed_advantage(100, 3, 5));
  EXPECT_NE(fixed_advantage(100, 3, 5), fixed_advantage(100, 3, 6));
}

TEST(RandomHalf, EmptyAndDeterministic) {
  EXPECT_EQ(random_half(0, 1).size(), 0u);
  EXPECT_EQ(random_half(257, 9), random_half(257, 9));
  EXPECT_NE(random_half(257, 9), random_half(257, 10));
}

TEST(RandomHalf, MeanRedCountWithinStandardError) {
  const int trials = 100000;
  double sum = 0.0;
  for (int i = 0; i < trials; ++i) sum += random_half(100, mix_seed(31, i)).red_count() - 50.0;
  const double mean = sum / trials;
  EXPECT_NEAR(mean, 0.0, 5.0 * (std::sqrt(100.0) / 2.0) / std::sqrt(trials));
}

// Each position is Red with probability 1/2 (including positions past the
// first 64-bit word).
TEST(RandomHalf, PerVertexFrequencies) {
  const std::uint32_t n = 130;
  const int trials = 20000;
  std::vector<int> red(n, 0);
  for (int i = 0; i < trials; ++i) {
    const Coloring c = random_half(n, mix_seed(32, i));
    for (Vertex v = 0; v < n; ++v) red[v] += c.is_red(v);
  }
  const double se = 0.5 / std::sqrt(trials);
  for (Vertex v = 0; v < n; ++v) EXPECT_NEAR(red[v] / double(trials), 0.5, 5 * se) << v;
}

TEST(BalancedWithDefectors, Counts) {
  const DefectorScenario s = balanced_with_defectors(10, 3, 4);
  EXPECT_EQ(s.hat_coloring.red_count(), 5u);
  EXPECT_EQ(s.swing_set.size(), 3u);
  EXPECT_EQ(s.coloring.red_count(), 8u);
  EXPECT_TRUE(std::is_sorted(s.swing_set.begin(), s.swing_set.end()));
}

TEST(BalancedWithDefectors, RejectsDeltaAboveBlueCount) {
  EXPECT_THROW(balanced_with_defectors(10, 6, 1), ParameterError);
  EXPECT_THROW(balanced_with_defectors(11, 6, 1), ParameterError);
  EXPECT_THROW(balanced_with_defectors(10, -1, 1), ParameterError);
  EXPECT_NO_THROW(balanced_with_defectors(11, 5, 1));
}

TEST(BalancedWithDefectors, FlippingSwingSetReproducesColoring) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::uint32_t n = 5 + seed % 60;
    const std::int64_t delta = static_cast<std::int64_t>(seed % (n / 2 + 1));
    const DefectorScenario s = balanced_with_defectors(n, delta, seed);
    ASSERT_EQ(s.hat_coloring.red_count(), (n + 1) / 2);
    Coloring rebuilt = s.hat_coloring;
    for (Vertex v : s.swing_set) {
      ASSERT_FALSE(s.hat_coloring.is_red(v));
      rebuilt.set(v, kRed);
    }
    EXPECT_EQ(rebuilt, s.coloring);
    std::uint32_t differ = 0;
    for (Vertex v = 0; v < n; ++v) differ += s.hat_coloring[v] != s.coloring[v];
    EXPECT_EQ(differ, static_cast<std::uint32_t>(delta));
  }
}

// Both schemes are uniform over the colorings with ceil(n/2) + delta Red
// vertices, for every (n, delta) with n <= 6. Each goodness-of-fit test runs at
// level 0.01 divided by the number of tests in the family.
TEST(ModelEquivalence, ExhaustiveSmallN) {
  const double level = 0.01 / 30;
  for (std::uint32_t n = 2; n <= 6; ++n) {
    for (std::int64_t delta = 0; delta <= n / 2; ++delta) {
      const auto red = static_cast<int>((n + 1) / 2 + delta);
      std::map<std::string, std::array<double, 2>> counts;
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) != red) continue;
        std::string s(n, 'B');
        for (Vertex v = 0; v < n; ++v)
          if (mask >> v & 1) s[v] = 'R';
        counts[s] = {0, 0};
      }
      const std::size_t support = counts.size();
      const int samples = 4000 * static_cast<int>(support);
      for (int i = 0; i < samples; ++i) {
        ++counts[fixed_advantage(n, delta, mix_seed(n * 100 + delta, i)).to_string()][0];
        ++counts[balanced_with_defectors(n, delta, mix_seed(n * 100 + delta + 50, i))
                     .coloring.to_string()][1];
      }
      ASSERT_EQ(counts.size(), support) << "n=" << n << " delta=" << delta;
      if (support == 1) continue;
      const double expected = static_cast<double>(samples) / support;
      for (int side = 0; side < 2; ++side) {
        double chi2 = 0.0;
        for (const auto& [s, c] : counts) chi2 += (c[side] - expected) * (c[side] - expected) / expected;
        const boost::math::chi_squared dist(static_cast<double>(support - 1));
        const double pvalue = boost::math::cdf(boost::math::complement(dist, chi2));
        EXPECT_GT(pvalue, level) << "n=" << n << " delta=" << delta << " side=" << side;
      }
    }
  }
}

TEST(ModelEquivalence, FourVerticesOneDefector) {
  std::map<std::string, std::array<double, 2>> counts;
  const int samples = 100000;
  for (int i = 0; i < samples; ++i) {
    ++counts[fixed_advantage(4, 1, mix_seed(400, i)).to_string()][0];
    ++counts[balanced_with_defectors(4, 1, mix_seed(401, i)).coloring.to_string()][1];
  }
  ASSERT_EQ(counts.size(), 4u);
  double chi2 = 0.0;
  for (const auto& [s, c] : counts) {
    EXPECT_EQ(std::count(s.begin(), s.end(), 'R'), 3);
    const double expected = (c[0] + c[1]) / 2.0;
    chi2 += (c[0] - expected) * (c[0] - expected) / expected;
    chi2 += (c[1] - expected) * (c[1] - expected) / expected;
  }
  const boost::math::chi_squared dist(3.0);
  EXPECT_GT(boost::math::cdf(boost::math::complement(dist, chi2)), 0.01);
}

TEST(SamplePrefix, PermutesPoolAndClampsK) {
  std::vector<Vertex> pool{0, 1, 2, 3, 4, 5};
  const auto prefix = sample_prefix(pool, 3, 8);
  EXPECT_EQ(prefix.size(), 3u);
  std::vector<Vertex> sorted = pool;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(sorted, (std::vector<Vertex>{0, 1, 2, 3, 4, 5}));
  EXPECT_EQ(sample_prefix(pool, 99, 8).size(), 6u);
}

}  // namespace
}  // namespace majority
