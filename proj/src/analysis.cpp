#include "majority/analysis.hpp"

#include <cmath>
#include <string>

#include "majority/dynamics.hpp"
#include "majority/errors.hpp"

namespace majority {

std::int64_t signed_discrepancy(const Graph& g, const Coloring& c, Vertex v) {
  if (v >= g.vertex_count() || c.size() != g.vertex_count()) {
    throw ParameterError("signed_discrepancy: vertex or coloring out of range");
  }
  std::int64_t sum = 0;
  for (Vertex u : g.neighbors(v)) sum += c[u];
  return sum;
}

std::vector<std::int64_t> signed_discrepancies(const Graph& g, const Coloring& c) {
  if (c.size() != g.vertex_count()) {
    throw ValidationError("coloring size does not match the graph");
  }
  std::vector<std::int64_t> out(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    std::int64_t sum = 0;
    for (Vertex u : g.neighbors(v)) sum += c[u];
    out[v] = sum;
  }
  return out;
}

AlmostRedReport almost_red_set(std::span<const std::int64_t> day_one_sums,
                               std::int64_t D) {
  AlmostRedReport r;
  r.threshold = D;
  for (std::size_t v = 0; v < day_one_sums.size(); ++v) {
    if (day_one_sums[v] >= -D) r.members.push_back(static_cast<Vertex>(v));
  }
  r.count = static_cast<std::uint32_t>(r.members.size());
  r.excess = static_cast<double>(r.count) - 0.5 * static_cast<double>(day_one_sums.size());
  return r;
}

AlmostRedReport almost_red_set(const Graph& g, const Coloring& hat0, std::int64_t D) {
  const auto sums = signed_discrepancies(g, step(g, hat0));
  return almost_red_set(sums, D);
}

std::vector<Vertex> flipping_set(const Graph& g, const DefectorScenario& scen) {
  const Coloring hat1 = step(g, scen.hat_coloring);
  const Coloring one = step(g, scen.coloring);
  std::vector<Vertex> out;
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    if (hat1[u] == kBlue && one[u] == kRed) out.push_back(u);
  }
  return out;
}

std::vector<Vertex> vulnerable_set(const Graph& g, const DefectorScenario& scen) {
  const std::uint32_t n = g.vertex_count();
  if (scen.hat_coloring.size() != n) {
    throw ValidationError("scenario size does not match the graph");
  }
  std::vector<char> in_swing(n, 0);
  for (Vertex s : scen.swing_set) in_swing[s] = 1;

  std::vector<Vertex> out;
  for (Vertex u = 0; u < n; ++u) {
    std::int64_t red = 0;
    std::int64_t blue_rest = 0;
    std::int64_t swing = 0;
    for (Vertex w : g.neighbors(u)) {
      if (in_swing[w]) {
        ++swing;
      } else if (scen.hat_coloring.is_red(w)) {
        ++red;
      } else {
        ++blue_rest;
      }
    }
    if (red == blue_rest && swing >= 1) out.push_back(u);
  }
  return out;
}

namespace {

// Membership codes for the pair partition.
constexpr std::uint8_t kOutside = 0;
constexpr std::uint8_t kOnlyFirst = 1;   // U1
constexpr std::uint8_t kOnlySecond = 2;  // U2
constexpr std::uint8_t kBoth = 3;        // U3

}  // namespace

RegularityReport regularity_report(const Graph& g, const Coloring& hat0, Vertex v,
                                   double p, std::optional<Vertex> pair) {
  const std::uint32_t n = g.vertex_count();
  if (v >= n || hat0.size() != n) throw ParameterError("regularity_report: vertex out of range");
  if (pair && (*pair >= n || *pair == v)) {
    throw ParameterError("regularity_report: pair vertex must differ from v and be in range");
  }

  RegularityReport r;
  r.is_pair = pair.has_value();
  r.log_n = std::log(static_cast<double>(n));
  const double pn = p * n;
  r.size_center = pn / 2.0;
  r.size_radius = 3.0 * std::sqrt(pn * r.log_n);
  auto size_ok = [&](std::uint32_t s) {
    return std::abs(static_cast<double>(s) - r.size_center) <= r.size_radius;
  };

  // part[u] records which of U1/U2/U3 u belongs to.
  std::vector<std::uint8_t> part(n, kOutside);
  std::vector<Vertex> members;
  auto add = [&](Vertex u, std::uint8_t bit) {
    if (u == v || (pair && u == *pair)) return;
    if (part[u] == kOutside) members.push_back(u);
    part[u] |= bit;
  };
  for (Vertex u : g.neighbors(v)) add(u, kOnlyFirst);
  if (pair) {
    for (Vertex u : g.neighbors(*pair)) add(u, kOnlySecond);
  }

  std::int64_t sum_sq = 0;
  for (Vertex u : members) {
    std::int64_t d = 0;
    for (Vertex w : g.neighbors(u)) {
      if (part[w] != kOutside) d += hat0[w];
    }
    const bool red = hat0.is_red(u);
    r.d_inf = std::max<std::int64_t>(r.d_inf, std::abs(d));
    sum_sq += d * d;
    r.d_sum += d;
    if (red) ++r.u_plus; else ++r.u_minus;
    if (part[u] & kOnlyFirst) {
      r.d13_sum += d;
      if (red) ++r.u13_plus; else ++r.u13_minus;
    }
    if (part[u] & kOnlySecond) {
      r.d23_sum += d;
      if (red) ++r.u23_plus; else ++r.u23_minus;
    }
    if (part[u] == kBoth) {
      if (red) ++r.u3_plus; else ++r.u3_minus;
    }
  }
  r.d_two = std::sqrt(static_cast<double>(sum_sq));

  r.d_inf_ok = static_cast<double>(r.d_inf) <= r.log_n;
  r.d_two_ok = r.d_two <= r.size_radius;

  if (!pair) {
    r.u_plus_ok = size_ok(r.u_plus);
    r.u_minus_ok = size_ok(r.u_minus);
    r.d_sum_ok = std::abs(static_cast<double>(r.d_sum)) <= 5.0 * r.log_n;
    r.regular = r.u_plus_ok && r.u_minus_ok && r.d_inf_ok && r.d_sum_ok && r.d_two_ok;
  } else {
    r.u13_sizes_ok = size_ok(r.u13_plus) && size_ok(r.u13_minus);
    r.u23_sizes_ok = size_ok(r.u23_plus) && size_ok(r.u23_minus);
    r.u3_sizes_ok = r.u3_plus <= r.log_n && r.u3_minus <= r.log_n;
    r.restricted_sums_ok =
        std::max(std::abs(static_cast<double>(r.d13_sum)),
                 std::abs(static_cast<double>(r.d23_sum))) <= 5.0 * r.log_n;
    r.regular = r.u13_sizes_ok && r.u23_sizes_ok && r.u3_sizes_ok && r.d_inf_ok &&
                r.d_two_ok && r.restricted_sums_ok;
  }
  return r;
}

}  // namespace majority
