#include "majority/dynamics.hpp"

#include <array>
#include <cstring>

#include "majority/errors.hpp"

namespace majority {

OutcomeKind outcome_kind(const Outcome& o) {
  return static_cast<OutcomeKind>(o.index());
}

std::string outcome_name(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::kRedWin: return "red_win";
    case OutcomeKind::kBlueWin: return "blue_win";
    case OutcomeKind::kStable: return "stable";
    case OutcomeKind::kTwoCycle: return "two_cycle";
    case OutcomeKind::kDayCap: return "day_cap";
  }
  return "unknown";
}

std::optional<std::uint64_t> outcome_day(const Outcome& o) {
  switch (outcome_kind(o)) {
    case OutcomeKind::kRedWin: return std::get<RedWin>(o).day;
    case OutcomeKind::kBlueWin: return std::get<BlueWin>(o).day;
    case OutcomeKind::kStable: return std::get<StableNonUnanimous>(o).day;
    case OutcomeKind::kTwoCycle: return std::get<TwoCycle>(o).first_day;
    case OutcomeKind::kDayCap: return std::nullopt;
  }
  return std::nullopt;
}

std::optional<std::uint32_t> Trajectory::red_count_at(std::uint64_t day) const {
  if (day < days.size()) return days[day].red;
  switch (outcome_kind(outcome)) {
    case OutcomeKind::kRedWin: return n;
    case OutcomeKind::kBlueWin: return 0u;
    case OutcomeKind::kStable:
      return days[std::get<StableNonUnanimous>(outcome).day].red;
    case OutcomeKind::kTwoCycle: {
      const auto first = std::get<TwoCycle>(outcome).first_day;
      return days[first + (day - first) % 2].red;
    }
    case OutcomeKind::kDayCap: return std::nullopt;
  }
  return std::nullopt;
}

Trajectory Trajectory::negated() const {
  Trajectory out = *this;
  for (auto& d : out.days) std::swap(d.red, d.blue);
  for (auto& c : out.colorings) c = c.negated();
  std::visit(
      [&out](const auto& o) {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, RedWin>) {
          out.outcome = BlueWin{o.day};
        } else if constexpr (std::is_same_v<T, BlueWin>) {
          out.outcome = RedWin{o.day};
        } else if constexpr (std::is_same_v<T, TwoCycle>) {
          out.outcome = TwoCycle{o.first_day,
                                 {o.colorings.first.negated(), o.colorings.second.negated()}};
        }
      },
      outcome);
  return out;
}

std::uint32_t step_into(const Graph& g, std::span<const Label> in, std::span<Label> out) {
  const std::uint32_t n = g.vertex_count();
  const auto offsets = g.offsets();
  const Vertex* adj = g.adjacency().data();
  std::uint32_t red_total = 0;
  for (Vertex v = 0; v < n; ++v) {
    const Vertex* it = adj + offsets[v];
    const Vertex* end = adj + offsets[v + 1];
    std::int64_t red = 0;
    for (; it != end; ++it) red += in[*it] > 0;
    const std::int64_t sum = 2 * red - static_cast<std::int64_t>(end - (adj + offsets[v]));
    const Label next = sum > 0 ? kRed : (sum < 0 ? kBlue : in[v]);
    out[v] = next;
    red_total += next > 0;
  }
  return red_total;
}

Coloring step(const Graph& g, const Coloring& c) {
  if (c.size() != g.vertex_count()) {
    throw ValidationError("coloring has " + std::to_string(c.size()) +
                          " labels but the graph has " +
                          std::to_string(g.vertex_count()) + " vertices");
  }
  std::vector<Label> next(c.size());
  step_into(g, c.labels(), next);
  return Coloring(std::move(next));
}

namespace {

using Hash128 = std::array<std::uint64_t, 2>;

// Two independently seeded multiply-xorshift lanes over 8-byte words.
Hash128 content_hash(std::span<const Label> labels) {
  std::uint64_t a = 0x243F6A8885A308D3ULL ^ labels.size();
  std::uint64_t b = 0x13198A2E03707344ULL + labels.size();
  const auto* bytes = reinterpret_cast<const unsigned char*>(labels.data());
  std::size_t i = 0;
  auto mix = [&](std::uint64_t w) {
    a = (a ^ w) * 0x9E3779B97F4A7C15ULL;
    a ^= a >> 29;
    b = (b + w) * 0xC2B2AE3D27D4EB4FULL;
    b ^= b >> 31;
  };
  for (; i + 8 <= labels.size(); i += 8) {
    std::uint64_t w;
    std::memcpy(&w, bytes + i, 8);
    mix(w);
  }
  std::uint64_t tail = 0;
  for (std::size_t k = 0; i < labels.size(); ++i, ++k) {
    tail |= static_cast<std::uint64_t>(bytes[i]) << (8 * k);
  }
  mix(tail);
  return {a, b};
}

struct Frame {
  std::vector<Label> labels;
  Hash128 hash{};
  std::uint32_t red = 0;
};

bool same(const Frame& x, const Frame& y) {
  return x.hash == y.hash && x.red == y.red && x.labels == y.labels;
}

}  // namespace

Trajectory run(const Graph& g, const Coloring& c0, const RunOptions& options) {
  if (c0.size() != g.vertex_count()) {
    throw ValidationError("coloring size does not match the graph");
  }
  const std::uint32_t n = g.vertex_count();
  const std::uint64_t max_days =
      options.max_days == 0 ? static_cast<std::uint64_t>(n) + 2 : options.max_days;

  Trajectory traj;
  traj.n = n;
  auto record = [&](std::uint64_t day, const Frame& f) {
    traj.days.push_back({day, f.red, n - f.red});
    if (options.store_colorings) traj.colorings.emplace_back(f.labels);
  };

  // Rolling window: frames[t % 3] holds l_t.
  std::array<Frame, 3> frames;
  frames[0].labels.assign(c0.labels().begin(), c0.labels().end());
  frames[0].red = c0.red_count();
  frames[0].hash = content_hash(frames[0].labels);
  for (std::size_t k = 1; k < 3; ++k) frames[k].labels.resize(n);
  record(0, frames[0]);

  auto unanimous = [n](const Frame& f) { return n > 0 && (f.red == n || f.red == 0); };
  auto win = [&](std::uint64_t day, const Frame& f) -> Outcome {
    if (f.red == n) return RedWin{day};
    return BlueWin{day};
  };

  if (unanimous(frames[0])) {
    traj.outcome = win(0, frames[0]);
    return traj;
  }

  for (std::uint64_t t = 1; t <= max_days; ++t) {
    const Frame& prev = frames[(t - 1) % 3];
    Frame& cur = frames[t % 3];
    cur.red = step_into(g, prev.labels, cur.labels);
    cur.hash = content_hash(cur.labels);
    record(t, cur);
    traj.days_elapsed = t;

    if (unanimous(cur)) {
      traj.outcome = win(t, cur);
      return traj;
    }
    if (same(cur, prev)) {
      traj.outcome = StableNonUnanimous{t - 1};
      return traj;
    }
    if (t >= 2 && same(cur, frames[(t - 2) % 3])) {
      traj.outcome = TwoCycle{t - 2, {Coloring(frames[(t - 2) % 3].labels),
                                      Coloring(prev.labels)}};
      return traj;
    }
  }
  traj.outcome = DayCapReached{};
  return traj;
}

std::vector<LandslideRow> landslide_profile(const Trajectory& traj, double p,
                                            double c_landslide) {
  std::vector<LandslideRow> rows;
  const double pn = p * traj.n;
  const double bound = c_landslide / pn;
  for (std::uint64_t t = 3; t + 1 < traj.days.size(); ++t) {
    const std::uint32_t blue = traj.days[t].blue;
    if (static_cast<double>(blue) <= pn / 4.0) break;
    LandslideRow row;
    row.day = t;
    row.blue = blue;
    row.next_blue = traj.days[t + 1].blue;
    row.ratio = static_cast<double>(row.next_blue) / blue;
    row.bound = bound;
    row.violates = row.ratio > bound;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace majority
