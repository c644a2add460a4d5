#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "majority/coloring.hpp"
#include "majority/graph.hpp"

namespace majority {

struct RedWin {
  std::uint64_t day = 0;
  friend bool operator==(const RedWin&, const RedWin&) = default;
};
struct BlueWin {
  std::uint64_t day = 0;
  friend bool operator==(const BlueWin&, const BlueWin&) = default;
};
// Fixed point that is not unanimous; `day` is the first day of the final coloring.
struct StableNonUnanimous {
  std::uint64_t day = 0;
  friend bool operator==(const StableNonUnanimous&, const StableNonUnanimous&) = default;
};
// l_{first_day + 2} == l_{first_day} != l_{first_day + 1}; `colorings` holds
// (l_{first_day}, l_{first_day + 1}).
struct TwoCycle {
  std::uint64_t first_day = 0;
  std::pair<Coloring, Coloring> colorings;
  friend bool operator==(const TwoCycle&, const TwoCycle&) = default;
};
struct DayCapReached {
  friend bool operator==(const DayCapReached&, const DayCapReached&) = default;
};

using Outcome = std::variant<RedWin, BlueWin, StableNonUnanimous, TwoCycle, DayCapReached>;

enum class OutcomeKind { kRedWin, kBlueWin, kStable, kTwoCycle, kDayCap };

OutcomeKind outcome_kind(const Outcome& o);
// "red_win", "blue_win", "stable", "two_cycle", "day_cap".
std::string outcome_name(OutcomeKind kind);
// Day at which the outcome was settled; nullopt for DayCapReached.
std::optional<std::uint64_t> outcome_day(const Outcome& o);

struct DaySummary {
  std::uint64_t day = 0;
  std::uint32_t red = 0;
  std::uint32_t blue = 0;

  // (|R_t| - |B_t|) / 2, a half-integer when n is odd.
  double advantage() const { return 0.5 * (static_cast<double>(red) - blue); }

  friend bool operator==(const DaySummary&, const DaySummary&) = default;
};

struct Trajectory {
  std::uint32_t n = 0;
  std::vector<DaySummary> days;  // days[t].day == t
  Outcome outcome = DayCapReached{};
  std::uint64_t days_elapsed = 0;   // number of update steps performed
  std::vector<Coloring> colorings;  // only when RunOptions::store_colorings

  // |R_t| for any t, extending settled outcomes (unanimity, fixed point,
  // two-cycle) past the recorded days. nullopt when t lies beyond a day cap.
  std::optional<std::uint32_t> red_count_at(std::uint64_t day) const;

  Trajectory negated() const;

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

struct RunOptions {
  // Maximum number of update steps; 0 means n + 2, which cannot be hit
  // because every run reaches period at most 2 within n days.
  std::uint64_t max_days = 0;
  bool store_colorings = false;
};

// One synchronous day: v takes the sign of the sum of its neighbors' labels,
// keeping its own label on a zero sum (isolated vertices included). Throws
// ValidationError when sizes differ.
Coloring step(const Graph& g, const Coloring& c);

// Raw form of step over label buffers of length n. Returns |R| of `out`.
std::uint32_t step_into(const Graph& g, std::span<const Label> in, std::span<Label> out);

// Iterates step until unanimity, a fixed point, a two-cycle or the day cap.
Trajectory run(const Graph& g, const Coloring& c0, const RunOptions& options = {});

struct LandslideRow {
  std::uint64_t day = 0;
  std::uint32_t blue = 0;
  std::uint32_t next_blue = 0;
  double ratio = 0.0;  // next_blue / blue
  double bound = 0.0;  // C / (p n)
  bool violates = false;
};

// Blue shrink ratios |B_{t+1}| / |B_t| for t >= 3 while |B_t| > pn/4, each
// compared with c_landslide / (pn). Empty when fewer than 4 days are recorded.
std::vector<LandslideRow> landslide_profile(const Trajectory& traj, double p,
                                            double c_landslide = 100.0);

}  // namespace majority
