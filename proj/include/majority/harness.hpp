#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "majority/bounds.hpp"
#include "majority/coloring.hpp"
#include "majority/dynamics.hpp"
#include "majority/graph.hpp"

namespace majority {

enum class Scheme { kFixedAdvantage, kRandomHalf, kBalancedDefectors };

// "fixed_advantage", "random_half", "balanced_defectors".
std::string scheme_name(Scheme s);
Scheme parse_scheme(const std::string& name);

struct ExperimentConfig {
  ModelParams params;
  Scheme scheme = Scheme::kFixedAdvantage;
  std::uint64_t trials = 1;
  std::uint64_t max_days = 0;  // 0: n + 2
  bool store_colorings = false;
  unsigned workers = 1;
  ConstantsConfig constants;

  // Throws ConfigError (zero trials, infeasible delta, bad p, bad constants).
  void validate() const;
};

// JSON object with the ExperimentConfig fields: n, p, delta, seed, scheme,
// trials, max_days, store_colorings, workers, constants{...}. Unknown keys and
// non-integer counts are rejected with ConfigError.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& cfg);
ConstantsConfig constants_from_json(const nlohmann::json& j);
nlohmann::json constants_to_json(const ConstantsConfig& c);

// Seeds of the independent streams inside trial `index`.
struct TrialSeeds {
  std::uint64_t trial = 0;
  std::uint64_t graph = 0;
  std::uint64_t coloring = 0;
};
TrialSeeds trial_seeds(std::uint64_t master_seed, std::uint64_t index);

// Initial coloring of one trial under the configured scheme.
Coloring initial_coloring(const ExperimentConfig& cfg, std::uint64_t coloring_seed);

struct TrialRecord {
  std::uint64_t index = 0;
  std::uint64_t seed = 0;
  OutcomeKind outcome = OutcomeKind::kDayCap;
  std::uint64_t day = 0;  // outcome day, or the cap for kDayCap
  double delta2 = 0.0;    // (|R_2| - |B_2|) / 2
  std::uint32_t initial_red = 0;
};

struct WilsonInterval {
  double low = 0.0;
  double high = 1.0;
};

// 95% Wilson score interval for `successes` out of `trials`.
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials);

// Aggregate of trial records. Merging is commutative and associative, so the
// summary does not depend on the order in which trials finish.
struct TrialSummary {
  std::uint64_t trials = 0;
  std::uint64_t red_wins = 0;
  std::uint64_t blue_wins = 0;
  std::uint64_t stable_non_unanimous = 0;
  std::uint64_t two_cycles = 0;
  std::uint64_t day_capped = 0;
  std::map<std::uint64_t, std::uint64_t> day_histogram;
  double delta2_sum = 0.0;
  std::uint64_t days_sum = 0;
  std::uint64_t max_days_observed = 0;
  std::vector<std::uint64_t> seeds;  // sorted per-trial seeds

  void add(const TrialRecord& r);
  void merge(const TrialSummary& other);

  double win_probability() const;  // red_wins / trials
  WilsonInterval win_interval() const;
  double mean_delta2() const;
  double mean_days() const;

  friend bool operator==(const TrialSummary&, const TrialSummary&) = default;
};

TrialSummary summarize(std::span<const TrialRecord> records);

// Called once per trial, possibly from several worker threads at once.
using TrialObserver = std::function<void(const TrialRecord&, const Graph&, const Coloring&,
                                         const Trajectory&)>;

// Runs trial `index` of cfg: graph, initial coloring, dynamics.
TrialRecord run_trial(const ExperimentConfig& cfg, std::uint64_t index,
                      const TrialObserver& observer = {});

// All trials of cfg spread over cfg.workers threads. The result depends only
// on cfg minus `workers`.
TrialSummary run_trials(const ExperimentConfig& cfg, const TrialObserver& observer = {});
std::vector<TrialRecord> run_trial_records(const ExperimentConfig& cfg,
                                           const TrialObserver& observer = {});

// One summary per config. Throws ConfigError on an empty grid.
std::vector<TrialSummary> sweep(std::span<const ExperimentConfig> grid);

// Fixed CSV schema of sweep results.
std::string sweep_csv_header();
std::string sweep_csv_row(const ExperimentConfig& cfg, const TrialSummary& s);

// Runs the grid and writes one CSV row per config to `out`. Completed row
// indices are appended to `<out>.done`; a rerun with resume=true skips them.
// Returns the number of rows computed in this call.
std::size_t sweep_to_csv(std::span<const ExperimentConfig> grid,
                         const std::filesystem::path& out, unsigned workers, bool resume);

struct BisectOptions {
  std::int64_t max_delta = -1;  // -1: floor(n/2)
  std::uint64_t max_days = 0;
  unsigned workers = 1;
};

struct BisectProbe {
  std::int64_t delta = 0;
  std::uint64_t red_wins = 0;
  std::uint64_t trials = 0;
  double win_probability = 0.0;
};

struct BisectResult {
  std::int64_t delta_star = 0;
  std::vector<BisectProbe> probes;  // in evaluation order
};

// Smallest integer Delta in [1, max_delta] whose estimated Red-win
// probability under fixed_advantage reaches target_prob. The bracket is found
// by doubling from 1, then narrowed by bisection; each probe uses fresh seeds
// derived from (seed, Delta). Throws ParameterError for target outside (0, 1)
// and BracketingError when max_delta itself misses the target.
BisectResult threshold_bisect(std::uint32_t n, double p, double target_prob,
                              std::uint64_t trials_per_point, std::uint64_t seed,
                              const BisectOptions& options = {});

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

// Least-squares line through (ln x, ln y). Throws ParameterError with fewer
// than two points, a nonpositive coordinate, or all x equal.
ScalingFit scaling_fit(std::span<const std::pair<double, double>> points);

// Trajectory JSON: {params, outcome: {type, day}, days: [{t, red, blue, delta}], seed}.
nlohmann::json trajectory_to_json(const Trajectory& traj, const ModelParams& params,
                                  Scheme scheme);

}  // namespace majority
