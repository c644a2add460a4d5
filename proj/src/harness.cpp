#include "majority/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <mutex>
#include <set>
#include <thread>

#include "majority/errors.hpp"
#include "majority/rng.hpp"

namespace majority {

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::kFixedAdvantage: return "fixed_advantage";
    case Scheme::kRandomHalf: return "random_half";
    case Scheme::kBalancedDefectors: return "balanced_defectors";
  }
  return "unknown";
}

Scheme parse_scheme(const std::string& name) {
  if (name == "fixed_advantage") return Scheme::kFixedAdvantage;
  if (name == "random_half") return Scheme::kRandomHalf;
  if (name == "balanced_defectors") return Scheme::kBalancedDefectors;
  throw ConfigError("unknown scheme \"" + name + "\"");
}

void ExperimentConfig::validate() const {
  if (trials == 0) throw ConfigError("trials must be >= 1");
  if (workers == 0) throw ConfigError("workers must be >= 1");
  if (!(params.p >= 0.0 && params.p <= 1.0)) throw ConfigError("p must lie in [0, 1]");
  if (scheme != Scheme::kRandomHalf) {
    if (params.delta < 0 || params.delta > static_cast<std::int64_t>(params.n / 2)) {
      throw ConfigError("delta " + std::to_string(params.delta) + " is infeasible for n = " +
                        std::to_string(params.n));
    }
  }
  constants.validate();
}

namespace {

using nlohmann::json;

template <typename T>
T get_unsigned(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
    throw ConfigError(std::string("\"") + key + "\" must be a nonnegative integer");
  }
  return v.get<T>();
}

double get_number(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError(std::string("\"") + key + "\" must be a number");
  return v.get<double>();
}

void reject_unknown(const json& j, std::initializer_list<const char*> known, const char* what) {
  if (!j.is_object()) throw ConfigError(std::string(what) + " must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (std::none_of(known.begin(), known.end(), [&](const char* k) { return key == k; })) {
      throw ConfigError(std::string(what) + ": unknown key \"" + key + "\"");
    }
  }
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

ConstantsConfig constants_from_json(const json& j) {
  reject_unknown(j,
                 {"c_landslide", "c_threshold", "c_almost_red", "c_day2", "c_var",
                  "exact_collision_cutoff", "gaussian_cdf_tolerance"},
                 "constants");
  ConstantsConfig c;
  if (j.contains("c_landslide")) c.c_landslide = get_number(j, "c_landslide");
  if (j.contains("c_threshold")) c.c_threshold = get_number(j, "c_threshold");
  if (j.contains("c_almost_red")) c.c_almost_red = get_number(j, "c_almost_red");
  if (j.contains("c_day2")) c.c_day2 = get_number(j, "c_day2");
  if (j.contains("c_var")) c.c_var = get_number(j, "c_var");
  if (j.contains("exact_collision_cutoff")) {
    c.exact_collision_cutoff = get_unsigned<std::uint64_t>(j, "exact_collision_cutoff");
  }
  if (j.contains("gaussian_cdf_tolerance")) {
    c.gaussian_cdf_tolerance = get_number(j, "gaussian_cdf_tolerance");
  }
  c.validate();
  return c;
}

json constants_to_json(const ConstantsConfig& c) {
  return {{"c_landslide", c.c_landslide},
          {"c_threshold", c.c_threshold},
          {"c_almost_red", c.c_almost_red},
          {"c_day2", c.c_day2},
          {"c_var", c.c_var},
          {"exact_collision_cutoff", c.exact_collision_cutoff},
          {"gaussian_cdf_tolerance", c.gaussian_cdf_tolerance}};
}

ExperimentConfig config_from_json(const json& j) {
  reject_unknown(j,
                 {"n", "p", "delta", "seed", "scheme", "trials", "max_days", "store_colorings",
                  "workers", "constants"},
                 "experiment config");
  ExperimentConfig cfg;
  try {
    const auto n = get_unsigned<std::uint64_t>(j, "n");
    if (n > std::numeric_limits<std::uint32_t>::max()) throw ConfigError("n is too large");
    cfg.params.n = static_cast<std::uint32_t>(n);
    cfg.params.p = get_number(j, "p");
    if (j.contains("delta")) {
      const json& d = j.at("delta");
      if (!d.is_number_integer()) throw ConfigError("\"delta\" must be an integer");
      cfg.params.delta = d.get<std::int64_t>();
    }
    if (j.contains("seed")) cfg.params.seed = get_unsigned<std::uint64_t>(j, "seed");
    if (j.contains("scheme")) {
      if (!j.at("scheme").is_string()) throw ConfigError("\"scheme\" must be a string");
      cfg.scheme = parse_scheme(j.at("scheme").get<std::string>());
    }
    if (j.contains("trials")) cfg.trials = get_unsigned<std::uint64_t>(j, "trials");
    if (j.contains("max_days")) cfg.max_days = get_unsigned<std::uint64_t>(j, "max_days");
    if (j.contains("store_colorings")) {
      if (!j.at("store_colorings").is_boolean()) {
        throw ConfigError("\"store_colorings\" must be a boolean");
      }
      cfg.store_colorings = j.at("store_colorings").get<bool>();
    }
    if (j.contains("workers")) cfg.workers = get_unsigned<unsigned>(j, "workers");
    if (j.contains("constants")) cfg.constants = constants_from_json(j.at("constants"));
  } catch (const json::out_of_range& e) {
    throw ConfigError(std::string("experiment config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

json config_to_json(const ExperimentConfig& cfg) {
  return {{"n", cfg.params.n},
          {"p", cfg.params.p},
          {"delta", cfg.params.delta},
          {"seed", cfg.params.seed},
          {"scheme", scheme_name(cfg.scheme)},
          {"trials", cfg.trials},
          {"max_days", cfg.max_days},
          {"store_colorings", cfg.store_colorings},
          {"workers", cfg.workers},
          {"constants", constants_to_json(cfg.constants)}};
}

TrialSeeds trial_seeds(std::uint64_t master_seed, std::uint64_t index) {
  TrialSeeds s;
  s.trial = mix_seed(master_seed, index);
  s.graph = mix_seed(s.trial, 0x6772617068ULL);     // "graph"
  s.coloring = mix_seed(s.trial, 0x636F6C6F72ULL);  // "color"
  return s;
}

Coloring initial_coloring(const ExperimentConfig& cfg, std::uint64_t coloring_seed) {
  switch (cfg.scheme) {
    case Scheme::kFixedAdvantage:
      return fixed_advantage(cfg.params.n, cfg.params.delta, coloring_seed);
    case Scheme::kRandomHalf:
      return random_half(cfg.params.n, coloring_seed);
    case Scheme::kBalancedDefectors:
      return balanced_with_defectors(cfg.params.n, cfg.params.delta, coloring_seed).coloring;
  }
  throw ConfigError("unknown scheme");
}

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) return {0.0, 1.0};
  constexpr double z = 1.959963984540054;
  const double nt = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / nt;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nt;
  const double center = (phat + z2 / (2.0 * nt)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / nt + z2 / (4.0 * nt * nt)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

void TrialSummary::add(const TrialRecord& r) {
  ++trials;
  switch (r.outcome) {
    case OutcomeKind::kRedWin: ++red_wins; break;
    case OutcomeKind::kBlueWin: ++blue_wins; break;
    case OutcomeKind::kStable: ++stable_non_unanimous; break;
    case OutcomeKind::kTwoCycle: ++two_cycles; break;
    case OutcomeKind::kDayCap: ++day_capped; break;
  }
  ++day_histogram[r.day];
  delta2_sum += r.delta2;
  days_sum += r.day;
  max_days_observed = std::max(max_days_observed, r.day);
  seeds.insert(std::upper_bound(seeds.begin(), seeds.end(), r.seed), r.seed);
}

void TrialSummary::merge(const TrialSummary& other) {
  trials += other.trials;
  red_wins += other.red_wins;
  blue_wins += other.blue_wins;
  stable_non_unanimous += other.stable_non_unanimous;
  two_cycles += other.two_cycles;
  day_capped += other.day_capped;
  for (const auto& [day, count] : other.day_histogram) day_histogram[day] += count;
  delta2_sum += other.delta2_sum;
  days_sum += other.days_sum;
  max_days_observed = std::max(max_days_observed, other.max_days_observed);
  std::vector<std::uint64_t> merged;
  merged.reserve(seeds.size() + other.seeds.size());
  std::merge(seeds.begin(), seeds.end(), other.seeds.begin(), other.seeds.end(),
             std::back_inserter(merged));
  seeds = std::move(merged);
}

double TrialSummary::win_probability() const {
  return trials == 0 ? 0.0 : static_cast<double>(red_wins) / static_cast<double>(trials);
}

WilsonInterval TrialSummary::win_interval() const { return wilson_interval(red_wins, trials); }

double TrialSummary::mean_delta2() const {
  return trials == 0 ? 0.0 : delta2_sum / static_cast<double>(trials);
}

double TrialSummary::mean_days() const {
  return trials == 0 ? 0.0 : static_cast<double>(days_sum) / static_cast<double>(trials);
}

TrialSummary summarize(std::span<const TrialRecord> records) {
  TrialSummary s;
  for (const auto& r : records) s.add(r);
  return s;
}

TrialRecord run_trial(const ExperimentConfig& cfg, std::uint64_t index,
                      const TrialObserver& observer) {
  const TrialSeeds seeds = trial_seeds(cfg.params.seed, index);
  const Graph g = generate_gnp(cfg.params.n, cfg.params.p, seeds.graph);
  const Coloring c0 = initial_coloring(cfg, seeds.coloring);
  const Trajectory traj = run(g, c0, {cfg.max_days, cfg.store_colorings});

  TrialRecord r;
  r.index = index;
  r.seed = seeds.trial;
  r.outcome = outcome_kind(traj.outcome);
  r.day = outcome_day(traj.outcome).value_or(traj.days_elapsed);
  r.initial_red = c0.red_count();
  const auto red2 = traj.red_count_at(2);
  const std::uint32_t red = red2 ? *red2 : traj.days.back().red;
  r.delta2 = static_cast<double>(red) - 0.5 * static_cast<double>(cfg.params.n);
  if (observer) observer(r, g, c0, traj);
  return r;
}

std::vector<TrialRecord> run_trial_records(const ExperimentConfig& cfg,
                                           const TrialObserver& observer) {
  cfg.validate();
  std::vector<TrialRecord> records(cfg.trials);
  std::atomic<std::uint64_t> next{0};
  auto work = [&] {
    for (std::uint64_t i = next++; i < cfg.trials; i = next++) {
      records[i] = run_trial(cfg, i, observer);
    }
  };
  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(cfg.workers, cfg.trials));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        try {
          work();
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = cfg.trials;
        }
      });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
  }
  return records;
}

TrialSummary run_trials(const ExperimentConfig& cfg, const TrialObserver& observer) {
  const auto records = run_trial_records(cfg, observer);
  return summarize(records);
}

std::vector<TrialSummary> sweep(std::span<const ExperimentConfig> grid) {
  if (grid.empty()) throw ConfigError("sweep: empty grid");
  std::vector<TrialSummary> out;
  out.reserve(grid.size());
  for (const auto& cfg : grid) out.push_back(run_trials(cfg));
  return out;
}

std::string sweep_csv_header() {
  return "n,p,delta,scheme,trials,red_wins,blue_wins,stable,two_cycles,day_capped,win_prob,"
         "ci_low,ci_high,mean_days,max_days_observed,mean_delta2,seed";
}

std::string sweep_csv_row(const ExperimentConfig& cfg, const TrialSummary& s) {
  const WilsonInterval ci = s.win_interval();
  std::string row;
  row += std::to_string(cfg.params.n) + ',' + format_double(cfg.params.p) + ',' +
         std::to_string(cfg.params.delta) + ',' + scheme_name(cfg.scheme) + ',' +
         std::to_string(s.trials) + ',' + std::to_string(s.red_wins) + ',' +
         std::to_string(s.blue_wins) + ',' + std::to_string(s.stable_non_unanimous) + ',' +
         std::to_string(s.two_cycles) + ',' + std::to_string(s.day_capped) + ',' +
         format_double(s.win_probability()) + ',' + format_double(ci.low) + ',' +
         format_double(ci.high) + ',' + format_double(s.mean_days()) + ',' +
         std::to_string(s.max_days_observed) + ',' + format_double(s.mean_delta2()) + ',' +
         std::to_string(cfg.params.seed);
  return row;
}

std::size_t sweep_to_csv(std::span<const ExperimentConfig> grid, const std::filesystem::path& out,
                         unsigned workers, bool resume) {
  if (grid.empty()) throw ConfigError("sweep: empty grid");
  std::filesystem::path marker = out;
  marker += ".done";

  std::set<std::size_t> done;
  const bool continuing = resume && std::filesystem::exists(out);
  if (continuing && std::filesystem::exists(marker)) {
    std::ifstream in(marker);
    std::size_t idx = 0;
    while (in >> idx) done.insert(idx);
  }
  if (!continuing) {
    std::ofstream csv(out, std::ios::trunc);
    if (!csv) throw ConfigError("cannot write " + out.string());
    csv << sweep_csv_header() << '\n';
    std::ofstream(marker, std::ios::trunc);
  }

  std::size_t computed = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (done.count(i)) continue;
    ExperimentConfig cfg = grid[i];
    cfg.workers = workers;
    const TrialSummary s = run_trials(cfg);
    {
      std::ofstream csv(out, std::ios::app);
      csv << sweep_csv_row(cfg, s) << '\n';
    }
    {
      std::ofstream m(marker, std::ios::app);
      m << i << '\n';
    }
    ++computed;
  }
  return computed;
}

BisectResult threshold_bisect(std::uint32_t n, double p, double target_prob,
                              std::uint64_t trials_per_point, std::uint64_t seed,
                              const BisectOptions& options) {
  if (!(target_prob > 0.0 && target_prob < 1.0)) {
    throw ParameterError("threshold_bisect: target probability must lie in (0, 1)");
  }
  if (trials_per_point == 0) throw ParameterError("threshold_bisect: trials_per_point must be >= 1");
  const std::int64_t max_delta =
      options.max_delta < 0 ? static_cast<std::int64_t>(n / 2) : options.max_delta;
  if (max_delta < 1 || max_delta > static_cast<std::int64_t>(n / 2)) {
    throw ParameterError("threshold_bisect: max_delta must lie in [1, n/2]");
  }

  BisectResult result;
  auto reaches = [&](std::int64_t delta) {
    ExperimentConfig cfg;
    cfg.params = {n, p, delta, mix_seed(seed, static_cast<std::uint64_t>(delta))};
    cfg.scheme = Scheme::kFixedAdvantage;
    cfg.trials = trials_per_point;
    cfg.max_days = options.max_days;
    cfg.workers = options.workers;
    const TrialSummary s = run_trials(cfg);
    result.probes.push_back({delta, s.red_wins, s.trials, s.win_probability()});
    return s.win_probability() >= target_prob;
  };

  // Largest Delta known to miss the target (0 is never probed) and smallest
  // known to reach it.
  std::int64_t miss = 0;
  std::int64_t hit = 0;
  for (std::int64_t delta = 1;; delta = std::min(2 * delta, max_delta)) {
    if (reaches(delta)) {
      hit = delta;
      break;
    }
    miss = delta;
    if (delta == max_delta) {
      std::string msg = "threshold_bisect: win probability stays below " +
                        format_double(target_prob) + " up to delta = " +
                        std::to_string(max_delta) + " (n = " + std::to_string(n) +
                        ", p = " + format_double(p) + "); probes:";
      for (const auto& pr : result.probes) {
        msg += " " + std::to_string(pr.delta) + ":" + format_double(pr.win_probability);
      }
      throw BracketingError(msg);
    }
  }
  while (hit - miss > 1) {
    const std::int64_t mid = miss + (hit - miss) / 2;
    if (reaches(mid)) {
      hit = mid;
    } else {
      miss = mid;
    }
  }
  result.delta_star = hit;
  return result;
}

ScalingFit scaling_fit(std::span<const std::pair<double, double>> points) {
  if (points.size() < 2) throw ParameterError("scaling_fit: need at least two points");
  double sx = 0, sy = 0;
  for (const auto& [x, y] : points) {
    if (!(x > 0.0) || !(y > 0.0)) throw ParameterError("scaling_fit: coordinates must be positive");
    sx += std::log(x);
    sy += std::log(y);
  }
  const double k = static_cast<double>(points.size());
  const double mx = sx / k;
  const double my = sy / k;
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& [x, y] : points) {
    const double dx = std::log(x) - mx;
    const double dy = std::log(y) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw ParameterError("scaling_fit: all x coordinates are equal");
  ScalingFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0;
  for (const auto& [x, y] : points) {
    const double r = std::log(y) - (fit.intercept + fit.slope * std::log(x));
    ss_res += r * r;
  }
  // A constant y is fitted exactly by the zero-slope line.
  fit.r2 = syy == 0.0 ? 1.0 : 1.0 - ss_res / syy;
  return fit;
}

json trajectory_to_json(const Trajectory& traj, const ModelParams& params, Scheme scheme) {
  json days = json::array();
  for (const auto& d : traj.days) {
    days.push_back({{"t", d.day}, {"red", d.red}, {"blue", d.blue}, {"delta", d.advantage()}});
  }
  const auto day = outcome_day(traj.outcome);
  json outcome = {{"type", outcome_name(outcome_kind(traj.outcome))},
                  {"day", day ? json(*day) : json(nullptr)}};
  json out = {{"params",
               {{"n", params.n},
                {"p", params.p},
                {"delta", params.delta},
                {"scheme", scheme_name(scheme)}}},
              {"outcome", outcome},
              {"days", days},
              {"seed", params.seed}};
  if (!traj.colorings.empty()) {
    json colorings = json::array();
    for (const auto& c : traj.colorings) colorings.push_back(c.to_string());
    out["colorings"] = colorings;
  }
  return out;
}

}  // namespace majority
