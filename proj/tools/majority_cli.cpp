// Command-line front end: run / sweep / bisect / analyze / bounds / generate.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "majority/analysis.hpp"
#include "majority/bounds.hpp"
#include "majority/coloring.hpp"
#include "majority/dynamics.hpp"
#include "majority/errors.hpp"
#include "majority/graph.hpp"
#include "majority/harness.hpp"
#include "majority/rng.hpp"

namespace {

using namespace majority;

constexpr int kExitConfig = 2;
constexpr int kExitBracketing = 3;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// key=value pairs for `bounds --args`.
class ArgMap {
 public:
  explicit ArgMap(const std::vector<std::string>& raw) {
    for (const auto& item : raw) {
      const auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw ConfigError("bounds: argument \"" + item + "\" is not key=value");
      }
      values_[item.substr(0, eq)] = item.substr(eq + 1);
    }
  }

  double real(const std::string& key) {
    used_.push_back(key);
    return std::stod(get(key));
  }
  std::uint64_t count(const std::string& key) {
    used_.push_back(key);
    const std::string& s = get(key);
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      throw ConfigError("bounds: " + key + " must be a nonnegative integer");
    }
    return std::stoull(s);
  }
  std::int64_t integer(const std::string& key) {
    used_.push_back(key);
    std::size_t pos = 0;
    const std::string& s = get(key);
    const long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw ConfigError("bounds: " + key + " must be an integer");
    return v;
  }
  TailSide side(const std::string& key) {
    used_.push_back(key);
    const std::string& s = get(key);
    if (s == "upper") return TailSide::kUpper;
    if (s == "lower") return TailSide::kLower;
    throw ConfigError("bounds: side must be upper or lower");
  }
  bool has(const std::string& key) const { return values_.count(key) != 0; }

  // Header/row over the keys read so far, in the order they were read.
  std::pair<std::string, std::string> csv(const std::string& op) const {
    std::string header = "op";
    std::string row = op;
    for (const auto& key : used_) {
      header += "," + key;
      row += "," + values_.at(key);
    }
    for (const auto& [key, _] : values_) {
      if (std::find(used_.begin(), used_.end(), key) == used_.end()) {
        throw ConfigError("bounds: unused argument \"" + key + "\"");
      }
    }
    return {header, row};
  }

 private:
  const std::string& get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("bounds: missing argument \"" + key + "\"");
    return it->second;
  }

  std::map<std::string, std::string> values_;
  std::vector<std::string> used_;
};

int run_bounds(const std::string& op, const std::vector<std::string>& raw) {
  ArgMap args(raw);
  std::vector<std::pair<std::string, std::string>> outputs;
  if (op == "kl") {
    const double x = args.real("x");
    const double y = args.real("y");
    const ExtendedReal d = kl_divergence(x, y);
    outputs.emplace_back("value", d.is_infinite() ? "inf" : num(d.value()));
  } else if (op == "chernoff") {
    const auto n = args.count("n");
    const double p = args.real("p");
    const double eps = args.real("eps");
    outputs.emplace_back("value", num(chernoff_tail(n, p, eps, args.side("side"))));
  } else if (op == "window") {
    const auto n = args.count("n");
    const double p = args.real("p");
    outputs.emplace_back("value", num(window_bound(n, p, args.real("t"))));
  } else if (op == "poisson") {
    const auto n = args.count("n");
    const double p = args.real("p");
    outputs.emplace_back("value", num(poisson_tail_bound(n, p, args.real("t"))));
  } else if (op == "exact_tail") {
    const auto n = args.count("n");
    const double p = args.real("p");
    const double t = args.real("t");
    outputs.emplace_back("value", num(exact_tail(n, p, t, args.side("side"))));
  } else if (op == "gaussian_cdf") {
    outputs.emplace_back("value", num(gaussian_cdf(args.real("x"))));
  } else if (op == "collision") {
    const auto m = args.count("m");
    const double p = args.real("p");
    const std::uint64_t cutoff = args.has("cutoff") ? args.count("cutoff") : 1'000'000;
    const CollisionResult r = collision_probability(m, p, cutoff);
    outputs.emplace_back("value", num(r.value));
    outputs.emplace_back("exact", r.exact ? "1" : "0");
  } else if (op == "almost_red_estimate") {
    const auto n = args.count("n");
    const double p = args.real("p");
    const auto D = args.integer("D");
    const auto sign = static_cast<int>(args.integer("sign"));
    const AlmostRedEstimate e = almost_red_probability_estimate(n, p, D, sign);
    outputs.emplace_back("value", num(e.value));
    outputs.emplace_back("error_scale", num(e.error_scale));
    outputs.emplace_back("collision", num(e.collision.value));
  } else if (op == "thresholds") {
    const auto n = args.count("n");
    const double p = args.real("p");
    ConstantsConfig c;
    if (args.has("c_threshold")) c.c_threshold = args.real("c_threshold");
    if (args.has("c_almost_red")) c.c_almost_red = args.real("c_almost_red");
    if (args.has("c_var")) c.c_var = args.real("c_var");
    const double D = args.has("D") ? args.real("D") : 0.0;
    const TheoryThresholds t = theory_thresholds(n, p, c);
    outputs.emplace_back("delta_min", num(t.delta_min));
    outputs.emplace_back("almost_red_excess_lower", num(t.almost_red_excess_lower(D)));
    outputs.emplace_back("var_A_upper", num(t.var_A_upper));
  } else {
    throw ConfigError("bounds: unknown op \"" + op + "\"");
  }
  auto [header, row] = args.csv(op);
  for (const auto& [name, value] : outputs) {
    header += "," + name;
    row += "," + value;
  }
  std::cout << header << '\n' << row << '\n';
  return 0;
}

int run_analyze(std::uint32_t n, double p, std::int64_t delta, std::uint64_t seed,
                std::int64_t D, const std::string& out_path, bool with_regularity) {
  ModelParams params{n, p, delta, seed};
  params.validate();
  const Graph g = generate_gnp(n, p, mix_seed(seed, 0));
  const DefectorScenario scen = balanced_with_defectors(n, delta, mix_seed(seed, 1));
  const auto day_one = signed_discrepancies(g, step(g, scen.hat_coloring));
  const AlmostRedReport almost = almost_red_set(day_one, D);
  std::vector<char> almost_flag(n, 0), vulnerable(n, 0), flipping(n, 0);
  for (Vertex v : almost.members) almost_flag[v] = 1;
  for (Vertex v : vulnerable_set(g, scen)) vulnerable[v] = 1;
  for (Vertex v : flipping_set(g, scen)) flipping[v] = 1;

  std::ofstream out(out_path);
  if (!out) throw ConfigError("cannot write " + out_path);
  out << "vertex,discrepancy,almost_red@" << D << ",vulnerable,flipping,regular\n";
  for (Vertex v = 0; v < n; ++v) {
    out << v << ',' << day_one[v] << ',' << int(almost_flag[v]) << ',' << int(vulnerable[v])
        << ',' << int(flipping[v]) << ',';
    if (with_regularity && n >= 3) {
      out << int(regularity_report(g, scen.hat_coloring, v, p).regular);
    }
    out << '\n';
  }
  std::cerr << "almost_red=" << almost.count << " excess=" << almost.excess << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Majority dynamics on G(n, p) random graphs"};
  app.require_subcommand(1);

  // run
  auto* run_cmd = app.add_subcommand("run", "Monte Carlo trials for one configuration");
  ExperimentConfig run_cfg;
  std::string scheme = "fixed_advantage";
  std::string json_out;
  run_cmd->add_option("--n", run_cfg.params.n, "vertex count")->required();
  run_cmd->add_option("--p", run_cfg.params.p, "edge probability")->required();
  run_cmd->add_option("--delta", run_cfg.params.delta, "initial advantage (integer)");
  run_cmd->add_option("--scheme", scheme, "fixed_advantage | random_half | balanced_defectors");
  run_cmd->add_option("--trials", run_cfg.trials, "number of trials");
  run_cmd->add_option("--seed", run_cfg.params.seed, "master seed");
  run_cmd->add_option("--max-days", run_cfg.max_days, "day cap (default n + 2)");
  run_cmd->add_option("--workers", run_cfg.workers, "worker threads");
  run_cmd->add_flag("--store-colorings", run_cfg.store_colorings, "keep every day's coloring");
  run_cmd->add_option("--json", json_out, "write trajectory JSON here");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a grid of configurations to CSV");
  std::string grid_path;
  std::string sweep_out;
  unsigned sweep_workers = 1;
  bool resume = false;
  sweep_cmd->add_option("--config", grid_path, "JSON array of experiment configs")->required();
  sweep_cmd->add_option("--out", sweep_out, "CSV output")->required();
  sweep_cmd->add_option("--workers", sweep_workers, "worker threads");
  sweep_cmd->add_flag("--resume", resume, "skip rows recorded in <out>.done");

  // bisect
  auto* bisect_cmd = app.add_subcommand("bisect", "Smallest Delta reaching a target win probability");
  std::uint32_t b_n = 0;
  double b_p = 0, target = 0.9;
  std::uint64_t per_point = 200, b_seed = 0;
  BisectOptions b_opts;
  bisect_cmd->add_option("--n", b_n, "vertex count")->required();
  bisect_cmd->add_option("--p", b_p, "edge probability")->required();
  bisect_cmd->add_option("--target", target, "target win probability");
  bisect_cmd->add_option("--trials-per-point", per_point, "trials per probe");
  bisect_cmd->add_option("--seed", b_seed, "master seed");
  bisect_cmd->add_option("--max-delta", b_opts.max_delta, "upper end of the search (default n/2)");
  bisect_cmd->add_option("--max-days", b_opts.max_days, "day cap (default n + 2)");
  bisect_cmd->add_option("--workers", b_opts.workers, "worker threads");

  // analyze
  auto* analyze_cmd = app.add_subcommand("analyze", "Per-vertex diagnostics of one defector scenario");
  std::uint32_t a_n = 0;
  double a_p = 0;
  std::int64_t a_delta = 0, a_D = 0;
  std::uint64_t a_seed = 0;
  std::string a_out;
  bool no_regularity = false;
  analyze_cmd->add_option("--n", a_n, "vertex count")->required();
  analyze_cmd->add_option("--p", a_p, "edge probability")->required();
  analyze_cmd->add_option("--delta", a_delta, "number of swing vertices")->required();
  analyze_cmd->add_option("--seed", a_seed, "master seed");
  analyze_cmd->add_option("--D", a_D, "almost-red margin")->required();
  analyze_cmd->add_option("--out", a_out, "CSV output")->required();
  analyze_cmd->add_flag("--no-regularity", no_regularity, "leave the regular column empty");

  // bounds
  auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate a probability bound");
  std::string op;
  std::vector<std::string> bound_args;
  bounds_cmd->add_option("--op", op, "kl | chernoff | window | poisson | exact_tail | "
                                     "gaussian_cdf | collision | almost_red_estimate | thresholds")
      ->required();
  bounds_cmd->add_option("--args", bound_args, "key=value pairs");

  // generate
  auto* gen_cmd = app.add_subcommand("generate", "Write a G(n, p) sample as an edge list");
  std::uint32_t g_n = 0;
  double g_p = 0;
  std::uint64_t g_seed = 0;
  std::string g_out;
  gen_cmd->add_option("--n", g_n, "vertex count")->required();
  gen_cmd->add_option("--p", g_p, "edge probability")->required();
  gen_cmd->add_option("--seed", g_seed, "master seed");
  gen_cmd->add_option("--out", g_out, "edge list output")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run_cmd) {
      run_cfg.scheme = parse_scheme(scheme);
      run_cfg.validate();
      std::vector<nlohmann::json> trajectories(json_out.empty() ? 0 : run_cfg.trials);
      TrialObserver observer;
      if (!json_out.empty()) {
        observer = [&](const TrialRecord& r, const Graph&, const Coloring&, const Trajectory& t) {
          ModelParams params = run_cfg.params;
          params.seed = r.seed;
          trajectories[r.index] = trajectory_to_json(t, params, run_cfg.scheme);
        };
      }
      const TrialSummary s = run_trials(run_cfg, observer);
      std::cout << sweep_csv_header() << '\n' << sweep_csv_row(run_cfg, s) << '\n';
      if (!json_out.empty()) {
        std::ofstream out(json_out);
        if (!out) throw ConfigError("cannot write " + json_out);
        out << (trajectories.size() == 1 ? trajectories.front() : nlohmann::json(trajectories))
                   .dump(2)
            << '\n';
      }
    } else if (*sweep_cmd) {
      std::ifstream in(grid_path);
      if (!in) throw ConfigError("cannot read " + grid_path);
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(in);
      } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("grid: ") + e.what());
      }
      if (!j.is_array()) throw ConfigError("grid must be a JSON array of configs");
      std::vector<ExperimentConfig> grid;
      for (const auto& item : j) grid.push_back(config_from_json(item));
      const std::size_t rows = sweep_to_csv(grid, sweep_out, sweep_workers, resume);
      std::cerr << "computed " << rows << " of " << grid.size() << " rows\n";
    } else if (*bisect_cmd) {
      const BisectResult r = threshold_bisect(b_n, b_p, target, per_point, b_seed, b_opts);
      std::cout << "delta,red_wins,trials,win_prob\n";
      for (const auto& probe : r.probes) {
        std::cout << probe.delta << ',' << probe.red_wins << ',' << probe.trials << ','
                  << num(probe.win_probability) << '\n';
      }
      std::cout << "delta_star," << r.delta_star << '\n';
    } else if (*analyze_cmd) {
      return run_analyze(a_n, a_p, a_delta, a_seed, a_D, a_out, !no_regularity);
    } else if (*bounds_cmd) {
      return run_bounds(op, bound_args);
    } else if (*gen_cmd) {
      const Graph g = generate_gnp(g_n, g_p, g_seed);
      std::ofstream out(g_out);
      if (!out) throw ConfigError("cannot write " + g_out);
      write_edge_list(out, g);
    }
  } catch (const BracketingError& e) {
    std::cerr << "bracketing error: " << e.what() << '\n';
    return kExitBracketing;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return 0;
}
