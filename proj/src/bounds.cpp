#include "majority/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "majority/errors.hpp"

namespace majority {

void ConstantsConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ConfigError(std::string("constant ") + name + " must be positive and finite");
    }
  };
  positive(c_landslide, "c_landslide");
  positive(c_threshold, "c_threshold");
  positive(c_almost_red, "c_almost_red");
  positive(c_day2, "c_day2");
  positive(c_var, "c_var");
  positive(gaussian_cdf_tolerance, "gaussian_cdf_tolerance");
  if (exact_collision_cutoff < 1) throw ConfigError("exact_collision_cutoff must be >= 1");
}

double ExtendedReal::value() const {
  if (infinite_) throw std::logic_error("ExtendedReal::value() on +infinity");
  return value_;
}

namespace {

// ln k! for k <= kExactTailCutoff, accumulated in extended precision so that
// pmf terms for n up to 10^4 stay within ~1e-13 absolute.
const std::vector<long double>& log_factorials() {
  static const std::vector<long double> table = [] {
    std::vector<long double> t(kExactTailCutoff + 1);
    t[0] = 0.0L;
    for (std::size_t k = 1; k < t.size(); ++k) {
      t[k] = t[k - 1] + std::log(static_cast<long double>(k));
    }
    return t;
  }();
  return table;
}

long double log_factorial(std::uint64_t k) {
  const auto& t = log_factorials();
  if (k < t.size()) return t[k];
  return std::lgamma(static_cast<long double>(k) + 1.0L);
}

long double log_pmf(std::uint64_t n, std::uint64_t k, long double log_p, long double log_q) {
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k) +
         static_cast<long double>(k) * log_p + static_cast<long double>(n - k) * log_q;
}

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ParameterError(std::string(what) + " must lie in [0, 1], got " + std::to_string(p));
  }
}

// x ln(x / y) with the 0 ln 0 = 0 convention; y > 0 is required when x > 0.
double xlogxy(double x, double y) {
  if (x == 0.0) return 0.0;
  return x * std::log(x / y);
}

}  // namespace

ExtendedReal kl_divergence(double x, double y) {
  check_probability(x, "kl_divergence: x");
  check_probability(y, "kl_divergence: y");
  if ((y == 0.0 && x != 0.0) || (y == 1.0 && x != 1.0)) return ExtendedReal::infinity();
  const double d = xlogxy(x, y) + xlogxy(1.0 - x, 1.0 - y);
  // Rounding can push the sum a hair below zero when x is close to y.
  return ExtendedReal::finite(d < 0.0 ? 0.0 : d);
}

double chernoff_tail(std::uint64_t n, double p, double eps, TailSide side) {
  check_probability(p, "chernoff_tail: p");
  if (n == 0) return 1.0;
  double x = 0.0;
  if (side == TailSide::kUpper) {
    if (!(eps > 0.0 && eps < 1.0 - p)) return 1.0;
    x = p + eps;
  } else {
    if (!(eps > 0.0 && eps < p)) return 1.0;
    x = p - eps;
  }
  const ExtendedReal d = kl_divergence(x, p);
  if (d.is_infinite()) return 0.0;
  return std::exp(-d.value() * static_cast<double>(n));
}

double window_bound(std::uint64_t n, double p, double t) {
  check_probability(p, "window_bound: p");
  const double pn = p * static_cast<double>(n);
  if (!(pn > 0.0)) throw ParameterError("window_bound: pn must be positive");
  if (!(t > 0.0)) throw ParameterError("window_bound: t must be positive");
  if (std::isinf(t)) return 1.0;
  const double exponent = t * t / (2.0 * (1.0 + t / (3.0 * std::sqrt(pn))));
  return 1.0 - 2.0 * std::exp(-exponent);
}

double poisson_tail_bound(std::uint64_t n, double p, double t) {
  check_probability(p, "poisson_tail_bound: p");
  const double epn = std::numbers::e * p * static_cast<double>(n);
  if (!(t >= epn)) {
    throw PreconditionError("poisson_tail_bound: requires t >= e p n = " + std::to_string(epn));
  }
  if (t == 0.0) return 2.0;
  if (epn == 0.0) return 0.0;
  return 2.0 * std::exp(t * std::log(epn / t));
}

double log_binomial_pmf(std::uint64_t n, std::uint64_t k, double p) {
  check_probability(p, "log_binomial_pmf: p");
  if (k > n) return -std::numeric_limits<double>::infinity();
  if (p == 0.0) return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  if (p == 1.0) return k == n ? 0.0 : -std::numeric_limits<double>::infinity();
  return static_cast<double>(log_pmf(n, k, std::log(static_cast<long double>(p)),
                                     std::log1p(-static_cast<long double>(p))));
}

double exact_tail(std::uint64_t n, double p, double t, TailSide side, std::uint64_t cutoff) {
  check_probability(p, "exact_tail: p");
  if (n > cutoff) {
    throw ParameterError("exact_tail: n = " + std::to_string(n) + " exceeds the cutoff " +
                         std::to_string(cutoff));
  }
  if (std::isnan(t)) throw ParameterError("exact_tail: threshold is NaN");

  // Integer range [lo, hi] of k included in the queried side.
  std::int64_t lo = 0;
  std::int64_t hi = static_cast<std::int64_t>(n);
  if (side == TailSide::kUpper) {
    if (t > static_cast<double>(n)) return 0.0;
    lo = t <= 0.0 ? 0 : static_cast<std::int64_t>(std::ceil(t));
  } else {
    if (t < 0.0) return 0.0;
    hi = t >= static_cast<double>(n) ? hi : static_cast<std::int64_t>(std::floor(t));
  }
  if (p == 0.0) return lo == 0 ? 1.0 : 0.0;
  if (p == 1.0) return hi == static_cast<std::int64_t>(n) ? 1.0 : 0.0;

  const long double log_p = std::log(static_cast<long double>(p));
  const long double log_q = std::log1p(-static_cast<long double>(p));
  long double sum = 0.0L;
  for (std::int64_t k = lo; k <= hi; ++k) {
    sum += std::exp(log_pmf(n, static_cast<std::uint64_t>(k), log_p, log_q));
  }
  return static_cast<double>(sum > 1.0L ? 1.0L : sum);
}

double gaussian_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

CollisionResult collision_probability(std::uint64_t m, double p, std::uint64_t cutoff) {
  check_probability(p, "collision_probability: p");
  if (m == 0 || p == 0.0 || p == 1.0) return {1.0, true};
  if (m > cutoff) {
    const double v = 1.0 / (2.0 * std::sqrt(std::numbers::pi * p * (1.0 - p) *
                                            static_cast<double>(m)));
    return {v, false};
  }
  const long double log_p = std::log(static_cast<long double>(p));
  const long double log_q = std::log1p(-static_cast<long double>(p));
  long double sum = 0.0L;
  for (std::uint64_t k = 0; k <= m; ++k) {
    sum += std::exp(2.0L * log_pmf(m, k, log_p, log_q));
  }
  return {static_cast<double>(sum), true};
}

double almost_red_probability_from_collision(double pn, std::int64_t D, int sign,
                                             double collision) {
  const double root = std::sqrt(pn);
  return gaussian_cdf(static_cast<double>(D) / (2.0 * root) + 2.0 * sign * collision * root);
}

AlmostRedEstimate almost_red_probability_estimate(std::uint64_t n, double p, std::int64_t D,
                                                  int sign, const ConstantsConfig& constants) {
  check_probability(p, "almost_red_probability_estimate: p");
  const double pn = p * static_cast<double>(n);
  if (!(pn > 0.0)) throw ParameterError("almost_red_probability_estimate: pn must be positive");
  if (D < 0) throw ParameterError("almost_red_probability_estimate: D must be >= 0");
  if (sign != 1 && sign != -1) throw ParameterError("almost_red_probability_estimate: sign must be +/-1");
  const auto half = static_cast<std::int64_t>(n / 2);
  const auto ceil_pn = static_cast<std::int64_t>(std::ceil(pn));
  if (half < ceil_pn) {
    throw ParameterError("almost_red_probability_estimate: n/2 - ceil(pn) is negative");
  }
  AlmostRedEstimate e;
  e.binomial_trials = static_cast<std::uint64_t>(half - ceil_pn);
  e.collision = collision_probability(e.binomial_trials, p, constants.exact_collision_cutoff);
  const double root = std::sqrt(pn);
  e.argument = static_cast<double>(D) / (2.0 * root) + 2.0 * sign * e.collision.value * root;
  e.value = gaussian_cdf(e.argument);
  e.error_scale = 1.0 / root;
  return e;
}

TheoryThresholds theory_thresholds(std::uint64_t n, double p, const ConstantsConfig& constants) {
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("theory_thresholds: need 0 < p < 1");
  if (n < 3) throw ParameterError("theory_thresholds: need n >= 3");
  const double nd = static_cast<double>(n);
  const double ln_n = std::log(nd);
  TheoryThresholds t;
  t.delta_min = constants.c_threshold * std::pow(p, -1.5) / std::sqrt(nd) * ln_n;
  t.var_A_upper = constants.c_var * nd * ln_n * ln_n / p;
  t.excess_scale = constants.c_almost_red * std::sqrt(nd / p);
  return t;
}

}  // namespace majority
