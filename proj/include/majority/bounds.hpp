#pragma once

#include <cstdint>

namespace majority {

// Knobs for the constants the theory proves to exist without fixing them.
struct ConstantsConfig {
  double c_landslide = 100.0;   // |B_{t+1}| <= C/(pn) |B_t| in the landslide phase
  double c_threshold = 1.0;     // Delta >= C p^{-3/2} n^{-1/2} ln n
  double c_almost_red = 0.01;   // E|A| >= n/2 + c D sqrt(n/p)
  double c_day2 = 0.25;         // sum_v l_2(v) >= 2 c Delta pn
  double c_var = 1.0;           // Var|A| <= c n ln^2 n / p
  std::uint64_t exact_collision_cutoff = 1'000'000;
  double gaussian_cdf_tolerance = 1e-7;

  // Throws ConfigError unless every knob is positive and the cutoff >= 1.
  void validate() const;

  friend bool operator==(const ConstantsConfig&, const ConstantsConfig&) = default;
};

// A nonnegative real that may be +infinity, flagged explicitly.
class ExtendedReal {
 public:
  static ExtendedReal finite(double v) { return ExtendedReal(v, false); }
  static ExtendedReal infinity() { return ExtendedReal(0.0, true); }

  bool is_infinite() const { return infinite_; }
  // Throws std::logic_error when infinite.
  double value() const;

 private:
  ExtendedReal(double v, bool inf) : value_(v), infinite_(inf) {}
  double value_;
  bool infinite_;
};

// Bernoulli relative entropy D(x || y) = x ln(x/y) + (1-x) ln((1-x)/(1-y)),
// with 0 ln 0 = 0. Infinite when y is 0 or 1 and x differs from y. Throws
// ParameterError outside [0, 1].
ExtendedReal kl_divergence(double x, double y);

enum class TailSide { kUpper, kLower };

// exp(-D(p +/- eps || p) n): bounds P(X >= (p + eps) n) (upper) or
// P(X <= (p - eps) n) (lower) for X ~ Bin(n, p). Returns 1 when eps is outside
// (0, 1 - p) resp. (0, p), where the inequality holds trivially.
double chernoff_tail(std::uint64_t n, double p, double eps, TailSide side);

// 1 - 2 exp(-t^2 / (2 (1 + t / (3 sqrt(pn))))): lower bound on
// P(|X - pn| <= t sqrt(pn)). Throws ParameterError when pn == 0 or t <= 0.
double window_bound(std::uint64_t n, double p, double t);

// 2 (e p n / t)^t: upper bound on P(X > t). Throws PreconditionError when
// t < e p n.
double poisson_tail_bound(std::uint64_t n, double p, double t);

inline constexpr std::uint64_t kExactTailCutoff = 1'000'000;

// P(X >= t) (upper) or P(X <= t) (lower) for X ~ Bin(n, p), summed from
// log-space pmf terms. Throws ParameterError when n > cutoff.
double exact_tail(std::uint64_t n, double p, double t, TailSide side,
                  std::uint64_t cutoff = kExactTailCutoff);

// ln Bin(n, p) pmf at k (k <= n, n <= kExactTailCutoff).
double log_binomial_pmf(std::uint64_t n, std::uint64_t k, double p);

// Standard normal CDF.
double gaussian_cdf(double x);

struct CollisionResult {
  double value = 0.0;
  bool exact = true;  // false when the local-CLT surrogate was used
};

// P(Z+ = Z-) for independent Z+, Z- ~ Bin(m, p). Exact sum of squared pmf
// terms for m <= cutoff, else 1 / (2 sqrt(pi p (1-p) m)).
CollisionResult collision_probability(std::uint64_t m, double p,
                                      std::uint64_t cutoff = 1'000'000);

struct AlmostRedEstimate {
  double value = 0.0;        // Phi(D / (2 sqrt(pn)) + 2 sign P(Z+=Z-) sqrt(pn))
  double error_scale = 0.0;  // 1 / sqrt(pn), the order of the unquantified error
  double argument = 0.0;     // the Phi argument
  CollisionResult collision;
  std::uint64_t binomial_trials = 0;  // floor(n/2) - ceil(pn)
};

// Day-one Gaussian estimate of P(v is D-almost Red) for a vertex whose
// balanced color is `sign`. Throws ParameterError for pn <= 0, D < 0, sign not
// +/-1, or floor(n/2) < ceil(pn).
AlmostRedEstimate almost_red_probability_estimate(std::uint64_t n, double p, std::int64_t D,
                                                  int sign, const ConstantsConfig& constants = {});

// Same estimate with the collision probability supplied directly.
double almost_red_probability_from_collision(double pn, std::int64_t D, int sign,
                                             double collision);

struct TheoryThresholds {
  double delta_min = 0.0;    // c_threshold p^{-3/2} n^{-1/2} ln n
  double var_A_upper = 0.0;  // c_var n ln^2 n / p
  double excess_scale = 0.0;  // c_almost_red sqrt(n/p)

  // c_almost_red D sqrt(n/p)
  double almost_red_excess_lower(double D) const { return excess_scale * D; }
};

// Throws ParameterError unless 0 < p < 1 and n >= 3.
TheoryThresholds theory_thresholds(std::uint64_t n, double p, const ConstantsConfig& constants);

}  // namespace majority
