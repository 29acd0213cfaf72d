#pragma once

#include <cstdint>
#include <optional>

namespace nakamoto::walks {

// Biased simple random walk on {0, ..., upper} absorbed at both ends. Steps
// are +1 with probability p and -1 with probability q = 1 - p, q < 1/2.
// Absorption at 0 is "ruin" (for the attacker's lag, a successful catch-up).
class WalkSpec {
 public:
  static WalkSpec make(double q, std::int64_t start, std::int64_t upper);

  double p() const { return 1.0 - q_; }
  double q() const { return q_; }
  // lambda = q / p, in (0, 1).
  double lambda() const { return q_ / (1.0 - q_); }
  std::int64_t start() const { return start_; }
  std::int64_t upper() const { return upper_; }

 private:
  WalkSpec(double q, std::int64_t start, std::int64_t upper) : q_(q), start_(start), upper_(upper) {}
  double q_;
  std::int64_t start_;
  std::int64_t upper_;
};

// lambda^n computed as exp(n ln lambda); underflows cleanly to 0.
double lambda_power(double q, double n);
// 1 - lambda^n without cancellation.
double one_minus_lambda_power(double q, double n);

// P[walk from start hits 0 before upper] = (l^m - l^M) / (1 - l^M).
double ruin_probability(const WalkSpec& w);

// Expected number of steps until the walk, started Y above the lower barrier
// and X below the upper one, is absorbed:
//   ((X + Y) / (p - q)) * ((1 - l^Y) / (1 - l^(X+Y)) - Y / (X + Y)).
// Each step is one block event, so this is also the expected time in units of
// the mean inter-block time.
double expected_absorption_time(std::int64_t x_upper_gap, std::int64_t y_lower_gap, double q);

// E[number of left steps before absorption | absorbed at 0]. Requires
// 1 <= start < upper.
double expected_left_steps_given_ruin(const WalkSpec& w);

// Negative binomial: number of failures (probability q) before the z-th
// success (probability p).
struct NegBinParams {
  double p;
  std::int64_t z;
  std::int64_t m;

  double q() const { return 1.0 - p; }
  void validate() const;
};

double negbin_pmf(const NegBinParams& nb, std::int64_t j);
double log_negbin_pmf(const NegBinParams& nb, std::int64_t j);

// Closed forms of the truncated sums over j < m of pmf(j) weighted by
// 1, j, (q/p)^(z-j) and j (q/p)^(z-j). The last two exist only for m == z.
struct NegBinPartialSums {
  double s0;                 // sum pmf                 = I_p(z, m)
  double s1;                 // sum pmf j               = (qz/p) I_p(z,m) - p^(z-1) q^m / B(z,m)
  std::optional<double> t0;  // sum pmf l^(z-j)         = I_q(z, z)
  std::optional<double> t1;  // sum pmf j l^(z-j)       = (pz/q) I_q(z,z) - q^(z-1) p^z / B(z,z)
};

NegBinPartialSums negbin_partial_sums(const NegBinParams& nb);

}  // namespace nakamoto::walks
