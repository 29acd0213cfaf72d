#pragma once

#include <cstdint>
#include <string>

namespace nakamoto::model {

// One configuration of the (A,1) double-spend attack. v is expressed in
// coinbase units; b and tau0 only scale reported quantities back to coins
// and seconds.
struct AttackParams {
  double q = 0.1;
  std::int64_t z = 2;
  std::int64_t A = 3;
  double v = 1.0;
  double b = 12.5;
  double tau0 = 600.0;

  // Throws DomainError naming the first violated invariant.
  void validate() const;
};

struct ClosedFormReport {
  double p_success;
  double e_revenue_b;
  double e_duration_tau0;
  double gamma_attack;  // b / tau0 units
  double gamma_honest;  // b / tau0 units
  bool profitable;      // gamma_attack > gamma_honest, strictly
};

// Two evaluations of one quantity: the compact closed form returned to
// callers, and the proof-structure form built from I_p(z,z) and I_q(z,z).
struct DualRoute {
  double closed_form;
  double expanded;
  // Rounding-error scale of the expanded route (sum of absolute terms).
  double expanded_scale;
};

// Model for a fixed hashrate q and confirmation count z. All special-function
// values depend on (q, z) only, so sweeps over A and v reuse them.
class NakamotoModel {
 public:
  NakamotoModel(double q, std::int64_t z);

  double q() const { return q_; }
  double p() const { return p_; }
  double lambda() const { return lambda_; }
  std::int64_t z() const { return z_; }

  // I_{4pq}(z, 1/2), the success probability without a give-up threshold.
  double success_probability_inf() const { return i4_; }
  // I_{(p-q)^2}(1/2, z) = 1 - I_{4pq}(z, 1/2).
  double success_probability_inf_complement() const { return i4c_; }
  // p^(z-1) q^z / B(z, z)
  double density_term() const { return density_; }

  double success_probability(std::int64_t A) const;
  double expected_duration(std::int64_t A) const;
  double expected_revenue(std::int64_t A, double v) const;
  // Limit of expected_revenue as A grows without bound.
  double expected_revenue_inf(double v) const;
  double revenue_ratio(std::int64_t A, double v) const;
  ClosedFormReport report(std::int64_t A, double v) const;

  DualRoute success_probability_routes(std::int64_t A) const;
  DualRoute expected_duration_routes(std::int64_t A) const;
  DualRoute expected_revenue_routes(std::int64_t A, double v) const;

 private:
  void check_threshold(std::int64_t A) const;
  double checked(const DualRoute& r, const char* what, std::int64_t A) const;

  double q_;
  double p_;
  double lambda_;
  double one_minus_lambda_;
  std::int64_t z_;
  double i4_;
  double i4c_;
  double ip_;  // I_p(z, z)
  double iq_;  // I_q(z, z)
  double density_;
};

double success_probability(const AttackParams& params);
double success_probability_inf(double q, std::int64_t z);
double expected_duration(const AttackParams& params);
double expected_revenue(const AttackParams& params);
double revenue_ratio(const AttackParams& params);
inline double honest_revenue_ratio(double q) { return q; }
ClosedFormReport evaluate(const AttackParams& params);

struct AsymptoticEstimate {
  std::string name;
  double estimate;
  double exact;
  double relative_gap;
};

// Asymptotic approximations next to the exact values they approximate.
struct AsymptoticReport {
  AsymptoticEstimate p_inf_large_z;     // s^z / sqrt(pi (1-s) z)
  AsymptoticEstimate p_inf_small_q;     // 2 C(2z-1, z) q^z
  AsymptoticEstimate revenue_small_q;   // [2 C(2z-1,z)(v+1) + 2/B(z,z)] q^z
  AsymptoticEstimate duration_small_q;  // 1/q
  AsymptoticEstimate gamma_small_q;     // [2 C(2z-1,z)(v+1) + 2/B(z,z)] q^(z+1)
  AsymptoticEstimate duration_large_A;  // I_{(p-q)^2}(1/2, z) A / (p - q)
  AsymptoticEstimate revenue_large_A;   // E[R_inf]
};

AsymptoticReport asymptotics(const AttackParams& params);

}  // namespace nakamoto::model
