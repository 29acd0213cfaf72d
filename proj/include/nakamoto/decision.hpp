#pragma once

#include <cstdint>

namespace nakamoto::decision {

// Smallest double-spend value v (coinbase units) at which the attack's
// revenue ratio reaches the honest one, for a fixed threshold A. Zero when the
// attack is already profitable at v = 0. Throws UnsatisfiableError if the
// success probability is numerically zero.
double min_profitable_value_exact(double q, std::int64_t z, std::int64_t A);

struct MinValueOverThreshold {
  double value;
  std::int64_t A;
};

// min over A in [z, A_max] of min_profitable_value_exact.
MinValueOverThreshold min_profitable_value_over_threshold(double q, std::int64_t z,
                                                          std::int64_t A_max);

// Small-q approximation v0 = q^-z / (2 C(2z-1, z)).
double min_profitable_value_asymptotic(double q, std::int64_t z);

struct AttackerQuery {
  double q;
  std::int64_t z;
  double v;
  // Search cap; 0 selects the default 10 z + 100.
  std::int64_t A_max = 0;
};

struct OptimalThreshold {
  std::int64_t A0;
  double gamma_at_A0;
  std::int64_t A_max_searched;
};

// Exhaustive argmax of the revenue ratio over A in [z, A_max] (ties go to the
// smaller A). If the maximiser sits on the cap the range is doubled once;
// SearchBoundError if it is still on the cap.
OptimalThreshold optimal_threshold(const AttackerQuery& query);

struct MerchantQuery {
  double q;
  double v;
  std::int64_t z_max = 100;
};

struct SafeConfirmations {
  std::int64_t z;  // z_max + 1 when not found
  bool found;
  double best_gamma;  // attacker's best revenue ratio at the returned z
};

// Smallest z <= z_max for which no threshold A >= z makes the attack strictly
// more profitable than honest mining.
SafeConfirmations min_safe_confirmations(const MerchantQuery& query);

}  // namespace nakamoto::decision
