#pragma once

namespace nakamoto {

// Numerical thresholds shared by the library and its test suites.
struct Tolerances {
  // Identity checks between special-function routes.
  double identity = 1e-12;
  // Closed form vs. brute-force oracle (linear solves, recompositions).
  double oracle = 1e-10;
  // Relative disagreement between the two closed-form routes in the model
  // that is reported as an integrity failure.
  double dual_path = 1e-8;
  // Monte Carlo agreement, in standard errors.
  double monte_carlo_sigmas = 3.0;
  // Continued fraction stopping criterion.
  double continued_fraction_eps = 1e-16;
  int continued_fraction_max_iter = 20000;
};

inline constexpr Tolerances kTolerances{};

}  // namespace nakamoto
