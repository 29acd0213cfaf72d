#pragma once

#include <cstdint>

namespace nakamoto::specfun {

// Arguments of the regularized incomplete Beta function I_x(a, b).
struct RegBetaArgs {
  double x;
  double a;
  double b;
};

// I_x(a, b) together with its complement 1 - I_x(a, b) = I_{1-x}(b, a),
// each computed without subtractive cancellation.
struct RegBetaPair {
  double value;
  double complement;
};

// ln Gamma(a) for a > 0, Lanczos approximation (g = 607/128, 15 terms).
double log_gamma(double a);

// Stirling remainder ln Gamma(a) - [(a - 1/2) ln a - a + ln(2 pi)/2] for a >= 10.
double stirling_remainder(double a);

double log_beta(double a, double b);
double beta(double a, double b);

// Regularized incomplete Beta I_x(a, b) via the Lentz continued fraction.
double reg_inc_beta(const RegBetaArgs& args);
inline double reg_inc_beta(double x, double a, double b) { return reg_inc_beta({x, a, b}); }

// Variant taking both x and y = 1 - x. Callers that know 1 - x more accurately
// than the rounded subtraction (for example x = 4pq, y = (p - q)^2) should use
// this overload.
RegBetaPair reg_inc_beta_pair(double x, double y, double a, double b);

// Log of the Beta-density front factor x^a y^b / B(a, b).
double log_beta_front(double x, double y, double a, double b);

// Binomial coefficient C(n, k). Correctly rounded for n <= 60; log-space above.
double binomial(std::uint64_t n, std::uint64_t k);
double log_binomial(std::uint64_t n, std::uint64_t k);

}  // namespace nakamoto::specfun
