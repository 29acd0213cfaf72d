#include "nakamoto/walks.hpp"

#include <cmath>
#include <sstream>

#include "nakamoto/errors.hpp"
#include "nakamoto/specfun.hpp"

namespace nakamoto::walks {
namespace {

void require_biased_q(const char* op, double q) {
  if (!(q > 0.0 && q < 0.5)) {
    std::ostringstream os;
    os << op << ": q must lie in (0, 1/2), got " << q;
    throw DomainError(os.str());
  }
}

// ln(q/p). Near q = 1/2 the ratio is 1 - (p-q)/p and the log1p form keeps the
// relative accuracy that the (1 - l^n) factors need.
double log_lambda(double q) {
  const double p = 1.0 - q;
  if (q < 1.0 / 3.0) return std::log(q / p);
  return std::log1p(-(p - q) / p);
}

}  // namespace

WalkSpec WalkSpec::make(double q, std::int64_t start, std::int64_t upper) {
  require_biased_q("WalkSpec", q);
  if (start < 0 || upper < 1 || start > upper) {
    std::ostringstream os;
    os << "WalkSpec: need 0 <= start <= upper and upper >= 1, got start=" << start
       << " upper=" << upper;
    throw DomainError(os.str());
  }
  return WalkSpec(q, start, upper);
}

double lambda_power(double q, double n) {
  if (n == 0.0) return 1.0;
  return std::exp(n * log_lambda(q));
}

double one_minus_lambda_power(double q, double n) { return -std::expm1(n * log_lambda(q)); }

double ruin_probability(const WalkSpec& w) {
  const auto m = w.start();
  const auto M = w.upper();
  if (m == 0) return 1.0;
  if (m == M) return 0.0;
  // l^m (1 - l^(M-m)) / (1 - l^M)
  const double q = w.q();
  return lambda_power(q, static_cast<double>(m)) *
         one_minus_lambda_power(q, static_cast<double>(M - m)) /
         one_minus_lambda_power(q, static_cast<double>(M));
}

double expected_absorption_time(std::int64_t x_upper_gap, std::int64_t y_lower_gap, double q) {
  require_biased_q("expected_absorption_time", q);
  if (x_upper_gap < 1 || y_lower_gap < 1) {
    throw DomainError("expected_absorption_time: both gaps must be >= 1");
  }
  const double p = 1.0 - q;
  const double x = static_cast<double>(x_upper_gap);
  const double y = static_cast<double>(y_lower_gap);
  const double upper_prob = one_minus_lambda_power(q, y) / one_minus_lambda_power(q, x + y);
  return (x + y) / (p - q) * (upper_prob - y / (x + y));
}

double expected_left_steps_given_ruin(const WalkSpec& w) {
  const auto m_int = w.start();
  const auto M_int = w.upper();
  if (m_int < 1 || m_int >= M_int) {
    std::ostringstream os;
    os << "expected_left_steps_given_ruin: need 1 <= start < upper, got start=" << m_int
       << " upper=" << M_int;
    throw DomainError(os.str());
  }
  const double q = w.q();
  const double p = w.p();
  const double lam = w.lambda();
  const double m = static_cast<double>(m_int);
  const double M = static_cast<double>(M_int);
  // Numerator and denominator divided through by l^m.
  const double num = m - (2.0 * M - m) * lambda_power(q, M - m) +
                     (2.0 * M - m) * lambda_power(q, M) - m * lambda_power(q, 2.0 * M - m);
  const double den = 2.0 * p * (1.0 - lam) * one_minus_lambda_power(q, M - m) *
                     one_minus_lambda_power(q, M);
  return m / 2.0 + num / den;
}

void NegBinParams::validate() const {
  if (!(p > 0.0 && p < 1.0)) {
    std::ostringstream os;
    os << "NegBinParams: p must lie in (0, 1), got " << p;
    throw DomainError(os.str());
  }
  if (z < 1 || m < 1) throw DomainError("NegBinParams: z and m must be >= 1");
}

double log_negbin_pmf(const NegBinParams& nb, std::int64_t j) {
  nb.validate();
  if (j < 0) throw DomainError("negbin_pmf: j must be >= 0");
  const double zd = static_cast<double>(nb.z);
  const double jd = static_cast<double>(j);
  const double log_q = j == 0 ? 0.0 : jd * std::log1p(-nb.p);
  return zd * std::log(nb.p) + log_q +
         specfun::log_binomial(static_cast<std::uint64_t>(nb.z + j - 1),
                               static_cast<std::uint64_t>(j));
}

double negbin_pmf(const NegBinParams& nb, std::int64_t j) { return std::exp(log_negbin_pmf(nb, j)); }

NegBinPartialSums negbin_partial_sums(const NegBinParams& nb) {
  nb.validate();
  const double p = nb.p;
  const double q = nb.q();
  const double z = static_cast<double>(nb.z);
  const double m = static_cast<double>(nb.m);

  NegBinPartialSums out{};
  const auto ip = specfun::reg_inc_beta_pair(p, q, z, m);
  // p^(z-1) q^m / B(z, m)
  const double density = std::exp(specfun::log_beta_front(p, q, z, m) - std::log(p));
  out.s0 = ip.value;
  out.s1 = q * z / p * ip.value - density;

  if (nb.m == nb.z) {
    const auto iq = specfun::reg_inc_beta_pair(q, p, z, z);
    // q^(z-1) p^z / B(z, z)
    const double mirrored = std::exp(specfun::log_beta_front(q, p, z, z) - std::log(q));
    out.t0 = iq.value;
    out.t1 = p * z / q * iq.value - mirrored;
  }
  return out;
}

}  // namespace nakamoto::walks
