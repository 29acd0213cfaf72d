#include "nakamoto/model.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "nakamoto/errors.hpp"
#include "nakamoto/specfun.hpp"
#include "nakamoto/tolerances.hpp"
#include "nakamoto/walks.hpp"

namespace nakamoto::model {
namespace {

[[noreturn]] void invalid(const std::string& msg) { throw DomainError(msg); }

void validate_q_z(double q, std::int64_t z) {
  if (!(q > 0.0 && q < 0.5)) {
    std::ostringstream os;
    os << "q must lie in (0, 1/2), got " << q;
    invalid(os.str());
  }
  if (z < 1) {
    std::ostringstream os;
    os << "z must be >= 1, got " << z;
    invalid(os.str());
  }
}

double relative_gap(double estimate, double exact) {
  if (exact == 0.0) return estimate == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::abs(estimate - exact) / std::abs(exact);
}

AsymptoticEstimate make_estimate(std::string name, double estimate, double exact) {
  return {std::move(name), estimate, exact, relative_gap(estimate, exact)};
}

}  // namespace

void AttackParams::validate() const {
  validate_q_z(q, z);
  if (A < z) {
    std::ostringstream os;
    os << "A must be >= z, got A=" << A << " z=" << z;
    invalid(os.str());
  }
  if (!(v >= 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << "v must be a finite value >= 0, got " << v;
    invalid(os.str());
  }
  if (!(b > 0.0) || !std::isfinite(b)) invalid("b must be > 0");
  if (!(tau0 > 0.0) || !std::isfinite(tau0)) invalid("tau0 must be > 0");
}

NakamotoModel::NakamotoModel(double q, std::int64_t z) : q_(q), z_(z) {
  validate_q_z(q, z);
  p_ = 1.0 - q;
  lambda_ = q / p_;
  one_minus_lambda_ = (p_ - q) / p_;
  const double zd = static_cast<double>(z);
  const double diff = p_ - q;
  // 4pq and (p - q)^2 are exact complements.
  const auto dup = specfun::reg_inc_beta_pair(4.0 * p_ * q, diff * diff, zd, 0.5);
  i4_ = dup.value;
  i4c_ = dup.complement;
  const auto sym = specfun::reg_inc_beta_pair(q, p_, zd, zd);
  iq_ = sym.value;
  ip_ = sym.complement;
  density_ = std::exp(specfun::log_beta_front(p_, q, zd, zd) - std::log(p_));
}

void NakamotoModel::check_threshold(std::int64_t A) const {
  if (A < z_) {
    std::ostringstream os;
    os << "A must be >= z, got A=" << A << " z=" << z_;
    invalid(os.str());
  }
}

double NakamotoModel::checked(const DualRoute& r, const char* what, std::int64_t A) const {
  const double eps = std::numeric_limits<double>::epsilon();
  const double allowed = kTolerances.dual_path * std::max(1.0, std::abs(r.closed_form)) +
                         64.0 * eps * r.expanded_scale;
  if (!(std::abs(r.closed_form - r.expanded) <= allowed)) {
    std::ostringstream os;
    os.precision(17);
    os << "dual-route disagreement in " << what << " at q=" << q_ << " z=" << z_ << " A=" << A
       << ": closed form " << r.closed_form << " vs expanded " << r.expanded;
    throw IntegrityError(os.str());
  }
  return r.closed_form;
}

DualRoute NakamotoModel::success_probability_routes(std::int64_t A) const {
  check_threshold(A);
  const double n = static_cast<double>(A + 1);
  const double l1 = walks::lambda_power(q_, n);
  const double d = walks::one_minus_lambda_power(q_, n);
  const double closed = (i4_ - l1) / d;
  // Mixture form: 1 - I_p(z,z) / (1 - l^(A+1)) + I_q(z,z) / (1 - l^(A+1)).
  const double expanded = 1.0 - ip_ / d + iq_ / d;
  return {closed, expanded, 1.0 + (ip_ + iq_) / d};
}

DualRoute NakamotoModel::expected_duration_routes(std::int64_t A) const {
  check_threshold(A);
  const double p = p_;
  const double q = q_;
  const double lam1 = one_minus_lambda_;
  const double zd = static_cast<double>(z_);
  const double a1 = static_cast<double>(A + 1);
  const double d = walks::one_minus_lambda_power(q, a1);
  const double bracket = d / lam1;

  const double closed = zd / (2.0 * p) * i4_ + a1 / (p * lam1 * lam1 * bracket) * i4c_ -
                        density_ / (p * lam1) + 1.0 / q;

  // 1/q + z/p + (A+1)/(p-q) (1/d - z/(A+1)) I_p - (A+1)/((p-q) d) I_q
  //   + (qz/p I_p - K) / (p - q)
  const double pq = p - q;
  const double t1 = zd / p;
  const double t2 = a1 / pq * (1.0 / d - zd / a1) * ip_;
  const double t3 = -a1 / (pq * d) * iq_;
  const double t4 = (q * zd / p * ip_ - density_) / pq;
  const double expanded = 1.0 / q + t1 + t2 + t3 + t4;
  const double scale = 1.0 / q + std::abs(t1) + std::abs(t2) + std::abs(t3) +
                       (q * zd / p * ip_ + density_) / pq;
  return {closed, expanded, scale};
}

DualRoute NakamotoModel::expected_revenue_routes(std::int64_t A, double v) const {
  check_threshold(A);
  const double p = p_;
  const double q = q_;
  const double lam = lambda_;
  const double lam1 = one_minus_lambda_;
  const double zd = static_cast<double>(z_);
  const double a1 = static_cast<double>(A + 1);
  const double l1 = walks::lambda_power(q, a1);
  const double l2 = walks::lambda_power(q, a1 + 1.0);
  const double d = walks::one_minus_lambda_power(q, a1);
  const double bracket = d / lam1;
  const double prob = (i4_ - l1) / d;

  const double closed = q * zd / (2.0 * p) * i4_ -
                        a1 * l1 / (p * lam1 * lam1 * lam1 * bracket * bracket) * i4c_ +
                        (2.0 - lam + l2) / (lam1 * lam1 * bracket) * density_ +
                        prob * (v + 1.0);

  // Expansion over the four truncated negative-binomial sums before the
  // complement and duplication identities are applied.
  const double prob_expanded = 1.0 - ip_ / d + iq_ / d;
  const double mirrored = density_ * p / q;  // q^(z-1) p^z / B(z, z)
  const double r0 = q * zd / p;
  const double r1 = prob_expanded * (v + 1.0);
  const double r2 = -l1 * (a1 - q * d * zd) / (p * lam1 * d * d) * ip_;
  const double r3 = (a1 * l1 + p * d * zd) / (p * lam1 * d * d) * iq_;
  const double r4 = -((p - q) + q * l1) / (p * lam1 * d) * (q * zd / p * ip_ - density_);
  const double r5 = -lam / (lam1 * d) * (p * zd / q * iq_ - mirrored);
  const double expanded = r0 + r1 + r2 + r3 + r4 + r5;
  const double scale = std::abs(r0) + (1.0 + (ip_ + iq_) / d) * (v + 1.0) + std::abs(r2) +
                       std::abs(r3) +
                       ((p - q) + q * l1) / (p * lam1 * d) * (q * zd / p * ip_ + density_) +
                       lam / (lam1 * d) * (p * zd / q * iq_ + mirrored);
  return {closed, expanded, scale};
}

double NakamotoModel::success_probability(std::int64_t A) const {
  return checked(success_probability_routes(A), "success probability", A);
}

double NakamotoModel::expected_duration(std::int64_t A) const {
  return checked(expected_duration_routes(A), "expected duration", A);
}

double NakamotoModel::expected_revenue(std::int64_t A, double v) const {
  return checked(expected_revenue_routes(A, v), "expected revenue", A);
}

double NakamotoModel::expected_revenue_inf(double v) const {
  return q_ * static_cast<double>(z_) / (2.0 * p_) * i4_ +
         (2.0 - lambda_) / one_minus_lambda_ * density_ + i4_ * (v + 1.0);
}

double NakamotoModel::revenue_ratio(std::int64_t A, double v) const {
  return expected_revenue(A, v) / expected_duration(A);
}

ClosedFormReport NakamotoModel::report(std::int64_t A, double v) const {
  ClosedFormReport r{};
  r.p_success = success_probability(A);
  r.e_revenue_b = expected_revenue(A, v);
  r.e_duration_tau0 = expected_duration(A);
  r.gamma_attack = r.e_revenue_b / r.e_duration_tau0;
  r.gamma_honest = honest_revenue_ratio(q_);
  r.profitable = r.gamma_attack > r.gamma_honest;
  return r;
}

double success_probability(const AttackParams& params) {
  params.validate();
  return NakamotoModel(params.q, params.z).success_probability(params.A);
}

double success_probability_inf(double q, std::int64_t z) {
  return NakamotoModel(q, z).success_probability_inf();
}

double expected_duration(const AttackParams& params) {
  params.validate();
  return NakamotoModel(params.q, params.z).expected_duration(params.A);
}

double expected_revenue(const AttackParams& params) {
  params.validate();
  return NakamotoModel(params.q, params.z).expected_revenue(params.A, params.v);
}

double revenue_ratio(const AttackParams& params) {
  params.validate();
  return NakamotoModel(params.q, params.z).revenue_ratio(params.A, params.v);
}

ClosedFormReport evaluate(const AttackParams& params) {
  params.validate();
  return NakamotoModel(params.q, params.z).report(params.A, params.v);
}

AsymptoticReport asymptotics(const AttackParams& params) {
  params.validate();
  const NakamotoModel model(params.q, params.z);
  const double q = params.q;
  const double p = model.p();
  const double zd = static_cast<double>(params.z);
  const double s = 4.0 * p * q;
  const auto zu = static_cast<std::uint64_t>(params.z);
  const double central = 2.0 * specfun::binomial(2 * zu - 1, zu);
  const double inv_beta = 1.0 / specfun::beta(zd, zd);
  const double coeff = central * (params.v + 1.0) + 2.0 * inv_beta;

  const double p_inf = model.success_probability_inf();
  const auto exact = model.report(params.A, params.v);

  AsymptoticReport r;
  r.p_inf_large_z = make_estimate(
      "p_inf_large_z", std::pow(s, zd) / std::sqrt(std::numbers::pi * (1.0 - s) * zd), p_inf);
  r.p_inf_small_q = make_estimate("p_inf_small_q", central * std::pow(q, zd), p_inf);
  r.revenue_small_q =
      make_estimate("revenue_small_q", coeff * std::pow(q, zd), exact.e_revenue_b);
  r.duration_small_q = make_estimate("duration_small_q", 1.0 / q, exact.e_duration_tau0);
  r.gamma_small_q = make_estimate("gamma_small_q", coeff * std::pow(q, zd + 1.0), exact.gamma_attack);
  r.duration_large_A = make_estimate(
      "duration_large_A",
      model.success_probability_inf_complement() / (p - q) * static_cast<double>(params.A),
      exact.e_duration_tau0);
  r.revenue_large_A =
      make_estimate("revenue_large_A", model.expected_revenue_inf(params.v), exact.e_revenue_b);
  return r;
}

}  // namespace nakamoto::model
