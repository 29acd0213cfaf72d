#include "nakamoto/decision.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "nakamoto/errors.hpp"
#include "nakamoto/model.hpp"
#include "nakamoto/specfun.hpp"

namespace nakamoto::decision {
namespace {

double min_value_for(const model::NakamotoModel& m, std::int64_t A) {
  const double prob = m.success_probability(A);
  if (!(prob > 0.0)) {
    std::ostringstream os;
    os << "success probability is zero at q=" << m.q() << " z=" << m.z() << " A=" << A
       << "; no double-spend value makes the attack profitable";
    throw UnsatisfiableError(os.str());
  }
  // Revenue is affine in v with slope P_A(z): solve E[R](v) = q E[T].
  const double shortfall = m.q() * m.expected_duration(A) - m.expected_revenue(A, 0.0);
  return shortfall > 0.0 ? shortfall / prob : 0.0;
}

std::int64_t default_cap(std::int64_t z) { return 10 * z + 100; }

}  // namespace

double min_profitable_value_exact(double q, std::int64_t z, std::int64_t A) {
  model::AttackParams{q, z, A, 0.0}.validate();
  return min_value_for(model::NakamotoModel(q, z), A);
}

MinValueOverThreshold min_profitable_value_over_threshold(double q, std::int64_t z,
                                                          std::int64_t A_max) {
  model::AttackParams{q, z, z, 0.0}.validate();
  if (A_max < z) throw DomainError("A_max must be >= z");
  const model::NakamotoModel m(q, z);
  MinValueOverThreshold best{std::numeric_limits<double>::infinity(), z};
  for (std::int64_t A = z; A <= A_max; ++A) {
    const double v = min_value_for(m, A);
    if (v < best.value) best = {v, A};
  }
  return best;
}

double min_profitable_value_asymptotic(double q, std::int64_t z) {
  model::AttackParams{q, z, z, 0.0}.validate();
  const auto zu = static_cast<std::uint64_t>(z);
  if (z <= 30) {
    return std::pow(q, -static_cast<double>(z)) / (2.0 * specfun::binomial(2 * zu - 1, zu));
  }
  return std::exp(-static_cast<double>(z) * std::log(q) - std::log(2.0) -
                  specfun::log_binomial(2 * zu - 1, zu));
}

OptimalThreshold optimal_threshold(const AttackerQuery& query) {
  const std::int64_t cap = query.A_max != 0 ? query.A_max : default_cap(query.z);
  model::AttackParams{query.q, query.z, query.z, query.v}.validate();
  if (cap < query.z) throw DomainError("A_max must be >= z");

  const model::NakamotoModel m(query.q, query.z);
  OptimalThreshold best{query.z, m.revenue_ratio(query.z, query.v), cap};
  auto scan = [&](std::int64_t from, std::int64_t to) {
    for (std::int64_t A = from; A <= to; ++A) {
      const double g = m.revenue_ratio(A, query.v);
      if (g > best.gamma_at_A0) best = {A, g, to};
    }
    best.A_max_searched = to;
  };
  scan(query.z + 1, cap);
  if (best.A0 == cap) {
    scan(cap + 1, 2 * cap);
    if (best.A0 == 2 * cap) {
      std::ostringstream os;
      os << "revenue ratio still increasing at A=" << 2 * cap << " (q=" << query.q
         << " z=" << query.z << " v=" << query.v << ")";
      throw SearchBoundError(os.str());
    }
  }
  return best;
}

SafeConfirmations min_safe_confirmations(const MerchantQuery& query) {
  if (!(query.q > 0.0 && query.q < 0.5)) {
    std::ostringstream os;
    os << "q must lie in (0, 1/2), got " << query.q;
    throw DomainError(os.str());
  }
  if (!(query.v >= 0.0) || !std::isfinite(query.v)) throw DomainError("v must be >= 0");
  if (query.z_max < 1) throw DomainError("z_max must be >= 1");

  const double honest = model::honest_revenue_ratio(query.q);
  for (std::int64_t z = 1; z <= query.z_max; ++z) {
    double best;
    try {
      best = optimal_threshold({query.q, z, query.v, 0}).gamma_at_A0;
    } catch (const SearchBoundError&) {
      // The attacker's best threshold is not bracketed, so this z cannot be
      // certified safe.
      continue;
    }
    if (best <= honest) return {z, true, best};
  }
  return {query.z_max + 1, false, std::numeric_limits<double>::quiet_NaN()};
}

}  // namespace nakamoto::decision
