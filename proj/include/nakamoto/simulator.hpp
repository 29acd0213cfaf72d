#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <optional>
#include <vector>

#include "nakamoto/model.hpp"

namespace nakamoto::simulator {

// Any source of uniform variates on (0, 1].
template <class S>
concept UniformSource = requires(S& s) {
  { s.uniform() } -> std::convertible_to<double>;
};

// xoshiro256** seeded through splitmix64. One instance per attack cycle.
class CycleStream {
 public:
  // Independent stream for cycle `index` under root `seed`.
  CycleStream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next();
  // 53-bit uniform on (0, 1].
  double uniform() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

 private:
  std::uint64_t s_[4];
};

struct CycleOutcome {
  bool success = false;
  double revenue_b = 0.0;
  double duration_tau0 = 0.0;
  double premine_time_tau0 = 0.0;
  double phase2_time_tau0 = 0.0;
  double phase3_time_tau0 = 0.0;
  std::int64_t phase2_attacker_blocks = 0;
  std::int64_t phase3_start_lag = 0;  // z - j, or 0 when phase 3 is skipped
  std::int64_t phase3_steps = 0;
  std::int64_t phase3_left_steps = 0;
};

namespace detail {
inline double exponential(double u, double rate) { return -std::log(u) / rate; }
}  // namespace detail

// One attack cycle. Time is measured in units of tau0, so block events occur
// at total rate 1, attacker blocks at rate q and honest blocks at rate p.
template <UniformSource S>
CycleOutcome run_cycle(const model::AttackParams& params, S& stream) {
  const double q = params.q;
  CycleOutcome out;

  // Premine: the wait for the attacker's first block. Honest blocks found
  // meanwhile only move the parent; by memorylessness the wait stays Exp(q).
  out.premine_time_tau0 = detail::exponential(stream.uniform(), q);

  // Confirmations: block events until honest miners have found z blocks;
  // each event belongs to the attacker with probability q.
  std::int64_t honest = 0;
  std::int64_t attacker = 0;
  while (honest < params.z) {
    out.phase2_time_tau0 += detail::exponential(stream.uniform(), 1.0);
    if (stream.uniform() <= q) {
      ++attacker;
    } else {
      ++honest;
    }
  }
  out.phase2_attacker_blocks = attacker;

  if (attacker >= params.z) {
    out.success = true;
  } else {
    // Catch-up race on lag + 1: absorbed at 0 (fork longer, success) or at
    // A + 1 (give up).
    std::int64_t lag = params.z - attacker;
    out.phase3_start_lag = lag;
    const std::int64_t give_up = params.A + 1;
    while (lag > 0 && lag < give_up) {
      out.phase3_time_tau0 += detail::exponential(stream.uniform(), 1.0);
      ++out.phase3_steps;
      if (stream.uniform() <= q) {
        --lag;
        ++out.phase3_left_steps;
      } else {
        ++lag;
      }
    }
    out.success = lag == 0;
  }

  out.duration_tau0 = out.premine_time_tau0 + out.phase2_time_tau0 + out.phase3_time_tau0;
  if (out.success) {
    out.revenue_b = 1.0 + static_cast<double>(out.phase2_attacker_blocks) +
                    static_cast<double>(out.phase3_left_steps) + params.v;
  }
  return out;
}

struct MonteCarloEstimate {
  double mean = 0.0;
  std::optional<double> std_error;  // absent when n_cycles < 2
  std::uint64_t n_cycles = 0;
};

struct SimConfig {
  model::AttackParams params;
  std::uint64_t n_cycles = 1;
  std::uint64_t seed = 0;
  // Worker threads; 0 picks the hardware concurrency. Results do not depend
  // on this value.
  unsigned threads = 0;
};

struct BatchResult {
  MonteCarloEstimate p_success;
  MonteCarloEstimate revenue_b;
  MonteCarloEstimate duration_tau0;
  double gamma_estimate = 0.0;
};

BatchResult run_batch(const SimConfig& config);

// Outcomes of cycles [first, first + count) under `seed`, in order.
std::vector<CycleOutcome> simulate_cycles(const model::AttackParams& params, std::uint64_t seed,
                                          std::uint64_t first, std::uint64_t count);

}  // namespace nakamoto::simulator
