#include "nakamoto/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "nakamoto/errors.hpp"

namespace nakamoto::simulator {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
// Cycles per aggregation chunk. Chunk boundaries are fixed so the merge order,
// and therefore every rounding, is independent of the thread count.
constexpr std::uint64_t kChunk = 4096;

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += kGolden);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

// Running mean and sum of squared deviations (Welford), mergeable (Chan).
struct Moments {
  double n = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    n += 1.0;
    const double delta = x - mean;
    mean += delta / n;
    m2 += delta * (x - mean);
  }

  void merge(const Moments& o) {
    if (o.n == 0.0) return;
    if (n == 0.0) {
      *this = o;
      return;
    }
    const double total = n + o.n;
    const double delta = o.mean - mean;
    mean += delta * (o.n / total);
    m2 += o.m2 + delta * delta * (n * o.n / total);
    n = total;
  }

  MonteCarloEstimate estimate() const {
    MonteCarloEstimate e;
    e.mean = mean;
    e.n_cycles = static_cast<std::uint64_t>(n);
    if (n >= 2.0) e.std_error = std::sqrt(m2 / (n - 1.0) / n);
    return e;
  }
};

struct ChunkStats {
  Moments success;
  Moments revenue;
  Moments duration;
};

ChunkStats run_chunk(const model::AttackParams& params, std::uint64_t seed, std::uint64_t first,
                     std::uint64_t count) {
  ChunkStats s;
  for (std::uint64_t i = first; i < first + count; ++i) {
    CycleStream stream(seed, i);
    const auto c = run_cycle(params, stream);
    s.success.add(c.success ? 1.0 : 0.0);
    s.revenue.add(c.revenue_b);
    s.duration.add(c.duration_tau0);
  }
  return s;
}

}  // namespace

CycleStream::CycleStream(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t x = seed ^ splitmix64(index);
  for (auto& word : s_) word = splitmix64(x);
}

std::uint64_t CycleStream::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

std::vector<CycleOutcome> simulate_cycles(const model::AttackParams& params, std::uint64_t seed,
                                          std::uint64_t first, std::uint64_t count) {
  params.validate();
  std::vector<CycleOutcome> out;
  out.reserve(count);
  for (std::uint64_t i = first; i < first + count; ++i) {
    CycleStream stream(seed, i);
    out.push_back(run_cycle(params, stream));
  }
  return out;
}

BatchResult run_batch(const SimConfig& config) {
  config.params.validate();
  if (config.n_cycles < 1) throw DomainError("n_cycles must be >= 1");
  // Counts are carried in doubles by the accumulators.
  if (config.n_cycles > (std::uint64_t{1} << 53)) {
    throw IntegrityError("n_cycles exceeds the exactly representable accumulator range");
  }

  const std::uint64_t n_chunks = (config.n_cycles + kChunk - 1) / kChunk;
  std::vector<ChunkStats> chunks(n_chunks);
  unsigned workers = config.threads != 0 ? config.threads : std::thread::hardware_concurrency();
  workers = static_cast<unsigned>(std::clamp<std::uint64_t>(workers, 1, n_chunks));

  std::atomic<std::uint64_t> next{0};
  auto work = [&] {
    for (std::uint64_t c = next++; c < n_chunks; c = next++) {
      const std::uint64_t first = c * kChunk;
      const std::uint64_t count = std::min(kChunk, config.n_cycles - first);
      chunks[c] = run_chunk(config.params, config.seed, first, count);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
  }

  ChunkStats total;
  for (const auto& c : chunks) {
    total.success.merge(c.success);
    total.revenue.merge(c.revenue);
    total.duration.merge(c.duration);
  }

  BatchResult r;
  r.p_success = total.success.estimate();
  r.revenue_b = total.revenue.estimate();
  r.duration_tau0 = total.duration.estimate();
  r.gamma_estimate = r.revenue_b.mean / r.duration_tau0.mean;
  return r;
}

}  // namespace nakamoto::simulator
