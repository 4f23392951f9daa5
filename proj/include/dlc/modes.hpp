#ifndef DLC_MODES_HPP
#define DLC_MODES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <variant>
#include <vector>

#include "dlc/limits.hpp"
#include "dlc/parallel.hpp"
#include "dlc/random.hpp"

namespace dlc {

struct ExactMode {
  unsigned workers = 1;
  EnumerationLimits limits{};
};

struct MonteCarloMode {
  std::uint64_t samples = 100000;
  RandomSource rng{};
  unsigned workers = 1;
};

using EvalMode = std::variant<ExactMode, MonteCarloMode>;

inline constexpr double kZ95 = 1.959963984540054;

/// Normal-approximation 95% half-width for a Bernoulli mean.
inline double ci_half_width(double estimate, std::uint64_t samples) {
  if (samples == 0) return 0.0;
  const double var = std::max(0.0, estimate * (1.0 - estimate));
  return kZ95 * std::sqrt(var / static_cast<double>(samples));
}

struct Estimate {
  double value = 0.0;
  double half_width = 0.0;
  std::uint64_t samples = 0;

  static Estimate from_count(std::uint64_t hits, std::uint64_t samples) {
    const double p = samples == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(samples);
    return {p, ci_half_width(p, samples), samples};
  }
};

/// Samples per chunk. Chunk c always draws from `rng.split(c)`, so the
/// result is independent of the worker count.
inline constexpr std::uint64_t kSampleChunk = 8192;

/// Runs `sample(rng, acc)` `mode.samples` times, accumulating into per-chunk
/// copies of `zero` that are merged in chunk order with `merge(into, from)`.
template <class Acc, class Sample, class Merge>
Acc monte_carlo(const MonteCarloMode& mode, const Acc& zero, Sample&& sample, Merge&& merge) {
  if (mode.samples == 0) throw std::invalid_argument("Monte Carlo mode needs at least one sample");
  const std::uint64_t chunks = (mode.samples + kSampleChunk - 1) / kSampleChunk;
  std::vector<Acc> partial(chunks, zero);
  parallel_chunks(chunks, mode.workers, [&](std::uint64_t c) {
    RandomSource rng = mode.rng.split(c);
    const std::uint64_t begin = c * kSampleChunk;
    const std::uint64_t end = std::min(mode.samples, begin + kSampleChunk);
    for (std::uint64_t s = begin; s < end; ++s) sample(rng, partial[c]);
  });
  Acc total = zero;
  for (const Acc& p : partial) merge(total, p);
  return total;
}

/// Counting specialisation: `trial(rng)` returns true on success.
template <class Trial>
std::uint64_t monte_carlo_count(const MonteCarloMode& mode, Trial&& trial) {
  return monte_carlo(
      mode, std::uint64_t{0},
      [&](RandomSource& rng, std::uint64_t& acc) { acc += trial(rng) ? 1 : 0; },
      [](std::uint64_t& into, std::uint64_t from) { into += from; });
}

}  // namespace dlc

#endif  // DLC_MODES_HPP
