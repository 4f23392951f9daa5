#ifndef DLC_RANDOM_HPP
#define DLC_RANDOM_HPP

#include <cstdint>
#include <limits>
#include <stdexcept>

namespace dlc {

/// Seed used whenever the caller does not supply one.
inline constexpr std::uint64_t kDefaultSeed = 20190917;

namespace detail {

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace detail

/// Counter-based generator keyed by (seed, stream).
///
/// Draw k of a source is a pure function of (seed, stream, k), so results do
/// not depend on the platform or on how work is partitioned across threads.
/// `split` derives an independent child stream; parallel code hands one child
/// to each fixed-size chunk of work.
class RandomSource {
 public:
  using result_type = std::uint64_t;

  explicit RandomSource(std::uint64_t seed = kDefaultSeed, std::uint64_t stream = 0) noexcept
      : seed_(seed),
        stream_(stream),
        key_(detail::mix64(seed ^ detail::mix64(stream + 0x632BE59BD9B4E019ULL))) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }
  std::uint64_t position() const noexcept { return counter_; }

  result_type operator()() noexcept { return next(); }

  result_type next() noexcept {
    ++counter_;
    return detail::mix64(key_ + 0x9E3779B97F4A7C15ULL * counter_);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("RandomSource::below: bound must be positive");
    // Lemire's multiply-shift with rejection keeps the draw unbiased.
    unsigned __int128 product = static_cast<unsigned __int128>(next()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        product = static_cast<unsigned __int128>(next()) * bound;
        low = static_cast<std::uint64_t>(product);
      }
    }
    return static_cast<std::uint64_t>(product >> 64);
  }

  /// Uniform integer in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) {
    if (hi < lo) throw std::invalid_argument("RandomSource::between: empty range");
    if (lo == 0 && hi == max()) return next();
    return lo + below(hi - lo + 1);
  }

  bool bernoulli(double p) noexcept { return uniform() < p; }

  /// Child source with its own stream; the parent is not advanced.
  RandomSource split(std::uint64_t child) const noexcept {
    return RandomSource(detail::mix64(key_ ^ 0xD1B54A32D192ED03ULL), child);
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace dlc

#endif  // DLC_RANDOM_HPP
