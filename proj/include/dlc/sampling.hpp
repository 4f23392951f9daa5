#ifndef DLC_SAMPLING_HPP
#define DLC_SAMPLING_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

#include "dlc/decision_list.hpp"
#include "dlc/random.hpp"
#include "dlc/restriction.hpp"

namespace dlc {

/// U(n, alpha): each cell independently star w.p. alpha, else 0/1 evenly.
struct UniformStars {
  double alpha;
};

/// R(n, k): uniform over restrictions with exactly k stars.
struct ExactStars {
  unsigned k;
};

using RestrictionModel = std::variant<UniformStars, ExactStars>;

inline void validate_model(const RestrictionModel& model, unsigned n) {
  if (const auto* u = std::get_if<UniformStars>(&model)) {
    if (!(u->alpha > 0.0 && u->alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  } else if (std::get<ExactStars>(model).k > n) {
    throw std::invalid_argument("star count k = " + std::to_string(std::get<ExactStars>(model).k) +
                                " exceeds n = " + std::to_string(n));
  }
}

inline Assignment sample_assignment(unsigned n, RandomSource& rng) {
  return Assignment(n, rng.next() & low_mask(n));
}

inline Restriction sample_restriction(unsigned n, const RestrictionModel& model, RandomSource& rng) {
  validate_model(model, n);
  if (const auto* u = std::get_if<UniformStars>(&model)) {
    const double half_fixed = (1.0 - u->alpha) / 2.0;
    std::uint64_t fixed = 0;
    std::uint64_t values = 0;
    for (unsigned j = 0; j < n; ++j) {
      const double draw = rng.uniform();
      if (draw < u->alpha) continue;
      fixed |= std::uint64_t{1} << j;
      if (draw >= u->alpha + half_fixed) values |= std::uint64_t{1} << j;
    }
    return Restriction(n, fixed, values);
  }
  // Partial Fisher-Yates picks the k star positions.
  const unsigned k = std::get<ExactStars>(model).k;
  std::array<std::uint8_t, kMaxVars> order{};
  for (unsigned j = 0; j < n; ++j) order[j] = static_cast<std::uint8_t>(j);
  std::uint64_t stars = 0;
  for (unsigned j = 0; j < k; ++j) {
    const auto pick = j + static_cast<unsigned>(rng.below(n - j));
    std::swap(order[j], order[pick]);
    stars |= std::uint64_t{1} << order[j];
  }
  const std::uint64_t fixed = low_mask(n) & ~stars;
  return Restriction(n, fixed, rng.next() & fixed);
}

/// y ~ N_beta(x): each bit kept w.p. (1+beta)/2, flipped otherwise.
inline std::uint64_t sample_noisy_bits(std::uint64_t x, unsigned n, double beta, RandomSource& rng) {
  const double flip = (1.0 - beta) / 2.0;
  std::uint64_t mask = 0;
  for (unsigned j = 0; j < n; ++j) {
    if (rng.uniform() < flip) mask |= std::uint64_t{1} << j;
  }
  return x ^ mask;
}

inline Assignment sample_noisy(const Assignment& x, double beta, RandomSource& rng) {
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("beta must lie in (0, 1)");
  return Assignment(x.size(), sample_noisy_bits(x.bits(), x.size(), beta, rng));
}

}  // namespace dlc

#endif  // DLC_SAMPLING_HPP
