#ifndef DLC_RATIONAL_HPP
#define DLC_RATIONAL_HPP

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace dlc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(const BigInt& num, const BigInt& den) { return Rational(num, den); }

inline Rational dyadic(std::uint64_t count, unsigned n) {
  return Rational(BigInt(count), BigInt(1) << n);
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string to_string(const Rational& r) { return r.str(); }

inline BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigInt out = 1;
  for (unsigned i = 1; i <= k; ++i) {
    out *= n - k + i;
    out /= i;
  }
  return out;
}

/// |R(n, k)| = C(n, k) * 2^(n-k); zero for k < 0 or k > n.
inline BigInt restriction_count(unsigned n, long long k) {
  if (k < 0 || k > static_cast<long long>(n)) return 0;
  return binomial(n, static_cast<unsigned>(k)) << (n - static_cast<unsigned>(k));
}

}  // namespace dlc

#endif  // DLC_RATIONAL_HPP
