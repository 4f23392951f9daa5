#ifndef DLC_LIMITS_HPP
#define DLC_LIMITS_HPP

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace dlc {

/// Hard cap on variables; assignments are packed into one 64-bit word.
inline constexpr unsigned kMaxVars = 64;

class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Size limits for exhaustive computations.
struct EnumerationLimits {
  unsigned assignment_vars = 24;   ///< 2^n sweeps over assignments
  unsigned restriction_vars = 13;  ///< 3^n sweeps over restrictions

  /// Defaults overridden by DLC_ASSIGNMENT_LIMIT / DLC_RESTRICTION_LIMIT.
  static EnumerationLimits from_env() {
    EnumerationLimits limits;
    auto read = [](const char* name, unsigned& slot) {
      if (const char* raw = std::getenv(name); raw != nullptr && *raw != '\0') {
        char* end = nullptr;
        const unsigned long value = std::strtoul(raw, &end, 10);
        if (end == raw || *end != '\0' || value == 0 || value > 40) {
          throw std::invalid_argument(std::string(name) + ": expected an integer in [1, 40]");
        }
        slot = static_cast<unsigned>(value);
      }
    };
    read("DLC_ASSIGNMENT_LIMIT", limits.assignment_vars);
    read("DLC_RESTRICTION_LIMIT", limits.restriction_vars);
    return limits;
  }

  void require_assignments(unsigned n, const char* what) const {
    if (n > assignment_vars) {
      throw LimitError(std::string(what) + ": " + std::to_string(n) +
                       " variables exceeds the exhaustive assignment limit of " +
                       std::to_string(assignment_vars));
    }
  }

  void require_restrictions(unsigned n, const char* what) const {
    if (n > restriction_vars) {
      throw LimitError(std::string(what) + ": " + std::to_string(n) +
                       " variables exceeds the exhaustive restriction limit of " +
                       std::to_string(restriction_vars));
    }
  }
};

}  // namespace dlc

#endif  // DLC_LIMITS_HPP
