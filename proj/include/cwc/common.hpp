#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace cwc {

inline constexpr const char* kLibraryVersion = "0.1.0";

// Default cap on enumerated outcome spaces (|alphabet|^n).
inline constexpr std::uint64_t kDefaultOutcomeBudget = std::uint64_t{1} << 26;

/// Thrown when an enumeration would exceed the configured outcome budget.
class resource_error : public std::runtime_error {
 public:
  resource_error(std::uint64_t required, std::uint64_t budget)
      : std::runtime_error("outcome space of size " + std::to_string(required) +
                           " exceeds budget " + std::to_string(budget)),
        required_size(required),
        budget_size(budget) {}

  std::uint64_t required_size;
  std::uint64_t budget_size;
};

// |alphabet|^n with overflow saturation, for budget checks.
inline std::uint64_t pow_u64(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > UINT64_MAX / base) return UINT64_MAX;
    r *= base;
  }
  return r;
}

inline void check_budget(std::uint64_t alphabet, unsigned n,
                         std::uint64_t budget = kDefaultOutcomeBudget) {
  const std::uint64_t need = pow_u64(alphabet, n);
  if (need > budget) throw resource_error(need, budget);
}

}  // namespace cwc
