#pragma once

#include <cstdint>

namespace cwc {

// Counter-based generator: every output is a pure function of
// (seed, key components, counter), so draws are reproducible and
// order-independent under any parallel schedule.

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace detail

struct CounterRng {
  std::uint64_t seed;

  std::uint64_t bits(std::uint64_t k0, std::uint64_t k1, std::uint64_t k2,
                     std::uint64_t counter) const {
    std::uint64_t h = detail::splitmix64(seed);
    h = detail::splitmix64(h ^ detail::splitmix64(k0 + 0x9e3779b97f4a7c15ULL));
    h = detail::splitmix64(h ^ detail::splitmix64(k1 + 0xd1b54a32d192ed03ULL));
    h = detail::splitmix64(h ^ detail::splitmix64(k2 + 0x8cb92ba72f3d8dd7ULL));
    return detail::splitmix64(h ^ counter);
  }

  /// Uniform double in [0,1).
  double uniform(std::uint64_t k0, std::uint64_t k1, std::uint64_t k2,
                 std::uint64_t counter = 0) const {
    return static_cast<double>(bits(k0, k1, k2, counter) >> 11) * 0x1.0p-53;
  }
};

}  // namespace cwc
