#ifndef SFG_RNG_HPP
#define SFG_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace sfg {

using Rng = std::mt19937_64;

/// Uniform integer in [0, n). Rejection sampling so the result depends only
/// on the raw engine stream, not on library distribution internals.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  if (n == 0) return 0;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % n;
}

/// In-place Fisher-Yates shuffle with reproducible draws.
template <typename T>
void shuffle_vec(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[uniform_below(rng, i)]);
  }
}

inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace sfg

#endif  // SFG_RNG_HPP
