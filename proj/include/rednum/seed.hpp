#ifndef REDNUM_SEED_HPP
#define REDNUM_SEED_HPP

#include <cstdint>
#include <initializer_list>
#include <span>

namespace rednum {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Child seed for a labelled sub-task; every random choice in the library
/// is drawn from a seed derived this way from one user seed.
inline std::uint64_t derive_seed(std::uint64_t base, std::span<const std::uint64_t> path) {
  std::uint64_t s = splitmix64(base);
  for (std::uint64_t p : path) s = splitmix64(s ^ splitmix64(p + 0x632be59bd9b4e019ull));
  return s;
}

inline std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> path) {
  return derive_seed(base, std::span<const std::uint64_t>(path.begin(), path.size()));
}

}  // namespace rednum

#endif  // REDNUM_SEED_HPP
