#pragma once

#include <cstdint>
#include <limits>

namespace bohrlab {

/// Largest x in [lo, hi] with g(x) <= target, for non-decreasing g, located
/// by bisection to absolute tolerance tol. Returns hi when g(hi) <= target and
/// lo when g(lo) > target; otherwise the returned point is always feasible.
template <class F>
double last_feasible(F&& g, double target, double lo, double hi, double tol) {
  if (g(hi) <= target) return hi;
  if (g(lo) > target) return lo;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (g(mid) <= target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

/// SplitMix64 finalizer; used to decorrelate user seeds before seeding engines.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return splitmix64(base ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
  return derive_seed(derive_seed(base, a), b);
}

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit engine draw.
/// Unlike std::uniform_real_distribution this is identical on every platform.
template <class Engine>
double uniform01(Engine& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

}  // namespace bohrlab
