#pragma once

#include <cstdint>

namespace covrep {

/// Counter-based splittable generator (splitmix64 core). Pure uint64
/// arithmetic, so streams are identical across platforms and runs for a
/// fixed seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [lo, hi], inclusive.
  long uniform_int(long lo, long hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(next() % span);
  }

 private:
  std::uint64_t state_;
};

/// Derives an independent per-trial seed from a master seed and an index.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  SplitMix64 g(master ^ (0x632be59bd9b4e019ULL + index * 0x9e3779b97f4a7c15ULL));
  g.next();
  return g.next();
}

}  // namespace covrep
