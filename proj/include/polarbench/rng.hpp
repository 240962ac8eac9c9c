#pragma once
// Keyed SplitMix64 stream. Standard-library distributions are implementation
// defined, so every draw that feeds generated bytes goes through the helpers
// below to stay identical across toolchains.

#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

namespace polarbench {

class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [lo, hi], unbiased.
  int64_t uniform_int(int64_t lo, int64_t hi) {
    if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
    const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<int64_t>(next_u64());
    const uint64_t limit = UINT64_MAX - (UINT64_MAX % span);
    uint64_t x;
    do { x = next_u64(); } while (x >= limit);
    return lo + static_cast<int64_t>(x % span);
  }

  int uniform_int(int lo, int hi) { return static_cast<int>(uniform_int(int64_t{lo}, int64_t{hi})); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform01() < p; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      const auto j = static_cast<size_t>(uniform_int(int64_t{0}, static_cast<int64_t>(i - 1)));
      std::swap(v[i - 1], v[j]);
    }
  }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    if (v.empty()) throw std::invalid_argument("pick from empty vector");
    return v[static_cast<size_t>(uniform_int(int64_t{0}, static_cast<int64_t>(v.size() - 1)))];
  }

 private:
  uint64_t state_;
};

inline uint64_t fnv1a(std::string_view s) {
  uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

inline uint64_t mix64(uint64_t x) {
  x ^= x >> 33;
  x *= 0xFF51AFD7ED558CCDULL;
  x ^= x >> 33;
  x *= 0xC4CEB9FE1A85EC53ULL;
  x ^= x >> 33;
  return x;
}

/// Stream key for (label, seed, attempt). Distinct labels give independent
/// streams for the same seed.
inline uint64_t derive_seed(std::string_view label, uint64_t seed, uint64_t attempt = 0) {
  return mix64(fnv1a(label) ^ mix64(seed + 0x632BE59BD9B4E019ULL) ^ mix64(attempt * 0x9E3779B97F4A7C15ULL + 1));
}

}  // namespace polarbench
