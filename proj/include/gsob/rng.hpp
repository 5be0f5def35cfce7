#ifndef GSOB_RNG_HPP
#define GSOB_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

namespace gsob {

/// Deterministic RNG wrapper. All value mappings are hand-rolled on top of the
/// standard-specified mt19937_64 stream, so identical seeds give identical
/// corpora and reports on any platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t u64() { return eng_(); }

  /// Uniform integer in [lo, hi], inclusive.
  int uniform_int(int lo, int hi) {
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(u64() % span);
  }

  /// Uniform real in [0, 1).
  double uniform01() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller (avoids implementation-defined
  /// std::normal_distribution sequences).
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01(), u2 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

/// FNV-1a over bytes; used both for per-case seed splitting and for the
/// canonical report hash.
inline std::uint64_t fnv1a64(const void* data, std::size_t len,
                             std::uint64_t h = 1469598103934665603ULL) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::uint64_t fnv1a64(const std::string& s, std::uint64_t h = 1469598103934665603ULL) {
  return fnv1a64(s.data(), s.size(), h);
}

/// Fixed splitting rule for per-task seeds derived from the master seed.
inline std::uint64_t split_seed(std::uint64_t master, const std::string& stream) {
  std::uint64_t h = fnv1a64(&master, sizeof(master));
  return fnv1a64(stream, h);
}

}  // namespace gsob

#endif  // GSOB_RNG_HPP
