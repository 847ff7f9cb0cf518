#ifndef TARSKI_RANDOM_HPP
#define TARSKI_RANDOM_HPP

#include <cstdint>
#include <random>
#include <stdexcept>

namespace tarski {

/// Seedable generator with platform-independent output. The standard
/// distributions are implementation-defined, so bounded draws use rejection
/// sampling over the raw 64-bit engine instead.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw std::invalid_argument("uniform: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
    if (span == UINT64_MAX) return static_cast<std::int64_t>(next());
    const std::uint64_t range = span + 1;
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % range);
    std::uint64_t r;
    do {
      r = next();
    } while (r >= limit);
    return lo + static_cast<std::int64_t>(r % range);
  }

  bool coin() { return (next() >> 63) != 0; }

  /// Independent child stream, for handing one generator per trial.
  Rng split() { return Rng(next() ^ 0x9e3779b97f4a7c15ULL); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tarski

#endif  // TARSKI_RANDOM_HPP
