#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <random>

namespace rpst {

// SplitMix64 finaliser applied to a combination of two words. Used to
// derive independent seeds from (master seed, counter) pairs so that
// replication i always sees the same stream, whichever worker runs it.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t counter) noexcept;

// Seeded pseudo-random stream. Uniform and normal variates are produced from
// the raw 64-bit engine output by fixed formulas, so a seed reproduces the
// same doubles on every standard library.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed);

  static RandomStream derive(std::uint64_t master, std::uint64_t index);
  static RandomStream derive(std::uint64_t master, std::uint64_t outer,
                             std::uint64_t inner);

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() { return engine_(); }

  // Uniform on the open interval (0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal by Box-Muller; the second variate of each pair is cached.
  double normal();

  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

}  // namespace rpst
