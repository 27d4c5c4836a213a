#include "rpst/random.hpp"

#include <cmath>
#include <numbers>

namespace rpst {

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t counter) noexcept {
  return splitmix64(splitmix64(master) ^ splitmix64(counter + 0x632be59bd9b4e019ULL));
}

RandomStream::RandomStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

RandomStream RandomStream::derive(std::uint64_t master, std::uint64_t index) {
  return RandomStream(mix_seed(master, index));
}

RandomStream RandomStream::derive(std::uint64_t master, std::uint64_t outer,
                                  std::uint64_t inner) {
  return RandomStream(mix_seed(mix_seed(master, outer), inner));
}

double RandomStream::uniform() {
  constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  return (static_cast<double>(engine_() >> 11) + 0.5) * kScale;
}

double RandomStream::normal() {
  if (spare_normal_) {
    const double z = *spare_normal_;
    spare_normal_.reset();
    return z;
  }
  const double radius = std::sqrt(-2.0 * std::log(uniform()));
  const double angle = 2.0 * std::numbers::pi * uniform();
  spare_normal_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

}  // namespace rpst
