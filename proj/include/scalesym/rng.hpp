#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

#include "scalesym/band_vector.hpp"

namespace scalesym {

/// SplitMix64: counter-based generator (output k is a fixed mix of
/// seed + (k+1) * 0x9E3779B97F4A7C15), so a (seed, counter) pair fully
/// determines every draw. Gaussians via Box-Muller on the raw stream.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in (0, 1].
  double next_uniform() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = next_uniform();
    double u2 = next_uniform();
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  /// Per-check stream derivation: FNV-1a of the stream name folded into
  /// the seed, keeping independent checks reproducible in isolation.
  static std::uint64_t derive(std::uint64_t seed, std::string_view stream) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char ch : stream) {
      h ^= static_cast<unsigned char>(ch);
      h *= 0x100000001B3ULL;
    }
    return seed ^ h;
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

/// Independent standard-normal real and imaginary parts on the full
/// window, drawn in index order n = -N..N.
inline BandVector random_band_vector(SplitMix64& rng, int band) {
  BandVector x(band);
  for (int n = -band; n <= band; ++n) {
    double re = rng.next_gaussian();
    double im = rng.next_gaussian();
    x.set(n, Complex{re, im});
  }
  return x;
}

}  // namespace scalesym
