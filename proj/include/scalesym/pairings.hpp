#pragma once

#include "scalesym/band_vector.hpp"

namespace scalesym {

/// Bilinear pairing <x, conj(y)>_0 = sum x_n y_n (no conjugation).
/// Pairs level s with level -s; |result| <= ||x||_s ||y||_{-s}.
inline Complex complex_pairing(const BandVector& x, const BandVector& y) {
  int band = x.band() > y.band() ? x.band() : y.band();
  Complex acc{0.0, 0.0};
  for (int n = -band; n <= band; ++n) acc += x.c(n) * y.c(n);
  return acc;
}

/// Real pairing Re sum x_n conj(y_n); the level-0 real inner product.
inline double real_pairing(const BandVector& x, const BandVector& y) {
  int band = x.band() > y.band() ? x.band() : y.band();
  double acc = 0.0;
  for (int n = -band; n <= band; ++n) {
    Complex a = x.c(n), b = y.c(n);
    acc += a.real() * b.real() + a.imag() * b.imag();
  }
  return acc;
}

/// Standard symplectic form omega(x, y) = -Im sum x_n conj(y_n).
/// Satisfies omega(x, y) = real_pairing(times_i(x), y) bit-exactly.
inline double omega(const BandVector& x, const BandVector& y) {
  int band = x.band() > y.band() ? x.band() : y.band();
  double acc = 0.0;
  for (int n = -band; n <= band; ++n) {
    Complex a = x.c(n), b = y.c(n);
    acc += -(a.imag() * b.real()) + a.real() * b.imag();
  }
  return acc;
}

}  // namespace scalesym
