#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace scalesym {

using Complex = std::complex<double>;

/// Finitely supported Fourier coefficient sequence on the window
/// {-N, ..., N}. Finite support puts it in every level of the scale.
class BandVector {
 public:
  BandVector() : band_(0), coeffs_(1) {}

  explicit BandVector(int band) {
    if (band < 0) throw std::invalid_argument("BandVector: band must be >= 0");
    band_ = band;
    coeffs_.assign(2 * static_cast<std::size_t>(band) + 1, Complex{0.0, 0.0});
  }

  /// Standard basis vector delta_k, band defaults to |k|.
  static BandVector delta(int k) { return delta(k, std::abs(k)); }

  static BandVector delta(int k, int band) {
    BandVector x(band);
    x.set(k, Complex{1.0, 0.0});
    return x;
  }

  int band() const { return band_; }
  std::size_t size() const { return coeffs_.size(); }

  /// Coefficient at index n; zero outside the stored window.
  Complex c(int n) const {
    if (n < -band_ || n > band_) return Complex{0.0, 0.0};
    return coeffs_[static_cast<std::size_t>(n + band_)];
  }

  void set(int n, Complex v) {
    if (n < -band_ || n > band_)
      throw std::out_of_range("BandVector::set: index outside band window");
    coeffs_[static_cast<std::size_t>(n + band_)] = v;
  }

  /// Same coefficients on a window of the given half-width. Shrinking
  /// drops the outer coefficients.
  BandVector resized(int band) const {
    BandVector out(band);
    int m = band < band_ ? band : band_;
    for (int n = -m; n <= m; ++n) out.set(n, c(n));
    return out;
  }

  BandVector& operator+=(const BandVector& y) {
    *this = *this + y;
    return *this;
  }
  BandVector& operator-=(const BandVector& y) {
    *this = *this - y;
    return *this;
  }
  BandVector& operator*=(Complex a) {
    for (auto& v : coeffs_) v *= a;
    return *this;
  }

  friend BandVector operator+(const BandVector& x, const BandVector& y) {
    BandVector out(x.band_ > y.band_ ? x.band_ : y.band_);
    for (int n = -out.band_; n <= out.band_; ++n) out.set(n, x.c(n) + y.c(n));
    return out;
  }
  friend BandVector operator-(const BandVector& x, const BandVector& y) {
    BandVector out(x.band_ > y.band_ ? x.band_ : y.band_);
    for (int n = -out.band_; n <= out.band_; ++n) out.set(n, x.c(n) - y.c(n));
    return out;
  }
  friend BandVector operator*(Complex a, const BandVector& x) {
    BandVector out = x;
    out *= a;
    return out;
  }
  friend BandVector operator*(double a, const BandVector& x) {
    return Complex{a, 0.0} * x;
  }
  friend BandVector operator-(const BandVector& x) { return -1.0 * x; }

  bool is_zero() const {
    for (const auto& v : coeffs_)
      if (v != Complex{0.0, 0.0}) return false;
    return true;
  }

 private:
  int band_;
  std::vector<Complex> coeffs_;
};

/// Multiplication by i in real coordinates: (a, b) -> (-b, a), exact.
inline BandVector times_i(const BandVector& x) {
  BandVector out(x.band());
  for (int n = -x.band(); n <= x.band(); ++n) {
    Complex v = x.c(n);
    out.set(n, Complex{-v.imag(), v.real()});
  }
  return out;
}

/// Zero out all coefficients with |n| >= k (window {-k+1, ..., k-1}).
inline BandVector truncate(const BandVector& x, int k) {
  if (k < 0) throw std::invalid_argument("truncate: k must be >= 0");
  BandVector out(x.band());
  for (int n = -x.band(); n <= x.band(); ++n)
    if (std::abs(n) < k) out.set(n, x.c(n));
  return out;
}

/// Largest absolute coefficient difference over the union window.
inline double max_abs_diff(const BandVector& x, const BandVector& y) {
  int band = x.band() > y.band() ? x.band() : y.band();
  double worst = 0.0;
  for (int n = -band; n <= band; ++n) {
    double d = std::abs(x.c(n) - y.c(n));
    if (d > worst) worst = d;
  }
  return worst;
}

inline double max_abs_coeff(const BandVector& x) {
  double worst = 0.0;
  for (int n = -x.band(); n <= x.band(); ++n) {
    double a = std::abs(x.c(n));
    if (a > worst) worst = a;
  }
  return worst;
}

}  // namespace scalesym
