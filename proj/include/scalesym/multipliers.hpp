#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "scalesym/band_vector.hpp"
#include "scalesym/pairings.hpp"
#include "scalesym/weights.hpp"

namespace scalesym {

/// Diagonal operator in the Fourier basis: (M x)_n = m_n x_n.
/// Built-in families are defined for every n; table-backed operators
/// reject applications beyond their stored band.
class MultiplierOperator {
 public:
  MultiplierOperator(std::string label, std::function<Complex(int)> coeff,
                     std::optional<int> max_band = std::nullopt)
      : label_(std::move(label)),
        coeff_(std::move(coeff)),
        max_band_(max_band) {}

  static MultiplierOperator identity() {
    return {"id", [](int) { return Complex{1.0, 0.0}; }};
  }

  /// Weak differentiation d/dx, multiplier i n.
  static MultiplierOperator derivative() {
    return {"d/dx", [](int n) { return Complex{0.0, static_cast<double>(n)}; }};
  }

  /// Laplacian, multiplier (i n)^2 = -n^2.
  static MultiplierOperator laplacian() {
    return {"laplacian",
            [](int n) { return Complex{-static_cast<double>(n) * n, 0.0}; }};
  }

  /// i * laplacian, multiplier -i n^2 (the free Schrodinger field).
  static MultiplierOperator i_laplacian() {
    return {"i*laplacian",
            [](int n) { return Complex{0.0, -static_cast<double>(n) * n}; }};
  }

  /// e^{it*laplacian}, multiplier e^{-i t n^2}; unitary at every level.
  static MultiplierOperator propagator(double t) {
    return {"propagator", [t](int n) {
              return std::polar(1.0, -t * static_cast<double>(n) * n);
            }};
  }

  /// Reduced Schrodinger generator in Darboux chart a:
  /// coefficients a^2 - n^2 for n < a, a^2 - (n+1)^2 for n >= a.
  static MultiplierOperator sigma(int a) {
    return {"sigma_" + std::to_string(a), [a](int n) {
              double aa = static_cast<double>(a) * a;
              double shifted = n < a ? static_cast<double>(n) * n
                                     : static_cast<double>(n + 1) * (n + 1);
              return Complex{aa - shifted, 0.0};
            }};
  }

  /// Explicit table m_n for n = -band..band; application beyond the
  /// table band is rejected.
  static MultiplierOperator from_table(std::string label,
                                       std::vector<Complex> table) {
    if (table.empty() || table.size() % 2 == 0)
      throw std::invalid_argument("multiplier table must have odd length");
    int band = static_cast<int>(table.size() / 2);
    MultiplierOperator m(std::move(label),
                         [tab = std::move(table), band](int n) {
                           return tab[static_cast<std::size_t>(n + band)];
                         });
    m.max_band_ = band;
    return m;
  }

  const std::string& label() const { return label_; }
  std::optional<int> max_band() const { return max_band_; }

  Complex coeff(int n) const {
    if (max_band_ && std::abs(n) > *max_band_)
      throw std::out_of_range("multiplier '" + label_ +
                              "' undefined beyond band " +
                              std::to_string(*max_band_));
    return coeff_(n);
  }

 private:
  std::string label_;
  std::function<Complex(int)> coeff_;
  std::optional<int> max_band_;
};

inline BandVector apply(const MultiplierOperator& m, const BandVector& x) {
  BandVector out(x.band());
  for (int n = -x.band(); n <= x.band(); ++n) out.set(n, m.coeff(n) * x.c(n));
  return out;
}

inline MultiplierOperator compose(const MultiplierOperator& a,
                                  const MultiplierOperator& b) {
  std::optional<int> band = a.max_band();
  if (b.max_band() && (!band || *b.max_band() < *band)) band = b.max_band();
  return {a.label() + "*" + b.label(),
          [a, b](int n) { return a.coeff(n) * b.coeff(n); }, band};
}

/// Band-limited estimate sup_{|n|<=band} |m_n| nu_n^{r-s} of the operator
/// norm X_s -> X_r. Exact for the full norm whenever the ratio is
/// maximized inside the band.
inline double operator_norm(const MultiplierOperator& m,
                            const WeightSequence& nu, int s, int r, int band) {
  double sup = 0.0;
  for (int n = -band; n <= band; ++n) {
    double v = std::abs(m.coeff(n)) * nu.weight_pow(n, static_cast<double>(r - s));
    if (v > sup) sup = v;
  }
  return sup;
}

/// Adjoint under the standard symplectic form, defined by
/// omega(M v, w) = omega(v, M^w w). For a diagonal C-linear operator this
/// is the conjugate multiplier.
inline MultiplierOperator symplectic_adjoint(const MultiplierOperator& m) {
  return {m.label() + "^w", [m](int n) { return std::conj(m.coeff(n)); },
          m.max_band()};
}

}  // namespace scalesym
