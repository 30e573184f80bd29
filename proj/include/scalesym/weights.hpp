#pragma once

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "scalesym/band_vector.hpp"

namespace scalesym {

enum class WeightFamily { sobolev_half, sobolev_double, custom };

/// Positive weight family nu_n with nu_n -> infinity as |n| -> infinity.
/// The two built-in families:
///   sobolev_half:   nu_n = (1+n^2)^{1/2}   (Levi-Sobolev scale W^{s,2})
///   sobolev_double: nu_n = 1+n^2           (W^{2s,2}, the Schrodinger scale)
/// Custom weights are an explicit table on |n| <= n_max with a declared
/// positive tail exponent; the tail of the table must grow monotonically.
class WeightSequence {
 public:
  static WeightSequence sobolev_half() {
    return WeightSequence(WeightFamily::sobolev_half);
  }
  static WeightSequence sobolev_double() {
    return WeightSequence(WeightFamily::sobolev_double);
  }

  /// table holds nu_n for n = -n_max..n_max.
  static WeightSequence custom(std::vector<double> table, double tail_exponent) {
    if (table.empty() || table.size() % 2 == 0)
      throw std::invalid_argument("custom weights: table must have odd length 2*n_max+1");
    if (tail_exponent <= 0.0)
      throw std::invalid_argument("custom weights: tail exponent must be > 0");
    for (double w : table)
      if (!(w > 0.0)) throw std::invalid_argument("custom weights: nu_n must be > 0");
    WeightSequence nu(WeightFamily::custom);
    nu.table_ = std::move(table);
    nu.n_max_ = static_cast<int>(nu.table_.size() / 2);
    nu.tail_exponent_ = tail_exponent;
    // Declared tail: the outer half of the table on each side must be
    // non-decreasing in |n|.
    for (int n = nu.n_max_ / 2; n < nu.n_max_; ++n) {
      if (nu.weight(n + 1) < nu.weight(n) || nu.weight(-n - 1) < nu.weight(-n))
        throw std::invalid_argument("custom weights: declared tail is not monotone");
    }
    return nu;
  }

  WeightFamily family() const { return family_; }
  double tail_exponent() const { return tail_exponent_; }

  /// Band beyond which a custom table is undefined; built-ins are total.
  int table_band() const { return n_max_; }

  double weight(int n) const { return std::sqrt(weight_sq(n)); }

  /// nu_n^2; exact in double for the built-in families.
  double weight_sq(int n) const {
    switch (family_) {
      case WeightFamily::sobolev_half:
        return 1.0 + static_cast<double>(n) * n;
      case WeightFamily::sobolev_double: {
        double q = 1.0 + static_cast<double>(n) * n;
        return q * q;
      }
      case WeightFamily::custom:
      default:
        if (std::abs(n) > n_max_)
          throw std::out_of_range("custom weights: index beyond table band " +
                                  std::to_string(n_max_));
        return table_[static_cast<std::size_t>(n + n_max_)] *
               table_[static_cast<std::size_t>(n + n_max_)];
    }
  }

  /// nu_n^p for a real exponent p (used with p = s, r-s, ...).
  double weight_pow(int n, double p) const {
    return std::pow(weight_sq(n), 0.5 * p);
  }

 private:
  explicit WeightSequence(WeightFamily family) : family_(family) {}

  WeightFamily family_;
  std::vector<double> table_;
  int n_max_ = 0;
  double tail_exponent_ = 0.0;
};

/// Level-s norm: sqrt( sum |x_n|^2 nu_n^{2s} ).
inline double level_norm(const BandVector& x, const WeightSequence& nu, int s) {
  double acc = 0.0;
  for (int n = -x.band(); n <= x.band(); ++n) {
    double a = std::norm(x.c(n));
    if (a != 0.0) acc += a * nu.weight_pow(n, 2.0 * s);
  }
  return std::sqrt(acc);
}

/// Operator norm of (iota_sr - p^k): X_s -> X_r, the tail of the compact
/// bonding map. For the built-in monotone families this is the closed form
/// nu_k^{r-s}; for custom weights it is the supremum over the table band
/// (n_max is clamped to the table).
inline double tail_operator_norm(const WeightSequence& nu, int s, int r, int k,
                                 int n_max) {
  if (s <= r)
    throw std::invalid_argument("tail_operator_norm: requires s > r");
  if (k < 1) throw std::invalid_argument("tail_operator_norm: requires k >= 1");
  if (nu.family() != WeightFamily::custom)
    return nu.weight_pow(k, static_cast<double>(r - s));
  int hi = n_max < nu.table_band() ? n_max : nu.table_band();
  double sup = 0.0;
  for (int n = k; n <= hi; ++n) {
    double v = nu.weight_pow(n, static_cast<double>(r - s));
    if (v > sup) sup = v;
    v = nu.weight_pow(-n, static_cast<double>(r - s));
    if (v > sup) sup = v;
  }
  return sup;
}

}  // namespace scalesym
