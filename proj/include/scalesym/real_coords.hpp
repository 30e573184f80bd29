#pragma once

#include <Eigen/Dense>
#include <functional>

#include "scalesym/band_vector.hpp"
#include "scalesym/multipliers.hpp"

namespace scalesym {

// Real-coordinate convention, shared by every module: index n runs
// -N..N (n-major) and each mode contributes (Re, Im) interleaved, so a
// band-N vector becomes a real vector of dimension 2*(2N+1).

inline int real_dim(int band) { return 2 * (2 * band + 1); }

inline Eigen::VectorXd to_real(const BandVector& x, int band) {
  Eigen::VectorXd v(real_dim(band));
  for (int n = -band; n <= band; ++n) {
    Complex c = x.c(n);
    v(2 * (n + band)) = c.real();
    v(2 * (n + band) + 1) = c.imag();
  }
  return v;
}

inline BandVector from_real(const Eigen::VectorXd& v, int band) {
  BandVector x(band);
  for (int n = -band; n <= band; ++n)
    x.set(n, Complex{v(2 * (n + band)), v(2 * (n + band) + 1)});
  return x;
}

/// Gram matrix of the symplectic form: omega(u, v) = u^T Omega v,
/// block-diagonal with [[0, 1], [-1, 0]] per mode. Omega^2 = -I.
inline Eigen::MatrixXd omega_matrix(int band) {
  int d = real_dim(band);
  Eigen::MatrixXd o = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; i += 2) {
    o(i, i + 1) = 1.0;
    o(i + 1, i) = -1.0;
  }
  return o;
}

/// Real realization of a diagonal operator: per-mode 2x2 blocks
/// [[Re m, -Im m], [Im m, Re m]].
inline Eigen::MatrixXd real_matrix(const MultiplierOperator& m, int band) {
  int d = real_dim(band);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(d, d);
  for (int n = -band; n <= band; ++n) {
    Complex c = m.coeff(n);
    int i = 2 * (n + band);
    out(i, i) = c.real();
    out(i, i + 1) = -c.imag();
    out(i + 1, i) = c.imag();
    out(i + 1, i + 1) = c.real();
  }
  return out;
}

/// Central-difference Jacobian of f in real coordinates, column by
/// column; f outputs are truncated/padded to the probe band.
inline Eigen::MatrixXd fd_jacobian(
    const std::function<BandVector(const BandVector&)>& f, const BandVector& x,
    int band, double eps) {
  int d = real_dim(band);
  Eigen::VectorXd xr = to_real(x, band);
  Eigen::MatrixXd jac(d, d);
  for (int j = 0; j < d; ++j) {
    Eigen::VectorXd hi = xr, lo = xr;
    hi(j) += eps;
    lo(j) -= eps;
    Eigen::VectorXd df = to_real(f(from_real(hi, band)), band) -
                         to_real(f(from_real(lo, band)), band);
    jac.col(j) = df / (2.0 * eps);
  }
  return jac;
}

}  // namespace scalesym
