#pragma once

#include "scalesym/band_vector.hpp"
#include "scalesym/multipliers.hpp"
#include "scalesym/pairings.hpp"
#include "scalesym/sc_check.hpp"
#include "scalesym/weights.hpp"

namespace scalesym::schrodinger {

/// The free Schrodinger equation lives on the double-spaced Levi-Sobolev
/// scale: level s has weights (1+n^2)^{2s}.
inline WeightSequence scale() { return WeightSequence::sobolev_double(); }

/// h(u) = ||u_x||_0^2 / 2 = (1/2) sum n^2 |u_n|^2.
inline double hamiltonian(const BandVector& u) {
  double acc = 0.0;
  for (int n = -u.band(); n <= u.band(); ++n) {
    double a = std::norm(u.c(n));
    if (a != 0.0) acc += static_cast<double>(n) * n * a;
  }
  return 0.5 * acc;
}

/// Strong derivative Dh(u) = -<u_xx, .>_0, representative n^2 u_n.
inline DualCovector dh(const BandVector& u) {
  BandVector rep(u.band());
  for (int n = -u.band(); n <= u.band(); ++n)
    rep.set(n, static_cast<double>(n) * n * u.c(n));
  return DualCovector{rep};
}

/// V(u) = i * laplacian(u), multiplier -i n^2; the omega-gradient of h.
inline BandVector vector_field(const BandVector& u) {
  return apply(MultiplierOperator::i_laplacian(), u);
}

/// phi(t, u) = e^{it*laplacian} u, multiplier e^{-i t n^2}.
inline BandVector flow(double t, const BandVector& u) {
  return apply(MultiplierOperator::propagator(t), u);
}

/// Level-m norm of the flow-equation defect at (t, u):
///   (phi(t+d) - phi(t-d)) / 2d  -  V(phi(t));
/// O(delta^2) on band-limited data.
inline double flow_residual(double t, double delta, const BandVector& u,
                            int m) {
  if (!(delta > 0.0))
    throw std::invalid_argument("flow_residual: delta must be > 0");
  BandVector fd = (1.0 / (2.0 * delta)) * (flow(t + delta, u) - flow(t - delta, u));
  return level_norm(fd - vector_field(flow(t, u)), scale(), m);
}

/// sc-derivative of the flow in (t, u):
///   D phi(t, u, h, xi) = phi(t, xi) + h * i*laplacian(phi(t, u)).
inline BandVector flow_tangent(double t, const BandVector& u, double h,
                               const BandVector& xi) {
  return flow(t, xi) + h * vector_field(flow(t, u));
}

inline ScaleFunctional hamiltonian_functional() {
  return {[](const BandVector& u) { return hamiltonian(u); }, 1,
          "schrodinger_h"};
}

inline ScaleMap flow_map(double t) {
  return {[t](const BandVector& u) { return flow(t, u); }, 0,
          "schrodinger_flow"};
}

}  // namespace scalesym::schrodinger
