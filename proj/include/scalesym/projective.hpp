#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "scalesym/band_vector.hpp"
#include "scalesym/multipliers.hpp"
#include "scalesym/pairings.hpp"
#include "scalesym/sc_check.hpp"
#include "scalesym/schrodinger.hpp"
#include "scalesym/weights.hpp"

namespace scalesym::projective {

inline constexpr double kChartGuard = 1e-12;

/// Point of the projective space P(X_0), held as a unit representative.
/// When a chart is attached (anchor), the representative phase is fixed
/// so that the anchor coefficient is real and positive.
struct RayPoint {
  BandVector rep;
  std::optional<int> anchor;
};

enum class ChartFlavor { affine, darboux };

struct ChartId {
  int a = 0;
  ChartFlavor flavor = ChartFlavor::darboux;
};

inline double norm0(const BandVector& x) {
  return std::sqrt(real_pairing(x, x));
}

inline RayPoint ray_of(const BandVector& x) {
  double n0 = norm0(x);
  if (!(n0 > 0.0))
    throw std::invalid_argument("ray_of: zero vector has no ray");
  return {(1.0 / n0) * x, std::nullopt};
}

/// Rotate the representative so coefficient a is real and positive.
inline RayPoint fix_phase(const RayPoint& p, int a) {
  Complex xa = p.rep.c(a);
  double mag = std::abs(xa);
  if (mag <= kChartGuard)
    throw std::domain_error("fix_phase: outside chart domain U_" +
                            std::to_string(a));
  return {(std::conj(xa) / mag) * p.rep, a};
}

namespace detail {

// Forward charts drop slot a and shift the higher indices down; both
// flavors differ only in the prefactor, and both are invariant under
// rescaling of the representative.
inline BandVector chart_forward(int a, const BandVector& x, Complex prefactor) {
  int band = x.band();
  BandVector out(band);
  for (int n = -band; n <= band; ++n) {
    int src = n < a ? n : n + 1;
    out.set(n, prefactor * x.c(src));
  }
  return out;
}

// Inverse slot bookkeeping: reinsert slot_value at index a, shifting
// chart coordinates up past it. Output band grows by one to keep the
// shifted top coefficient.
inline BandVector chart_insert(int a, const BandVector& u, Complex slot_value) {
  int band = u.band() + 1;
  if (std::abs(a) > band) band = std::abs(a);
  BandVector x(band);
  for (int sn = -band; sn <= band; ++sn) {
    if (sn == a) {
      x.set(sn, slot_value);
    } else {
      int n = sn < a ? sn : sn - 1;
      x.set(sn, u.c(n));
    }
  }
  return x;
}

inline Complex chart_coeff_or_throw(int a, const BandVector& rep) {
  Complex xa = rep.c(a);
  if (std::abs(xa) <= kChartGuard)
    throw std::domain_error("outside chart domain U_" + std::to_string(a));
  return xa;
}

}  // namespace detail

/// phi_a([x])_n = (1/x_a) * { x_n if n<a; x_{n+1} if n>=a }.
inline BandVector affine_chart(int a, const RayPoint& p) {
  Complex xa = detail::chart_coeff_or_throw(a, p.rep);
  return detail::chart_forward(a, p.rep, 1.0 / xa);
}

inline RayPoint affine_chart_inverse(int a, const BandVector& u) {
  BandVector x = detail::chart_insert(a, u, Complex{1.0, 0.0});
  RayPoint p = ray_of(x);
  p.anchor = a;
  return p;
}

/// psi_a([x])_n = (|x_a| / (x_a ||x||_0)) * { x_n if n<a; x_{n+1} if n>=a }.
/// The image lies in the open unit ball: ||psi_a([x])||_0^2 = 1 - |x_a|^2/||x||_0^2.
inline BandVector darboux_chart(int a, const RayPoint& p) {
  Complex xa = detail::chart_coeff_or_throw(a, p.rep);
  Complex prefactor = std::abs(xa) / (xa * norm0(p.rep));
  return detail::chart_forward(a, p.rep, prefactor);
}

/// Reconstruct the unit representative with slot a real positive:
/// x_a = sqrt(1 - ||u||_0^2). Requires u inside the open unit ball.
inline RayPoint darboux_chart_inverse(int a, const BandVector& u) {
  double nsq = real_pairing(u, u);
  if (!(nsq < 1.0))
    throw std::domain_error("darboux_chart_inverse: point outside the unit ball");
  Complex slot{std::sqrt(1.0 - nsq), 0.0};
  return {detail::chart_insert(a, u, slot), a};
}

inline BandVector chart(const ChartId& id, const RayPoint& p) {
  return id.flavor == ChartFlavor::affine ? affine_chart(id.a, p)
                                          : darboux_chart(id.a, p);
}

inline RayPoint chart_inverse(const ChartId& id, const BandVector& u) {
  return id.flavor == ChartFlavor::affine ? affine_chart_inverse(id.a, u)
                                          : darboux_chart_inverse(id.a, u);
}

/// Transition map chart_b o chart_a^{-1} on the chart overlap.
inline BandVector transition(const ChartId& a, const ChartId& b,
                             const BandVector& u) {
  return chart(b, chart_inverse(a, u));
}

/// Momentum map of the circle action, mu(x) = (1 - ||x||_0^2) / 2;
/// its zero set is the unit sphere.
inline double momentum_map(const BandVector& x) {
  return 0.5 * (1.0 - real_pairing(x, x));
}

/// The linear flow descends to rays: phi_bar(t, [x]) = [e^{it*laplacian} x].
inline RayPoint reduced_flow(double t, const RayPoint& p) {
  return ray_of(schrodinger::flow(t, p.rep));
}

/// Chart-a expression of the reduced vector field: u -> i sigma_a(u).
inline BandVector reduced_field_chart(int a, const BandVector& u) {
  return times_i(apply(MultiplierOperator::sigma(a), u));
}

/// h_bar([u]) = (1/2) ||u_x||_0^2 / ||u||_0^2; on unit representatives
/// this is the linear Hamiltonian.
inline double reduced_hamiltonian(const RayPoint& p) {
  return schrodinger::hamiltonian(p.rep);
}

/// Chart-a expression h_bar_a = h_bar o psi_a^{-1}; closed form
/// a^2/2 - <sigma_a(u), u>_real/2.
inline double reduced_hamiltonian_chart(int a, const BandVector& u) {
  double quad = real_pairing(apply(MultiplierOperator::sigma(a), u), u);
  return 0.5 * (static_cast<double>(a) * a) - 0.5 * quad;
}

/// D(h_bar_a)(u) = -<sigma_a(u), .>_0.
inline DualCovector reduced_dh_chart(int a, const BandVector& u) {
  return DualCovector{-1.0 * apply(MultiplierOperator::sigma(a), u)};
}

/// Closed form of the chart-expressed reduced flow: the diagonal phase
/// map with coefficients e^{i t sigma_a(n)} = e^{i t (a^2 - n~^2)}.
inline MultiplierOperator chart_flow_multiplier(int a, double t) {
  MultiplierOperator s = MultiplierOperator::sigma(a);
  return {"chart_flow_a=" + std::to_string(a), [s, t](int n) {
            return std::polar(1.0, t * s.coeff(n).real());
          }};
}

/// Minimum over unit phases c of ||p - c q||_0, evaluated at the
/// optimal phase c = <p, q>/|<p, q>| so nearby rays do not lose
/// precision to cancellation.
inline double ray_distance(const RayPoint& p, const RayPoint& q) {
  int band = p.rep.band() > q.rep.band() ? p.rep.band() : q.rep.band();
  Complex z{0.0, 0.0};
  for (int n = -band; n <= band; ++n) z += p.rep.c(n) * std::conj(q.rep.c(n));
  Complex phase = std::abs(z) > 0.0 ? z / std::abs(z) : Complex{1.0, 0.0};
  return norm0(p.rep - phase * q.rep);
}

/// Re-anchoring rule for trajectories: the chart with the largest
/// coefficient magnitude; ties prefer smaller |a|, then negative a.
inline int best_chart(const BandVector& x) {
  int best = 0;
  double best_mag = -1.0;
  for (int n = -x.band(); n <= x.band(); ++n) {
    double mag = std::abs(x.c(n));
    bool better = mag > best_mag;
    if (!better && mag == best_mag) {
      int an = std::abs(n), ab = std::abs(best);
      better = an < ab || (an == ab && n < best);
    }
    if (better) {
      best = n;
      best_mag = mag;
    }
  }
  return best;
}

/// Attach the best chart and fix the representative phase there.
inline RayPoint anchored(const RayPoint& p) {
  return fix_phase(p, best_chart(p.rep));
}

}  // namespace scalesym::projective
