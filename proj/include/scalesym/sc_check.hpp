#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "scalesym/band_vector.hpp"
#include "scalesym/pairings.hpp"
#include "scalesym/real_coords.hpp"
#include "scalesym/residual.hpp"
#include "scalesym/rng.hpp"
#include "scalesym/weights.hpp"

namespace scalesym {

/// A map between scales, evaluated on band vectors. domain_shift m0
/// records the level offset on which the map is declared (1 for
/// densely-defined maps such as vector fields).
struct ScaleMap {
  std::function<BandVector(const BandVector&)> eval;
  int domain_shift = 0;
  std::string label;
};

/// A real-valued densely-defined functional on the scale.
struct ScaleFunctional {
  std::function<double(const BandVector&)> eval;
  int domain_shift = 1;
  std::string label;
};

/// A covector given by a representative g acting through the real
/// pairing xi -> Re sum g_n conj(xi_n).
struct DualCovector {
  BandVector rep;
  double action(const BandVector& xi) const { return real_pairing(rep, xi); }
};

/// Central difference (f(x+eps*xi) - f(x-eps*xi)) / (2 eps).
inline BandVector fd_directional(const ScaleMap& f, const BandVector& x,
                                 const BandVector& xi, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("fd_directional: eps <= 0");
  BandVector hi = f.eval(x + eps * xi);
  BandVector lo = f.eval(x - eps * xi);
  return (1.0 / (2.0 * eps)) * (hi - lo);
}

inline double fd_directional(const ScaleFunctional& h, const BandVector& x,
                             const BandVector& xi, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("fd_directional: eps <= 0");
  return (h.eval(x + eps * xi) - h.eval(x - eps * xi)) / (2.0 * eps);
}

// The layered Frechet condition at level m: the remainder
//   f(x + eps*xi) - f(x) - eps*Df(x, xi)
// measured in the level-m norm, against eps times the level-(m+1) norm
// of the test vector. A decaying ladder certifies the limit.

inline ResidualTable sc1_residual_table(
    const ScaleMap& f,
    const std::function<BandVector(const BandVector&, const BandVector&)>& df,
    const BandVector& x, const BandVector& xi, const WeightSequence& nu, int m,
    const std::vector<double>& steps) {
  std::vector<double> residuals;
  residuals.reserve(steps.size());
  BandVector fx = f.eval(x);
  double denom_xi = level_norm(xi, nu, m + 1);
  for (double eps : steps) {
    BandVector rem = f.eval(x + eps * xi) - fx - eps * df(x, xi);
    residuals.push_back(level_norm(rem, nu, m) / (eps * denom_xi));
  }
  return ResidualTable(steps, residuals);
}

inline ResidualTable sc1_residual_table(
    const ScaleFunctional& h,
    const std::function<double(const BandVector&, const BandVector&)>& dh,
    const BandVector& x, const BandVector& xi, const WeightSequence& nu, int m,
    const std::vector<double>& steps) {
  std::vector<double> residuals;
  residuals.reserve(steps.size());
  double hx = h.eval(x);
  double denom_xi = level_norm(xi, nu, m + 1);
  for (double eps : steps) {
    double rem = h.eval(x + eps * xi) - hx - eps * dh(x, xi);
    residuals.push_back(std::abs(rem) / (eps * denom_xi));
  }
  return ResidualTable(steps, residuals);
}

/// Level-m norm of the derivative representative; by the dual isometry
/// this is the operator norm of Dh(x) on X_{-m}, so finiteness realizes
/// membership Dh(x) in X*_{-m}.
inline double strong_dual_norm(
    const std::function<DualCovector(const BandVector&)>& dh,
    const BandVector& x, const WeightSequence& nu, int m) {
  return level_norm(dh(x).rep, nu, m);
}

/// Sampled Lipschitz-type ratio ||rep(Dh x) - rep(Dh y)||_m / ||x-y||_{m+1}
/// over random nearby pairs; a finite bound is the working certificate for
/// the sc0 continuity of the derivative map.
inline double dual_lipschitz_ratio(
    const std::function<DualCovector(const BandVector&)>& dh,
    const BandVector& x, const WeightSequence& nu, int m, SplitMix64& rng,
    double radius, int samples) {
  double worst = 0.0;
  BandVector gx = dh(x).rep;
  for (int i = 0; i < samples; ++i) {
    BandVector d = random_band_vector(rng, x.band());
    double dn = level_norm(d, nu, m + 1);
    if (dn == 0.0) continue;
    BandVector y = x + (radius / dn) * d;
    double num = level_norm(dh(y).rep - gx, nu, m);
    double den = level_norm(y - x, nu, m + 1);
    if (den > 0.0 && num / den > worst) worst = num / den;
  }
  return worst;
}

/// Sampled operator-norm ratio ||Df(x, xi)||_m / ||xi||_m over level-m
/// test vectors: the numeric stand-in for the requirement that the
/// layer derivative extends continuously from X_{m+1} to X_m.
inline double layerwise_extension_ratio(
    const std::function<BandVector(const BandVector&, const BandVector&)>& df,
    const BandVector& x, const WeightSequence& nu, int m, SplitMix64& rng,
    int samples, int band) {
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    BandVector xi = random_band_vector(rng, band);
    double den = level_norm(xi, nu, m);
    if (den == 0.0) continue;
    double num = level_norm(df(x, xi), nu, m);
    if (num / den > worst) worst = num / den;
  }
  return worst;
}

/// Max-abs entry of J^T Omega J - Omega for the central-difference
/// Jacobian of f at x in real coordinates: zero exactly when the
/// derivative preserves the symplectic form.
inline double symplecticity_defect(const ScaleMap& f, const BandVector& x,
                                   int band, double eps) {
  Eigen::MatrixXd jac = fd_jacobian(f.eval, x, band, eps);
  Eigen::MatrixXd omega_m = omega_matrix(band);
  return (jac.transpose() * omega_m * jac - omega_m)
      .cwiseAbs()
      .maxCoeff();
}

struct ChainRuleResult {
  double defect;
  double condition_number;
};

/// Two routes to D_x(h o f) for a symplectomorphism f:
///   left:  central-difference gradient of h o f in real coordinates;
///   right: the representative of D_{f(x)} h pushed through the
///          symplectic adjoint of (D_x f)^{-1}, i.e. the row vector
///          g^T Omega^{-1} (J^{-1})^T Omega.
/// Returns the max-abs component difference plus the Jacobian condition
/// number; cond > 1e10 aborts instead of silently regularizing.
inline ChainRuleResult strong_chain_rule_check(
    const ScaleFunctional& h,
    const std::function<DualCovector(const BandVector&)>& dh,
    const ScaleMap& f, const BandVector& x, int band, double eps) {
  Eigen::MatrixXd jac = fd_jacobian(f.eval, x, band, eps);

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
  double smin = svd.singularValues().minCoeff();
  double smax = svd.singularValues().maxCoeff();
  double cond = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
  if (!(cond <= 1e10))
    throw std::runtime_error("strong_chain_rule_check: singular Jacobian of '" +
                             f.label + "' (cond " + std::to_string(cond) + ")");

  Eigen::MatrixXd omega_m = omega_matrix(band);
  Eigen::MatrixXd omega_inv = -omega_m;  // Omega^2 = -I
  Eigen::VectorXd g = to_real(dh(f.eval(x)).rep, band);
  Eigen::MatrixXd adj = omega_inv * jac.inverse().transpose() * omega_m;
  Eigen::VectorXd rhs = adj.transpose() * g;

  int d = real_dim(band);
  Eigen::VectorXd xr = to_real(x, band);
  Eigen::VectorXd lhs(d);
  for (int j = 0; j < d; ++j) {
    Eigen::VectorXd hi = xr, lo = xr;
    hi(j) += eps;
    lo(j) -= eps;
    lhs(j) =
        (h.eval(f.eval(from_real(hi, band))) - h.eval(f.eval(from_real(lo, band)))) /
        (2.0 * eps);
  }
  return {(lhs - rhs).cwiseAbs().maxCoeff(), cond};
}

}  // namespace scalesym
