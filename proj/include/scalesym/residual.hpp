#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace scalesym {

/// Convergence ladder: (step, residual) pairs for a strictly decreasing
/// positive step sequence, with a log-log least-squares slope over the
/// last four rungs. A limit claim passes when the residual decays at
/// the expected rate (or sits at the roundoff floor for exact maps).
class ResidualTable {
 public:
  ResidualTable(std::vector<double> steps, std::vector<double> residuals)
      : steps_(std::move(steps)), residuals_(std::move(residuals)) {
    if (steps_.size() != residuals_.size())
      throw std::invalid_argument("ResidualTable: size mismatch");
    for (std::size_t i = 0; i < steps_.size(); ++i) {
      if (!(steps_[i] > 0.0))
        throw std::invalid_argument("ResidualTable: steps must be positive");
      if (i > 0 && !(steps_[i] < steps_[i - 1]))
        throw std::invalid_argument(
            "ResidualTable: steps must be strictly decreasing");
    }
  }

  const std::vector<double>& steps() const { return steps_; }
  const std::vector<double>& residuals() const { return residuals_; }
  std::size_t size() const { return steps_.size(); }

  /// Least-squares slope of log(residual) against log(step) over the
  /// last four rungs. Unavailable with fewer than four rungs or when a
  /// residual in the fit window is exactly zero.
  std::optional<double> slope() const {
    if (steps_.size() < 4) return std::nullopt;
    std::size_t first = steps_.size() - 4;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = first; i < steps_.size(); ++i) {
      if (!(residuals_[i] > 0.0)) return std::nullopt;
      double lx = std::log(steps_[i]);
      double ly = std::log(residuals_[i]);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    double n = 4.0;
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }

  bool all_below(double tol) const {
    for (double r : residuals_)
      if (!(r <= tol)) return false;
    return true;
  }

  double max_residual() const {
    double worst = 0.0;
    for (double r : residuals_)
      if (r > worst) worst = r;
    return worst;
  }

 private:
  std::vector<double> steps_;
  std::vector<double> residuals_;
};

/// Default step ladder for slope fits, one decade per rung.
inline std::vector<double> decade_ladder(double top = 1e-1, int rungs = 5) {
  std::vector<double> steps;
  double e = top;
  for (int i = 0; i < rungs; ++i, e *= 0.1) steps.push_back(e);
  return steps;
}

}  // namespace scalesym
