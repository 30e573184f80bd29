#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "scalesym/band_vector.hpp"
#include "scalesym/io.hpp"
#include "scalesym/multipliers.hpp"
#include "scalesym/pairings.hpp"
#include "scalesym/projective.hpp"
#include "scalesym/real_coords.hpp"
#include "scalesym/residual.hpp"
#include "scalesym/rng.hpp"
#include "scalesym/sc_check.hpp"
#include "scalesym/schrodinger.hpp"
#include "scalesym/weights.hpp"

namespace scalesym::harness {

struct ExperimentConfig {
  std::string suite = "verify";
  int band = 16;
  std::uint64_t seed = 42;
  std::vector<double> eps_ladder = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
  std::vector<double> t_values = {0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<int> chart_ids = {-2, -1, 0, 1, 2};
  std::string output_path = "out";
  std::string preset = "delta_1";
  std::optional<BandVector> initial;
  bool projective = false;
};

inline void validate_config(const ExperimentConfig& cfg) {
  if (cfg.band < 1)
    throw std::invalid_argument("config: band: must be >= 1");
  for (std::size_t i = 0; i < cfg.eps_ladder.size(); ++i) {
    if (!(cfg.eps_ladder[i] > 0.0))
      throw std::invalid_argument("config: eps_ladder: entry " +
                                  std::to_string(i) + " must be positive");
    if (i > 0 && !(cfg.eps_ladder[i] < cfg.eps_ladder[i - 1]))
      throw std::invalid_argument(
          "config: eps_ladder: must be strictly decreasing at entry " +
          std::to_string(i));
  }
  static const char* suites[] = {"verify", "converge", "flow", "charts"};
  if (std::find(std::begin(suites), std::end(suites), cfg.suite) ==
      std::end(suites))
    throw std::invalid_argument("config: suite: unknown suite '" + cfg.suite +
                                "'");
}

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  for (const auto& [key, value] : j.items()) {
    if (key == "suite")
      cfg.suite = value.get<std::string>();
    else if (key == "band")
      cfg.band = value.get<int>();
    else if (key == "seed")
      cfg.seed = value.get<std::uint64_t>();
    else if (key == "eps_ladder")
      cfg.eps_ladder = value.get<std::vector<double>>();
    else if (key == "t_values")
      cfg.t_values = value.get<std::vector<double>>();
    else if (key == "chart_ids")
      cfg.chart_ids = value.get<std::vector<int>>();
    else if (key == "output_path")
      cfg.output_path = value.get<std::string>();
    else if (key == "projective")
      cfg.projective = value.get<bool>();
    else if (key == "initial") {
      if (value.is_string())
        cfg.preset = value.get<std::string>();
      else
        cfg.initial = io::band_vector_from_json(value);
    } else {
      throw std::invalid_argument("config: unknown field '" + key + "'");
    }
  }
  validate_config(cfg);
  return cfg;
}

struct CheckResult {
  std::string id;
  bool pass = false;
  double measured = 0.0;
  double threshold = 0.0;
  double runtime_ms = 0.0;
};

struct Report {
  std::string suite;
  int band = 0;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  // Runtime is intentionally left out of the serialized form: reports
  // must be byte-identical across runs of the same (config, seed).
  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["suite"] = suite;
    j["band"] = band;
    j["seed"] = seed;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
      nlohmann::ordered_json e;
      e["id"] = c.id;
      e["status"] = c.pass ? "PASS" : "FAIL";
      e["measured"] = c.measured;
      e["threshold"] = c.threshold;
      arr.push_back(e);
    }
    j["checks"] = arr;
    j["pass"] = all_pass();
    return j;
  }
};

namespace detail {

inline SplitMix64 stream(const ExperimentConfig& cfg, const char* check_id) {
  return SplitMix64(SplitMix64::derive(cfg.seed, check_id));
}

inline BandVector unit_at(const BandVector& x, const WeightSequence& nu,
                          int level) {
  return (1.0 / level_norm(x, nu, level)) * x;
}

// Chart ids usable at this band (slot must exist in the window).
inline std::vector<int> usable_charts(const ExperimentConfig& cfg) {
  std::vector<int> ids;
  for (int a : cfg.chart_ids)
    if (std::abs(a) <= cfg.band) ids.push_back(a);
  if (ids.empty()) ids.push_back(0);
  return ids;
}

// Deterministic ray with coefficient mass on every usable chart slot.
inline projective::RayPoint probe_ray(const ExperimentConfig& cfg,
                                      SplitMix64& rng, int band,
                                      const std::vector<int>& slots) {
  BandVector x = random_band_vector(rng, band);
  x = (0.5 / projective::norm0(x)) * x;
  for (int a : slots) {
    if (std::abs(a) > band) continue;
    Complex xa = x.c(a);
    double mag = std::abs(xa);
    Complex dir = mag > 0.0 ? xa / mag : Complex{1.0, 0.0};
    x.set(a, xa + 0.4 * dir);
  }
  (void)cfg;
  return projective::ray_of(x);
}

inline std::vector<MultiplierOperator> builtin_operators() {
  return {MultiplierOperator::derivative(), MultiplierOperator::laplacian(),
          MultiplierOperator::i_laplacian(),
          MultiplierOperator::propagator(0.7), MultiplierOperator::sigma(0),
          MultiplierOperator::sigma(2)};
}

inline std::vector<double> linear_ladder() {
  return {1e-1, 3.162277660168379e-2, 1e-2, 3.162277660168379e-3};
}

using CheckFn = std::function<CheckResult(const ExperimentConfig&)>;

// ---- scales ----------------------------------------------------------

inline CheckResult check_holder_bound(const ExperimentConfig& cfg) {
  auto rng = stream(cfg, "scales.holder_bound");
  double worst = 0.0;
  for (auto nu : {WeightSequence::sobolev_half(),
                  WeightSequence::sobolev_double()}) {
    for (int trial = 0; trial < 20; ++trial) {
      BandVector x = random_band_vector(rng, cfg.band);
      BandVector y = random_band_vector(rng, cfg.band);
      for (int s = -8; s <= 8; ++s) {
        double excess = std::abs(complex_pairing(x, y)) -
                        level_norm(x, nu, s) * level_norm(y, nu, -s);
        worst = std::max(worst, excess);
      }
    }
  }
  return {"scales.holder_bound", worst <= 1e-12, worst, 1e-12, 0.0};
}

inline CheckResult check_dual_isometry(const ExperimentConfig& cfg) {
  auto rng = stream(cfg, "scales.dual_isometry");
  double worst = 0.0;
  for (auto nu : {WeightSequence::sobolev_half(),
                  WeightSequence::sobolev_double()}) {
    for (int trial = 0; trial < 10; ++trial) {
      BandVector y = random_band_vector(rng, cfg.band);
      for (int s = -3; s <= 3; ++s) {
        BandVector x(y.band());
        for (int n = -y.band(); n <= y.band(); ++n)
          x.set(n, std::conj(y.c(n)) * nu.weight_pow(n, -2.0 * s));
        double xs = level_norm(x, nu, s);
        if (!(xs > 0.0)) continue;
        double attained = std::abs(complex_pairing((1.0 / xs) * x, y));
        double target = level_norm(y, nu, -s);
        worst = std::max(worst, std::abs(attained - target) / target);
      }
    }
  }
  return {"scales.dual_isometry", worst <= 1e-12, worst, 1e-12, 0.0};
}

inline CheckResult check_omega_compatibility(const ExperimentConfig& cfg) {
  auto rng = stream(cfg, "scales.omega_compatibility");
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    BandVector x = random_band_vector(rng, cfg.band);
    BandVector y = random_band_vector(rng, cfg.band);
    double lhs = omega(x, y);
    double rhs = real_pairing(times_i(x), y);
    worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
  }
  return {"scales.omega_compatibility", worst <= 1e-15, worst, 1e-15, 0.0};
}

inline CheckResult check_tail_norm_exactness(const ExperimentConfig& cfg) {
  double worst = 0.0;
  int kmax = std::min(16, cfg.band);
  for (auto nu : {WeightSequence::sobolev_half(),
                  WeightSequence::sobolev_double()}) {
    for (int diff = 1; diff <= 2; ++diff) {
      for (int k = 1; k <= kmax; ++k) {
        double closed = tail_operator_norm(nu, diff, 0, k, cfg.band);
        double brute = 0.0;
        for (int n = -cfg.band; n <= cfg.band; ++n) {
          BandVector d = BandVector::delta(n, cfg.band);
          BandVector tail = d - truncate(d, k);
          double ratio = level_norm(tail, nu, 0) / level_norm(d, nu, diff);
          brute = std::max(brute, ratio);
        }
        worst = std::max(worst, std::abs(closed - brute));
      }
    }
  }
  return {"scales.tail_norm_exactness", worst <= 1e-12, worst, 1e-12, 0.0};
}

inline CheckResult check_norm_monotonicity(const ExperimentConfig& cfg) {
  auto rng = stream(cfg, "scales.norm_monotonicity");
  double worst = 0.0;
  for (auto nu : {WeightSequence::sobolev_half(),
                  WeightSequence::sobolev_double()}) {
    for (int trial = 0; trial < 10; ++trial) {
      BandVector x = random_band_vector(rng, cfg.band);
      for (int r = -4; r < 4; ++r) {
        double lo = level_norm(x, nu, r);
        double hi = level_norm(x, nu, r + 1);
        worst = std::max(worst, (lo - hi) / hi);
      }
    }
  }
  return {"scales.norm_monotonicity", worst <= 1e-15, worst, 1e-15, 0.0};
}

// ---- multipliers -----------------------------------------------------

inline CheckResult check_adjoint_relation(const ExperimentConfig& cfg) {
  double worst = 0.0;
  int reach = std::min(cfg.band, 12);
  for (const auto& m : builtin_operators()) {
    auto adj = symplectic_adjoint(m);
    for (int j = -reach; j <= reach; ++j)
      for (int k = -reach; k <= reach; ++k)
        for (Complex c : {Complex{1.0, 0.0}, Complex{0.0, 1.0}}) {
          BandVector v = BandVector::delta(j, reach);
          BandVector w = c * BandVector::delta(k, reach);
          double lhs = omega(apply(m, v), w);
          double rhs = omega(v, apply(adj, w));
          worst = std::max(worst, std::abs(lhs - rhs));
        }
  }
  return {"multipliers.adjoint_relation", worst <= 1e-13, worst, 1e-13, 0.0};
}

inline CheckResult check_boundedness(const ExperimentConfig& cfg) {
  auto rng = stream(cfg, "multipliers.boundedness");
  WeightSequence nu = WeightSequence::sobolev_double();
  double worst = -1.0;
  for (const auto& m : builtin_operators()) {
    for (int trial = 0; trial < 5; ++trial) {
      BandVector x = random_band_vector(rng, cfg.band);
      for (int s = 0; s <= 2; ++s)
        for (int r = s - 2; r <= s; ++r) {
          double lhs = level_norm(apply(m, x), nu, r);
          double rhs =
              operator_norm(m, nu, s, r, cfg.band) * level_norm(x, nu, s);
          worst = std::max(worst, lhs - rhs);
        }
    }
  }
  return {"multipliers.boundedness", worst <= 1e-12, worst, 1e-12, 0.0};
}

inline CheckResult check_propagator_group_law(const ExperimentConfig& cfg) {
  auto rng = stream(cfg, "multipliers.propagator_group_law");
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    double t = 4.0 * rng.next_uniform() - 2.0;
    double s = 4.0 * rng.next_uniform() - 2.0;
    BandVector x = random_band_vector(rng, cfg.band);
    BandVector two = apply(MultiplierOperator::propagator(t),
                           apply(MultiplierOperator::propagator(s), x));
    BandVector one = apply(MultiplierOperator::propagator(t + s), x);
    worst = std::max(worst,
                     max_abs_diff(two, one) / (1.0 + max_abs_coeff(x)));
  }
  return {"multipliers.propagator_group_law", worst <= 1e-12, worst, 1e-12,
          0.0};
}

inline CheckResult check_real_matrix_homomorphism(const ExperimentConfig& cfg) {
  int band = std::min(cfg.band, 8);
  double worst = 0.0;
  auto ops = builtin_operators();
  for (const auto& a : ops)
    for (const auto& b : ops) {
      Eigen::MatrixXd lhs = real_matrix(compose(a, b), band);
      Eigen::MatrixXd rhs = real_matrix(a, band) * real_matrix(b, band);
      double scale = 1.0 + rhs.cwiseAbs().maxCoeff();
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff() / scale);
    }
  return {"multipliers.real_matrix_homomorphism", worst <= 1e-12, worst, 1e-12,
          0.0};
}

// ---- sc_check --------------------------------------------------------

inline CheckResult check_linearity_detector(const ExperimentConfig& cfg) {
  auto rng = stream(cfg, "sc_check.linearity_detector");
  WeightSequence nu = WeightSequence::sobolev_double();
  double worst = 0.0;
  for (const auto& m : builtin_operators()) {
    ScaleMap f{[m](const BandVector& x) { return apply(m, x); }, 1, m.label()};
    auto df = [m](const BandVector&, const BandVector& xi) {
      return apply(m, xi);
    };
    for (int level = 0; level <= 4; ++level) {
      BandVector x =
          0.5 * unit_at(random_band_vector(rng, cfg.band), nu, level + 1);
      BandVector xi = unit_at(random_band_vector(rng, cfg.band), nu, level + 1);
      ResidualTable t =
          sc1_residual_table(f, df, x, xi, nu, level, linear_ladder());
      worst = std::max(worst, t.max_residual());
    }
  }
  return {"sc_check.linearity_detector", worst <= 1e-12, worst, 1e-12, 0.0};
}

inline CheckResult check_quadratic_exactness(const ExperimentConfig& cfg) {
  auto rng = stream(cfg, "sc_check.quadratic_exactness");
  WeightSequence nu = WeightSequence::sobolev_double();
  auto h = schrodinger::hamiltonian_functional();
  auto dh_action = [](const BandVector& u, const BandVector& xi) {
    return schrodinger::dh(u).action(xi);
  };
  BandVector u = BandVector::delta(0, cfg.band);
  BandVector xi = random_band_vector(rng, cfg.band);
  ResidualTable t =
      sc1_residual_table(h, dh_action, u, xi, nu, 0, cfg.eps_ladder);
  double scale = schrodinger::hamiltonian(xi) / level_norm(xi, nu, 1);
  double worst = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    double expected = t.steps()[i] * scale;
    worst = std::max(worst, std::abs(t.residuals()[i] - expected) / expected);
  }
  bool pass = worst <= 1e-13;
  if (auto slope = t.slope())
    pass = pass && std::abs(*slope - 1.0) <= 0.01;
  else
    pass = t.size() < 4 && pass;
  return {"sc_check.quadratic_exactness", pass, worst, 1e-13, 0.0};
}

inline CheckResult check_unitary_symplecticity(const ExperimentConfig& cfg) {
  int band = std::min(cfg.band, 12);
  double worst = 0.0;
  for (double t : {0.1, 1.0, 10.0})
    for (double eps : {1e-3, 1e-5, 1e-7}) {
      ScaleMap f{[t](const BandVector& x) { return schrodinger::flow(t, x); },
                 0, "flow"};
      worst = std::max(worst, symplecticity_defect(f, BandVector(band), band, eps));
    }
  return {"sc_check.unitary_symplecticity", worst <= 1e-12, worst, 1e-12, 0.0};
}

inline CheckResult check_chain_rule_consistency(const ExperimentConfig& cfg) {
  auto rng = stream(cfg, "sc_check.chain_rule_consistency");
  auto h = schrodinger::hamiltonian_functional();
  auto dh = [](const BandVector& u) { return schrodinger::dh(u); };
  double worst = 0.0;

  int band = std::min(cfg.band, 8);
  BandVector x = 0.5 * random_band_vector(rng, band);
  ScaleMap id{[](const BandVector& u) { return u; }, 0, "id"};
  worst = std::max(worst, strong_chain_rule_check(h, dh, id, x, band, 1e-5).defect);
  for (double t : {0.3, 2.0}) {
    ScaleMap flow{[t](const BandVector& u) { return schrodinger::flow(t, u); },
                  0, "flow"};
    worst = std::max(worst,
                     strong_chain_rule_check(h, dh, flow, x, band, 1e-5).defect);
  }

  int cband = std::min(cfg.band, 6);
  auto ids = usable_charts(cfg);
  if (ids.size() >= 2) {
    int a = ids.front(), b = ids.back();
    projective::RayPoint p = probe_ray(cfg, rng, cband, {a, b});
    BandVector u = projective::darboux_chart(a, p);
    projective::ChartId ca{a, projective::ChartFlavor::darboux};
    projective::ChartId cb{b, projective::ChartFlavor::darboux};
    ScaleFunctional hb{[b](const BandVector& w) {
                         return projective::reduced_hamiltonian_chart(b, w);
                       },
                       1, "h_bar"};
    auto dhb = [b](const BandVector& w) {
      return projective::reduced_dh_chart(b, w);
    };
    ScaleMap trans{[ca, cb](const BandVector& w) {
                     return projective::transition(ca, cb, w);
                   },
                   0, "transition"};
    worst =
        std::max(worst, strong_chain_rule_check(hb, dhb, trans, u, cband, 1e-5).defect);
  }
  return {"sc_check.chain_rule_consistency", worst <= 1e-5, worst, 1e-5, 0.0};
}

inline CheckResult check_hierarchy_witness(const ExperimentConfig& cfg) {
  (void)cfg;
  WeightSequence nu = WeightSequence::sobolev_double();
  bool pass = true;
  double worst = 0.0;
  double prev = 0.0;
  for (int k = 1; k <= 64; ++k) {
    double amp = 1.0 / std::sqrt(static_cast<double>(k));
    BandVector u = amp * BandVector::delta(k);
    double energy = schrodinger::hamiltonian(u);
    pass = pass && energy >= 0.5 * k - 1e-9 && energy > prev;
    pass = pass && std::abs(level_norm(u, nu, 0) - amp) <= 1e-14 * amp;
    worst = std::max(worst, std::abs(energy - 0.5 * k) / (1.0 + 0.5 * k));
    prev = energy;
  }
  return {"sc_check.hierarchy_witness", pass && worst <= 1e-9, worst, 1e-9,
          0.0};
}

inline CheckResult check_layerwise_extension(const ExperimentConfig& cfg) {
  auto rng = stream(cfg, "sc_check.layerwise_extension");
  WeightSequence nu = WeightSequence::sobolev_double();
  double worst = 0.0;
  double t = 0.8;
  auto df = [t](const BandVector&, const BandVector& xi) {
    return schrodinger::flow(t, xi);
  };
  BandVector x = random_band_vector(rng, cfg.band);
  for (int m = 0; m <= 2; ++m)
    worst = std::max(
        worst, layerwise_extension_ratio(df, x, nu, m, rng, 10, cfg.band));
  return {"sc_check.layerwise_extension", worst <= 1.0 + 1e-12, worst,
          1.0 + 1e-12, 0.0};
}

// ---- schrodinger -----------------------------------------------------

inline CheckResult check_energy_conservation(const ExperimentConfig& cfg) {
  auto rng = stream(cfg, "schrodinger.energy_conservation");
  double worst = 0.0;
  for (double t : {0.1, 1.0, 10.0, 100.0}) {
    BandVector u = random_band_vector(rng, cfg.band);
    double before = schrodinger::hamiltonian(u);
    double after = schrodinger::hamiltonian(schrodinger::flow(t, u));
    worst = std::max(worst, std::abs(after - before) / (1.0 + before));
  }
  return {"schrodinger.energy_conservation", worst <= 1e-10, worst, 1e-10,
          0.0};
}

inline CheckResult check_norm_conservation(const ExperimentConfig& cfg) {
  auto rng = stream(cfg, "schrodinger.norm_conservation");
  WeightSequence nu = schrodinger::scale();
  double worst = 0.0;
  for (double t : {0.1, 1.0, 10.0, 100.0}) {
    BandVector u = random_band_vector(rng, cfg.band);
    for (int s = -2; s <= 3; ++s) {
      double before = level_norm(u, nu, s);
      double after = level_norm(schrodinger::flow(t, u), nu, s);
      worst = std::max(worst, std::abs(after - before) / before);
    }
  }
  return {"schrodinger.norm_conservation", worst <= 1e-12, worst, 1e-12, 0.0};
}

inline CheckResult check_omega_gradient(const ExperimentConfig& cfg) {
  auto rng = stream(cfg, "schrodinger.omega_gradient");
  WeightSequence nu = schrodinger::scale();
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    BandVector u = random_band_vector(rng, cfg.band);
    BandVector xi = random_band_vector(rng, cfg.band);
    double defect = std::abs(-schrodinger::dh(u).action(xi) -
                             omega(xi, schrodinger::vector_field(u)));
    double scale = 1.0 + level_norm(u, nu, 2) * level_norm(xi, nu, 0);
    worst = std::max(worst, defect / scale);
  }
  return {"schrodinger.omega_gradient", worst <= 1e-12, worst, 1e-12, 0.0};
}

inline CheckResult check_flow_residual_slope(const ExperimentConfig& cfg) {
  (void)cfg;
  BandVector u = BandVector::delta(1, 2) + BandVector::delta(2, 2);
  std::vector<double> steps = {1e-1, 1e-2, 1e-3, 1e-4};
  std::vector<double> residuals;
  for (double d : steps)
    residuals.push_back(schrodinger::flow_residual(0.3, d, u, 0));
  ResidualTable t(steps, residuals);
  double slope = t.slope().value_or(0.0);
  return {"schrodinger.flow_residual_slope", std::abs(slope - 2.0) <= 0.1,
          slope, 2.0, 0.0};
}

inline CheckResult check_flow_sc1(const ExperimentConfig& cfg) {
  auto rng = stream(cfg, "schrodinger.flow_sc1");
  WeightSequence nu = schrodinger::scale();
  double t = 0.5;
  ScaleMap f{[t](const BandVector& v) { return schrodinger::flow(t, v); }, 0,
             "flow"};
  auto df = [t](const BandVector&, const BandVector& xi) {
    return schrodinger::flow(t, xi);
  };
  double worst = 0.0;
  for (int level = 0; level <= 2; ++level) {
    BandVector x =
        0.5 * unit_at(random_band_vector(rng, cfg.band), nu, level + 1);
    BandVector xi = unit_at(random_band_vector(rng, cfg.band), nu, level + 1);
    ResidualTable table =
        sc1_residual_table(f, df, x, xi, nu, level, linear_ladder());
    worst = std::max(worst, table.max_residual());
  }
  return {"schrodinger.flow_sc1", worst <= 1e-12, worst, 1e-12, 0.0};
}

inline CheckResult check_flow_symplecticity(const ExperimentConfig& cfg) {
  int band = std::min(cfg.band, 12);
  double worst = 0.0;
  for (double t : {0.1, 1.0, 10.0}) {
    ScaleMap f{[t](const BandVector& v) { return schrodinger::flow(t, v); }, 0,
               "flow"};
    worst = std::max(worst,
                     symplecticity_defect(f, BandVector(band), band, 1e-5));
  }
  return {"schrodinger.flow_symplecticity", worst <= 1e-12, worst, 1e-12, 0.0};
}

inline CheckResult check_strong_dual_bound(const ExperimentConfig& cfg) {
  auto rng = stream(cfg, "schrodinger.strong_dual_bound");
  WeightSequence nu = schrodinger::scale();
  auto dh = [](const BandVector& u) { return schrodinger::dh(u); };
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    BandVector u = random_band_vector(rng, cfg.band);
    for (int m = 0; m <= 2; ++m) {
      double ratio =
          strong_dual_norm(dh, u, nu, m) / level_norm(u, nu, m + 1);
      worst = std::max(worst, ratio);
      worst = std::max(worst, dual_lipschitz_ratio(dh, u, nu, m, rng, 1e-3, 5));
    }
  }
  return {"schrodinger.strong_dual_bound", worst <= 1.0 + 1e-12, worst,
          1.0 + 1e-12, 0.0};
}

// ---- projective ------------------------------------------------------

inline CheckResult check_chart_roundtrip(const ExperimentConfig& cfg) {
  auto rng = stream(cfg, "projective.chart_roundtrip");
  auto ids = usable_charts(cfg);
  int band = std::min(cfg.band, 8);
  double worst = 0.0;
  for (int a : ids) {
    for (int trial = 0; trial < 5; ++trial) {
      projective::RayPoint p = probe_ray(cfg, rng, band, ids);
      projective::RayPoint via_affine =
          projective::affine_chart_inverse(a, projective::affine_chart(a, p));
      projective::RayPoint via_darboux = projective::darboux_chart_inverse(
          a, projective::darboux_chart(a, p));
      worst = std::max(worst, projective::ray_distance(p, via_affine));
      worst = std::max(worst, projective::ray_distance(p, via_darboux));
    }
  }
  return {"projective.chart_roundtrip", worst <= 1e-12, worst, 1e-12, 0.0};
}

inline CheckResult check_darboux_containment(const ExperimentConfig& cfg) {
  auto rng = stream(cfg, "projective.darboux_containment");
  auto ids = usable_charts(cfg);
  int band = std::min(cfg.band, 8);
  double worst = 0.0;
  bool inside = true;
  for (int a : ids) {
    for (int trial = 0; trial < 5; ++trial) {
      projective::RayPoint p = probe_ray(cfg, rng, band, ids);
      BandVector u = projective::darboux_chart(a, p);
      double u_sq = real_pairing(u, u);
      inside = inside && u_sq < 1.0;
      worst = std::max(worst, std::abs(u_sq + std::norm(p.rep.c(a)) - 1.0));
    }
  }
  return {"projective.darboux_containment", inside && worst <= 1e-12, worst,
          1e-12, 0.0};
}

inline CheckResult check_transition_symplecticity(const ExperimentConfig& cfg) {
  auto rng = stream(cfg, "projective.transition_symplecticity");
  auto ids = usable_charts(cfg);
  int band = std::min(cfg.band, 8);
  double worst = 0.0;
  projective::RayPoint p = probe_ray(cfg, rng, band, ids);
  for (int a : ids)
    for (int b : ids) {
      if (a == b) continue;
      projective::ChartId ca{a, projective::ChartFlavor::darboux};
      projective::ChartId cb{b, projective::ChartFlavor::darboux};
      BandVector u = projective::darboux_chart(a, p);
      ScaleMap f{[ca, cb](const BandVector& w) {
                   return projective::transition(ca, cb, w);
                 },
                 0, "transition"};
      worst = std::max(worst, symplecticity_defect(f, u, band, 1e-5));
    }
  return {"projective.transition_symplecticity", worst <= 1e-5, worst, 1e-5,
          0.0};
}

inline CheckResult check_reduced_equivariance(const ExperimentConfig& cfg) {
  auto rng = stream(cfg, "projective.reduced_equivariance");
  auto ids = usable_charts(cfg);
  int band = std::min(cfg.band, 8);
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    BandVector x = probe_ray(cfg, rng, band, ids).rep;
    Complex c = std::polar(0.5 + 1.5 * rng.next_uniform(),
                           2.0 * std::numbers::pi * rng.next_uniform());
    for (double t : {0.3, 2.0}) {
      projective::RayPoint a = projective::reduced_flow(t, projective::ray_of(c * x));
      projective::RayPoint b = projective::reduced_flow(t, projective::ray_of(x));
      worst = std::max(worst, projective::ray_distance(a, b));
    }
  }
  return {"projective.reduced_equivariance", worst <= 1e-12, worst, 1e-12, 0.0};
}

inline CheckResult check_chart_flow_consistency(const ExperimentConfig& cfg) {
  auto rng = stream(cfg, "projective.chart_flow_consistency");
  auto ids = usable_charts(cfg);
  int band = std::min(cfg.band, 8);
  double worst_phase = 0.0, worst_fd = 0.0;
  for (int a : ids) {
    projective::RayPoint p = probe_ray(cfg, rng, band, ids);
    BandVector u = projective::darboux_chart(a, p);
    auto chart_flow = [a](double t, const BandVector& w) {
      return projective::darboux_chart(
          a, projective::reduced_flow(t, projective::darboux_chart_inverse(a, w)));
    };
    for (double t : {0.2, 1.0}) {
      BandVector closed = apply(projective::chart_flow_multiplier(a, t), u);
      worst_phase = std::max(worst_phase, max_abs_diff(chart_flow(t, u), closed));
    }
    double delta = 1e-6;
    BandVector fd = (1.0 / (2.0 * delta)) *
                    (chart_flow(delta, u) - chart_flow(-delta, u));
    worst_fd =
        std::max(worst_fd, max_abs_diff(fd, projective::reduced_field_chart(a, u)));
  }
  bool pass = worst_phase <= 1e-12 && worst_fd <= 1e-6;
  return {"projective.chart_flow_consistency", pass,
          std::max(worst_phase, worst_fd), 1e-6, 0.0};
}

inline CheckResult check_reduced_omega_gradient(const ExperimentConfig& cfg) {
  auto rng = stream(cfg, "projective.reduced_omega_gradient");
  auto ids = usable_charts(cfg);
  double worst = 0.0;
  for (int a : ids) {
    for (int trial = 0; trial < 20; ++trial) {
      BandVector u = 0.5 * random_band_vector(rng, cfg.band);
      BandVector xi = random_band_vector(rng, cfg.band);
      double lhs = -projective::reduced_dh_chart(a, u).action(xi);
      double rhs = omega(xi, projective::reduced_field_chart(a, u));
      worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
    }
  }
  return {"projective.reduced_omega_gradient", worst <= 1e-12, worst, 1e-12,
          0.0};
}

inline CheckResult check_reduced_energy_conservation(const ExperimentConfig& cfg) {
  auto rng = stream(cfg, "projective.reduced_energy_conservation");
  auto ids = usable_charts(cfg);
  int band = std::min(cfg.band, 8);
  double worst = 0.0;
  projective::RayPoint p = probe_ray(cfg, rng, band, ids);
  for (double t : {0.5, 5.0, 50.0}) {
    double before = projective::reduced_hamiltonian(p);
    double after =
        projective::reduced_hamiltonian(projective::reduced_flow(t, p));
    worst = std::max(worst, std::abs(after - before) / (1.0 + before));
  }
  return {"projective.reduced_energy_conservation", worst <= 1e-10, worst,
          1e-10, 0.0};
}

inline CheckResult check_momentum_identification(const ExperimentConfig& cfg) {
  auto rng = stream(cfg, "projective.momentum_identification");
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    BandVector x = random_band_vector(rng, cfg.band);
    x = (1.0 / projective::norm0(x)) * x;
    worst = std::max(worst, std::abs(projective::momentum_map(x)));
    worst = std::max(worst, max_abs_diff(projective::ray_of(x).rep, x));
  }
  return {"projective.momentum_identification", worst <= 1e-13, worst, 1e-13,
          0.0};
}

inline std::vector<std::pair<const char*, CheckFn>> verify_checks() {
  return {
      {"scales.holder_bound", check_holder_bound},
      {"scales.dual_isometry", check_dual_isometry},
      {"scales.omega_compatibility", check_omega_compatibility},
      {"scales.tail_norm_exactness", check_tail_norm_exactness},
      {"scales.norm_monotonicity", check_norm_monotonicity},
      {"multipliers.adjoint_relation", check_adjoint_relation},
      {"multipliers.boundedness", check_boundedness},
      {"multipliers.propagator_group_law", check_propagator_group_law},
      {"multipliers.real_matrix_homomorphism", check_real_matrix_homomorphism},
      {"sc_check.linearity_detector", check_linearity_detector},
      {"sc_check.quadratic_exactness", check_quadratic_exactness},
      {"sc_check.unitary_symplecticity", check_unitary_symplecticity},
      {"sc_check.chain_rule_consistency", check_chain_rule_consistency},
      {"sc_check.hierarchy_witness", check_hierarchy_witness},
      {"sc_check.layerwise_extension", check_layerwise_extension},
      {"schrodinger.energy_conservation", check_energy_conservation},
      {"schrodinger.norm_conservation", check_norm_conservation},
      {"schrodinger.omega_gradient", check_omega_gradient},
      {"schrodinger.flow_residual_slope", check_flow_residual_slope},
      {"schrodinger.flow_sc1", check_flow_sc1},
      {"schrodinger.flow_symplecticity", check_flow_symplecticity},
      {"schrodinger.strong_dual_bound", check_strong_dual_bound},
      {"projective.chart_roundtrip", check_chart_roundtrip},
      {"projective.darboux_containment", check_darboux_containment},
      {"projective.transition_symplecticity", check_transition_symplecticity},
      {"projective.reduced_equivariance", check_reduced_equivariance},
      {"projective.chart_flow_consistency", check_chart_flow_consistency},
      {"projective.reduced_omega_gradient", check_reduced_omega_gradient},
      {"projective.reduced_energy_conservation",
       check_reduced_energy_conservation},
      {"projective.momentum_identification", check_momentum_identification},
  };
}

}  // namespace detail

/// Stable IDs of every invariant executed by the verify suite.
inline std::vector<std::string> verify_check_ids() {
  std::vector<std::string> ids;
  for (const auto& [id, fn] : detail::verify_checks()) ids.emplace_back(id);
  return ids;
}

/// Run the full invariant suite of every module at the configured band,
/// with seed-driven probes. Deterministic given (band, seed).
inline Report run_verify(const ExperimentConfig& cfg) {
  validate_config(cfg);
  Report report{"verify", cfg.band, cfg.seed, {}};
  for (const auto& [id, fn] : detail::verify_checks()) {
    auto t0 = std::chrono::steady_clock::now();
    CheckResult r = fn(cfg);
    auto t1 = std::chrono::steady_clock::now();
    r.runtime_ms =
        std::chrono::duration<double, std::milli>(t1 - t0).count();
    report.checks.push_back(std::move(r));
  }
  return report;
}

}  // namespace scalesym::harness
