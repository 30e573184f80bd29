#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <numbers>

#include "scalesym/pairings.hpp"
#include "scalesym/rng.hpp"
#include "scalesym/sc_check.hpp"
#include "scalesym/schrodinger.hpp"
#include "scalesym/weights.hpp"

using namespace scalesym;
namespace schro = scalesym::schrodinger;

TEST_CASE("hamiltonian is the Parseval form of half the H1 seminorm") {
  REQUIRE(schro::hamiltonian(BandVector(3)) == 0.0);
  REQUIRE(schro::hamiltonian(BandVector::delta(1)) == 0.5);
  REQUIRE(schro::hamiltonian(3.0 * BandVector::delta(2)) == 18.0);
}

TEST_CASE("dh returns -u_xx as a covector") {
  REQUIRE(schro::dh(BandVector(2)).rep.is_zero());

  BandVector d1 = BandVector::delta(1);
  REQUIRE(schro::dh(d1).action(d1) == 1.0);

  REQUIRE(max_abs_diff(schro::dh(BandVector::delta(2)).rep,
                       4.0 * BandVector::delta(2)) == 0.0);

  SECTION("action is the derivative pairing <u_x, xi_x>") {
    SplitMix64 rng(3);
    BandVector u = random_band_vector(rng, 8);
    BandVector xi = random_band_vector(rng, 8);
    auto dx = MultiplierOperator::derivative();
    double via_parts = real_pairing(apply(dx, u), apply(dx, xi));
    REQUIRE(schro::dh(u).action(xi) ==
            Catch::Approx(via_parts).margin(1e-12));
  }
}

TEST_CASE("vector field is i*laplacian") {
  REQUIRE(schro::vector_field(BandVector(2)).is_zero());
  REQUIRE(max_abs_diff(schro::vector_field(BandVector::delta(1)),
                       Complex{0.0, -1.0} * BandVector::delta(1)) == 0.0);

  SECTION("hand-checked omega-gradient relation on delta_1") {
    BandVector d1 = BandVector::delta(1);
    for (const BandVector& xi : {d1, times_i(d1)}) {
      double lhs = -schro::dh(d1).action(xi);
      double rhs = omega(xi, schro::vector_field(d1));
      REQUIRE(lhs == rhs);
    }
  }

  SECTION("omega-gradient identity on random data") {
    SplitMix64 rng(5);
    WeightSequence nu = schro::scale();
    for (int trial = 0; trial < 100; ++trial) {
      BandVector u = random_band_vector(rng, 16);
      BandVector xi = random_band_vector(rng, 16);
      double defect =
          std::abs(-schro::dh(u).action(xi) - omega(xi, schro::vector_field(u)));
      double scale = 1.0 + level_norm(u, nu, 2) * level_norm(xi, nu, 0);
      REQUIRE(defect <= 1e-12 * scale);
    }
  }
}

TEST_CASE("flow is the exact phase rotation") {
  SplitMix64 rng(7);
  BandVector u = random_band_vector(rng, 8);
  REQUIRE(max_abs_diff(schro::flow(0.0, u), u) == 0.0);

  BandVector d1 = BandVector::delta(1);
  REQUIRE(max_abs_diff(schro::flow(std::numbers::pi, d1), -d1) <= 1e-15);

  BandVector d0 = BandVector::delta(0);
  for (double t : {0.3, 4.0, -11.0})
    REQUIRE(max_abs_diff(schro::flow(t, d0), d0) == 0.0);

  SECTION("energy conservation") {
    for (double t : {0.1, 1.0, 10.0, 100.0}) {
      BandVector v = random_band_vector(rng, 32);
      double before = schro::hamiltonian(v);
      double after = schro::hamiltonian(schro::flow(t, v));
      REQUIRE(std::abs(after - before) <= 1e-10 * (1.0 + before));
    }
  }

  SECTION("norm conservation at every level") {
    WeightSequence nu = schro::scale();
    for (double t : {0.1, 1.0, 10.0, 100.0}) {
      BandVector v = random_band_vector(rng, 16);
      for (int s = -2; s <= 3; ++s) {
        double before = level_norm(v, nu, s);
        double after = level_norm(schro::flow(t, v), nu, s);
        REQUIRE(std::abs(after - before) <= 1e-12 * before);
      }
    }
  }
}

TEST_CASE("flow residual quantifies the flow equation") {
  WeightSequence nu = schro::scale();
  REQUIRE(schro::flow_residual(0.7, 1e-3, BandVector(2), 0) == 0.0);

  SECTION("single mode: residual is |sinc(delta) - 1| times the level weight") {
    BandVector d1 = BandVector::delta(1);
    for (double t : {0.0, 0.4, 2.0}) {
      for (double delta : {1e-1, 1e-2, 1e-3}) {
        // the oracle subtraction itself cancels to ~delta^2/6, so the
        // comparison is only clean to ~1e-16/expected relative
        double expected = std::abs(std::sin(delta) / delta - 1.0);
        REQUIRE(schro::flow_residual(t, delta, d1, 0) ==
                Catch::Approx(expected).epsilon(1e-6));
      }
    }
  }

  SECTION("slope two in the step ladder") {
    BandVector u = BandVector::delta(1, 2) + BandVector::delta(2, 2);
    std::vector<double> steps = {1e-1, 1e-2, 1e-3, 1e-4};
    std::vector<double> residuals;
    for (double d : steps)
      residuals.push_back(schro::flow_residual(0.3, d, u, 0));
    ResidualTable table(steps, residuals);
    REQUIRE(*table.slope() == Catch::Approx(2.0).margin(0.1));
  }
}

TEST_CASE("flow tangent implements the layered derivative formula") {
  SplitMix64 rng(11);
  BandVector u = random_band_vector(rng, 6);
  BandVector xi = random_band_vector(rng, 6);

  REQUIRE(schro::flow_tangent(0.9, u, 0.0, BandVector(6)).is_zero());
  REQUIRE(max_abs_diff(schro::flow_tangent(0.0, BandVector::delta(1), 1.0,
                                           BandVector(1)),
                       Complex{0.0, -1.0} * BandVector::delta(1)) == 0.0);
  REQUIRE(max_abs_diff(schro::flow_tangent(0.6, u, 0.0, xi),
                       schro::flow(0.6, xi)) == 0.0);

  SECTION("certified against joint central differences in (t, u)") {
    double t = 0.8, eps = 1e-5;
    double h_dir = 0.7;
    BandVector joint_fd =
        (1.0 / (2.0 * eps)) * (schro::flow(t + eps * h_dir, u + eps * xi) -
                               schro::flow(t - eps * h_dir, u - eps * xi));
    BandVector tangent = schro::flow_tangent(t, u, h_dir, xi);
    // truncation is eps^2 h^3 n^6 / 6 at band 6, about 3e-7
    REQUIRE(max_abs_diff(joint_fd, tangent) <= 2e-6);
  }
}

TEST_CASE("flow is sc1 in u with derivative xi -> flow(t, xi)") {
  WeightSequence nu = schro::scale();
  SplitMix64 rng(13);
  double t = 0.5;
  ScaleMap f{[t](const BandVector& v) { return schro::flow(t, v); }, 0,
             "flow"};
  auto df = [t](const BandVector&, const BandVector& xi) {
    return schro::flow(t, xi);
  };
  std::vector<double> ladder = {1e-1, 3.162277660168379e-2, 1e-2,
                                3.162277660168379e-3};
  for (int level = 0; level <= 2; ++level) {
    BandVector x = random_band_vector(rng, 8);
    BandVector xi = random_band_vector(rng, 8);
    x = (0.5 / level_norm(x, nu, level + 1)) * x;
    xi = (1.0 / level_norm(xi, nu, level + 1)) * xi;
    ResidualTable table = sc1_residual_table(f, df, x, xi, nu, level, ladder);
    REQUIRE(table.all_below(1e-12));
  }
}

TEST_CASE("flow is symplectic") {
  for (double t : {0.1, 1.0, 10.0}) {
    ScaleMap f{[t](const BandVector& v) { return schro::flow(t, v); }, 0,
               "flow"};
    REQUIRE(symplecticity_defect(f, BandVector(8), 8, 1e-5) <= 1e-12);
  }
}

TEST_CASE("strong derivative bound: ||dh(u)||_m <= ||u||_{m+1}") {
  WeightSequence nu = schro::scale();
  SplitMix64 rng(17);
  auto dh = [](const BandVector& u) { return schro::dh(u); };
  for (int trial = 0; trial < 10; ++trial) {
    BandVector u = random_band_vector(rng, 12);
    for (int m = 0; m <= 2; ++m)
      REQUIRE(strong_dual_norm(dh, u, nu, m) <=
              level_norm(u, nu, m + 1) * (1.0 + 1e-13));
  }
}
