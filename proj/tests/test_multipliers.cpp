#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <numbers>

#include "json.hpp"
#include "scalesym/io.hpp"
#include "scalesym/multipliers.hpp"
#include "scalesym/pairings.hpp"
#include "scalesym/real_coords.hpp"
#include "scalesym/rng.hpp"
#include "scalesym/weights.hpp"

using namespace scalesym;

TEST_CASE("apply is the diagonal action") {
  BandVector d2 = BandVector::delta(2);
  REQUIRE(max_abs_diff(apply(MultiplierOperator::laplacian(), d2),
                       -4.0 * d2) == 0.0);

  SplitMix64 rng(3);
  BandVector x = random_band_vector(rng, 10);
  REQUIRE(max_abs_diff(apply(MultiplierOperator::propagator(0.0), x), x) ==
          0.0);

  BandVector d1 = BandVector::delta(1);
  REQUIRE(max_abs_diff(apply(MultiplierOperator::i_laplacian(), d1),
                       Complex{0.0, -1.0} * d1) == 0.0);

  SECTION("table-backed multipliers reject larger bands") {
    auto m = MultiplierOperator::from_table(
        "tbl", {{1, 0}, {2, 0}, {3, 0}, {4, 0}, {5, 0}});
    REQUIRE(max_abs_diff(apply(m, BandVector::delta(2)),
                         5.0 * BandVector::delta(2)) == 0.0);
    REQUIRE_THROWS_AS(apply(m, BandVector::delta(3)), std::out_of_range);
  }
}

TEST_CASE("sigma coefficients follow the two-branch formula") {
  auto s0 = MultiplierOperator::sigma(0);
  REQUIRE(s0.coeff(0) == Complex{-1.0, 0.0});
  for (int n = -64; n < 0; ++n)
    REQUIRE(s0.coeff(n) == Complex{-static_cast<double>(n) * n, 0.0});
  for (int n = 0; n <= 64; ++n)
    REQUIRE(s0.coeff(n) ==
            Complex{-static_cast<double>(n + 1) * (n + 1), 0.0});

  auto s1 = MultiplierOperator::sigma(1);
  REQUIRE(s1.coeff(0) == Complex{1.0, 0.0});  // branch n < a: 1 - 0
  REQUIRE(s1.coeff(1) == Complex{-3.0, 0.0});  // branch n >= a: 1 - 4
}

TEST_CASE("propagator phases") {
  auto id = MultiplierOperator::propagator(0.0);
  for (int n = -8; n <= 8; ++n) REQUIRE(id.coeff(n) == Complex{1.0, 0.0});

  auto period = MultiplierOperator::propagator(2.0 * std::numbers::pi);
  for (int n = -8; n <= 8; ++n)
    REQUIRE(std::abs(period.coeff(n) - Complex{1.0, 0.0}) <= 1e-12);

  REQUIRE(std::abs(MultiplierOperator::propagator(std::numbers::pi).coeff(1) -
                   Complex{-1.0, 0.0}) <= 1e-15);

  SECTION("group law") {
    SplitMix64 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
      double t = 4.0 * rng.next_uniform() - 2.0;
      double s = 4.0 * rng.next_uniform() - 2.0;
      BandVector x = random_band_vector(rng, 16);
      BandVector two_step =
          apply(MultiplierOperator::propagator(t),
                apply(MultiplierOperator::propagator(s), x));
      BandVector one_step = apply(MultiplierOperator::propagator(t + s), x);
      REQUIRE(max_abs_diff(two_step, one_step) <=
              1e-12 * (1.0 + max_abs_coeff(x)));
    }
  }
}

TEST_CASE("operator norms at a probe band") {
  WeightSequence dbl = WeightSequence::sobolev_double();
  double expected = 64.0 * 64.0 / (1.0 + 64.0 * 64.0);
  REQUIRE(operator_norm(MultiplierOperator::laplacian(), dbl, 1, 0, 64) ==
          Catch::Approx(expected).epsilon(1e-15));

  for (auto nu : {WeightSequence::sobolev_half(), dbl}) {
    for (int s = -2; s <= 2; ++s) {
      REQUIRE(operator_norm(MultiplierOperator::identity(), nu, s, s, 16) ==
              1.0);
      REQUIRE(operator_norm(MultiplierOperator::propagator(1.3), nu, s, s, 16) ==
              Catch::Approx(1.0).epsilon(1e-15));
    }
  }

  SECTION("application is bounded by the band norm estimate") {
    SplitMix64 rng(19);
    auto ops = {MultiplierOperator::derivative(),
                MultiplierOperator::laplacian(),
                MultiplierOperator::propagator(0.7),
                MultiplierOperator::sigma(1)};
    for (const auto& m : ops) {
      for (int trial = 0; trial < 5; ++trial) {
        BandVector x = random_band_vector(rng, 12);
        for (int s = 0; s <= 2; ++s)
          for (int r = s - 2; r <= s; ++r) {
            double lhs = level_norm(apply(m, x), dbl, r);
            double rhs =
                operator_norm(m, dbl, s, r, 12) * level_norm(x, dbl, s);
            REQUIRE(lhs <= rhs + 1e-12);
          }
      }
    }
  }
}

TEST_CASE("symplectic adjoint of a diagonal operator conjugates") {
  auto i_delta = MultiplierOperator::i_laplacian();
  auto adj = symplectic_adjoint(i_delta);
  for (int n = -6; n <= 6; ++n)
    REQUIRE(adj.coeff(n) == Complex{0.0, static_cast<double>(n) * n});

  auto sig = MultiplierOperator::sigma(2);
  auto sig_adj = symplectic_adjoint(sig);
  for (int n = -6; n <= 6; ++n) REQUIRE(sig_adj.coeff(n) == sig.coeff(n));

  auto prop_adj = symplectic_adjoint(MultiplierOperator::propagator(0.8));
  auto prop_neg = MultiplierOperator::propagator(-0.8);
  for (int n = -6; n <= 6; ++n)
    REQUIRE(std::abs(prop_adj.coeff(n) - prop_neg.coeff(n)) == 0.0);

  SECTION("defining relation omega(Mv, w) = omega(v, M^w w) on basis pairs") {
    auto ops = {MultiplierOperator::derivative(),
                MultiplierOperator::laplacian(),
                MultiplierOperator::i_laplacian(),
                MultiplierOperator::propagator(0.7),
                MultiplierOperator::sigma(0)};
    for (const auto& m : ops) {
      auto m_adj = symplectic_adjoint(m);
      for (int j = -6; j <= 6; ++j)
        for (int k = -6; k <= 6; ++k)
          for (Complex c : {Complex{1.0, 0.0}, Complex{0.0, 1.0}}) {
            BandVector v = BandVector::delta(j, 6);
            BandVector w = c * BandVector::delta(k, 6);
            double lhs = omega(apply(m, v), w);
            double rhs = omega(v, apply(m_adj, w));
            REQUIRE(std::abs(lhs - rhs) <= 1e-13);
          }
    }
  }
}

TEST_CASE("real coordinate realization") {
  Eigen::MatrixXd id = real_matrix(MultiplierOperator::identity(), 2);
  REQUIRE((id - Eigen::MatrixXd::Identity(10, 10)).cwiseAbs().maxCoeff() ==
          0.0);

  MultiplierOperator all_i{"i", [](int) { return Complex{0.0, 1.0}; }};
  Eigen::MatrixXd mi = real_matrix(all_i, 1);
  for (int b = 0; b < 3; ++b) {
    REQUIRE(mi(2 * b, 2 * b) == 0.0);
    REQUIRE(mi(2 * b, 2 * b + 1) == -1.0);
    REQUIRE(mi(2 * b + 1, 2 * b) == 1.0);
    REQUIRE(mi(2 * b + 1, 2 * b + 1) == 0.0);
  }

  Eigen::MatrixXd lap = real_matrix(MultiplierOperator::laplacian(), 1);
  REQUIRE(lap(4, 4) == -1.0);
  REQUIRE(lap(5, 5) == -1.0);
  REQUIRE(lap(4, 5) == 0.0);

  SECTION("omega matrix is the Gram matrix of the form") {
    int band = 2;
    Eigen::MatrixXd om = omega_matrix(band);
    SplitMix64 rng(23);
    BandVector x = random_band_vector(rng, band);
    BandVector y = random_band_vector(rng, band);
    double via_matrix =
        to_real(x, band).transpose() * om * to_real(y, band);
    REQUIRE(via_matrix == Catch::Approx(omega(x, y)).margin(1e-13));
  }

  SECTION("composition maps to the matrix product") {
    auto ops = {MultiplierOperator::derivative(),
                MultiplierOperator::laplacian(),
                MultiplierOperator::propagator(0.9),
                MultiplierOperator::sigma(1)};
    for (const auto& a : ops)
      for (const auto& b : ops) {
        Eigen::MatrixXd lhs = real_matrix(compose(a, b), 6);
        Eigen::MatrixXd rhs = real_matrix(a, 6) * real_matrix(b, 6);
        double scale = 1.0 + rhs.cwiseAbs().maxCoeff();
        REQUIRE((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12 * scale);
      }
  }
}

TEST_CASE("multiplier JSON table round trip") {
  auto m = MultiplierOperator::sigma(1);
  nlohmann::json j = io::to_json(m, 4);
  auto back = io::multiplier_from_json(j);
  for (int n = -4; n <= 4; ++n) REQUIRE(back.coeff(n) == m.coeff(n));
  REQUIRE(back.max_band() == 4);

  nlohmann::json bad = j;
  bad["n"] = {0, 1, 2};
  REQUIRE_THROWS_AS(io::multiplier_from_json(bad), std::invalid_argument);
}
