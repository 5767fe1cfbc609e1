#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "belldiag/measures.hpp"
#include "belldiag/oracle.hpp"
#include "belldiag/sampling.hpp"

using namespace belldiag;

namespace {
constexpr double kH2_075 = 0.81127812445913286;
constexpr double kH2_095 = 0.28639695711595632;
}

TEST_CASE("measurement direction must be unit length") {
  CHECK_NOTHROW(MeasurementDirection(Vec3(0.0, 0.0, 1.0)));
  CHECK_THROWS_AS(MeasurementDirection(Vec3(0.0, 0.0, 1.1)), std::invalid_argument);
  CHECK_THROWS_AS(MeasurementDirection(Vec3::Zero()), std::invalid_argument);
}

TEST_CASE("conditional entropy at the reference points") {
  const MeasurementDirection ez(Vec3(0.0, 0.0, 1.0));
  const MeasurementDirection ex(Vec3(1.0, 0.0, 0.0));

  CHECK(conditional_entropy_for_direction({0.0, 0.0, 0.0}, ez) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(conditional_entropy_for_direction({0.0, 0.0, 0.0}, ex) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(conditional_entropy_for_direction({0.0, 0.0, 1.0}, ez)) <= 1e-12);
  // Analytic reduction: rho_B|+- = (I +- sum_j c_j n_j sigma_j)/2, so the
  // value is H2((1+|m|)/2) with m = (0.5, 0, 0); cross-check only.
  CHECK(conditional_entropy_for_direction({0.5, -0.2, 0.1}, ex) ==
        doctest::Approx(kH2_075).epsilon(1e-12));

  CHECK_THROWS_AS(conditional_entropy_for_direction({2.0, 0.0, 0.0}, ez), std::domain_error);
}

TEST_CASE("objective is even in the direction and outcomes are unbiased") {
  std::mt19937_64 rng(71);
  for (int i = 0; i < 50; ++i) {
    const CorrelationVector c = sample_uniform_physical(rng);
    const Vec3 n = sample_unit_direction(rng);
    const MeasurementDirection plus(n);
    const MeasurementDirection minus(Vec3(-n));
    CHECK(std::abs(conditional_entropy_for_direction(c, plus) -
                   conditional_entropy_for_direction(c, minus)) <= 1e-12);
    // Maximally mixed marginal: both outcome probabilities are 1/2.
    const ProjectiveOutcome outcome = projective_outcomes(c, plus);
    CHECK(std::abs(outcome.probability[0] - 0.5) <= 1e-12);
    CHECK(std::abs(outcome.probability[1] - 0.5) <= 1e-12);
  }
}

TEST_CASE("minimization at the reference points") {
  const OracleResult mixed = minimize_conditional_entropy({0.0, 0.0, 0.0});
  CHECK(mixed.min_entropy == doctest::Approx(1.0).epsilon(1e-12));

  const OracleResult axis = minimize_conditional_entropy({0.0, 0.0, 1.0});
  CHECK(std::abs(axis.min_entropy) <= 1e-9);
  CHECK(std::abs(std::abs(axis.argmin.n.z()) - 1.0) <= 1e-4);

  CHECK_THROWS_AS(minimize_conditional_entropy({2.0, 0.0, 0.0}), std::domain_error);
  CHECK_THROWS_AS(minimize_conditional_entropy({0.0, 0.0, 0.0}, 4), std::invalid_argument);
}

TEST_CASE("minimized entropy never exceeds any grid direction") {
  const CorrelationVector c{0.6, -0.2, 0.1};
  const OracleResult with_refine = minimize_conditional_entropy(c, 64, true);
  const OracleResult without = minimize_conditional_entropy(c, 64, false);
  CHECK(with_refine.min_entropy <= without.min_entropy + 1e-15);
  CHECK(with_refine.evaluations > without.evaluations);
}

TEST_CASE("minimization matches the closed form on random states") {
  std::mt19937_64 rng(73);
  for (int i = 0; i < 25; ++i) {
    const CorrelationVector c = sample_uniform_physical(rng);
    const double closed_form = binary_entropy((1.0 + c.max_abs()) / 2.0);
    const OracleResult oracle = minimize_conditional_entropy(c);
    CHECK(std::abs(oracle.min_entropy - closed_form) <= 1e-6);
  }
}

TEST_CASE("POVM scan reference points") {
  CHECK(povm_sanity_scan({0.0, 0.0, 0.0}, 50, 3, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(povm_sanity_scan({0.0, 0.0, 0.0}, 50, 4, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(povm_sanity_scan({0.0, 0.0, 1.0}, 1000, 3, 0) >= -1e-9);
  CHECK(povm_sanity_scan({0.9, -0.35, 0.3}, 1000, 4, 0) >= kH2_095 - 1e-9);

  CHECK_THROWS_AS(povm_sanity_scan({0.0, 0.0, 0.0}, 0, 3, 0), std::invalid_argument);
  CHECK_THROWS_AS(povm_sanity_scan({0.0, 0.0, 0.0}, 10, 5, 0), std::invalid_argument);
  CHECK_THROWS_AS(povm_sanity_scan({2.0, 0.0, 0.0}, 10, 3, 0), std::domain_error);
}

TEST_CASE("POVM scan never beats the projective optimum") {
  std::mt19937_64 rng(79);
  for (int i = 0; i < 10; ++i) {
    const CorrelationVector c = sample_uniform_physical(rng);
    const double projective = minimize_conditional_entropy(c).min_entropy;
    CHECK(povm_sanity_scan(c, 200, 3, 1000 + i) >= projective - 1e-9);
    CHECK(povm_sanity_scan(c, 200, 4, 2000 + i) >= projective - 1e-9);
  }
}

TEST_CASE("von Neumann entropy of reference matrices") {
  CHECK(von_neumann_entropy(Mat4c::Identity() / 4.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(von_neumann_entropy(density_matrix({1.0, -1.0, 1.0}))) <= 1e-12);
}
