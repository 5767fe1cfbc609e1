#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "belldiag/sampling.hpp"
#include "belldiag/state.hpp"
#include "test_helpers.hpp"

using namespace belldiag;

namespace {

// Independent realization of (I + sum_j c_j sigma_j (x) sigma_j)/4 from
// explicit Pauli tensor products; used to cross-check density_matrix and
// partial transposition without sharing its arithmetic.
Mat4c bloch_matrix(const CorrelationVector& c) {
  using Mat2c = Eigen::Matrix2cd;
  const std::complex<double> im(0.0, 1.0);
  Mat2c sx, sy, sz;
  sx << 0, 1, 1, 0;
  sy << 0, -im, im, 0;
  sz << 1, 0, 0, -1;
  const Mat2c paulis[3] = {sx, sy, sz};
  Mat4c rho = Mat4c::Identity();
  for (int j = 0; j < 3; ++j) {
    Mat4c kron;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        kron.block<2, 2>(2 * a, 2 * b) = paulis[j](a, b) * paulis[j];
    rho += c[j] * kron;
  }
  return rho / 4.0;
}

Mat4c partial_transpose_b(const Mat4c& rho) {
  Mat4c pt;
  for (int a = 0; a < 2; ++a)
    for (int i = 0; i < 2; ++i)
      for (int b = 0; b < 2; ++b)
        for (int j = 0; j < 2; ++j)
          pt(2 * a + i, 2 * b + j) = rho(2 * a + j, 2 * b + i);
  return pt;
}

std::array<double, 4> sorted_lambdas(const CorrelationVector& c) {
  auto l = spectrum(c).lambda;
  std::sort(l.begin(), l.end());
  return l;
}

}  // namespace

TEST_CASE("spectrum at the reference points") {
  const BellSpectrum vertex = spectrum({1.0, -1.0, 1.0});
  CHECK(vertex(0, 0) == 1.0);
  CHECK(vertex(0, 1) == 0.0);
  CHECK(vertex(1, 0) == 0.0);
  CHECK(vertex(1, 1) == 0.0);

  const BellSpectrum center = spectrum({0.0, 0.0, 0.0});
  for (double l : center.lambda) CHECK(l == 0.25);

  const BellSpectrum s = spectrum({1.0, -0.3, 0.3});
  CHECK(s(0, 0) == doctest::Approx(0.65).epsilon(1e-15));
  CHECK(s(0, 1) == doctest::Approx(0.35).epsilon(1e-15));
  CHECK(std::abs(s(1, 0)) <= 1e-15);
  CHECK(std::abs(s(1, 1)) <= 1e-15);
}

TEST_CASE("spectrum sums to one for arbitrary input") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> cube(-1.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const CorrelationVector c{cube(rng), cube(rng), cube(rng)};
    CHECK(std::abs(spectrum(c).sum() - 1.0) <= 5e-15);
  }
}

TEST_CASE("correlation_from_spectrum inverts the affine map") {
  CHECK(correlation_from_spectrum({{1.0, 0.0, 0.0, 0.0}}).c1 == 1.0);
  CHECK(correlation_from_spectrum({{1.0, 0.0, 0.0, 0.0}}).c2 == -1.0);
  CHECK(correlation_from_spectrum({{1.0, 0.0, 0.0, 0.0}}).c3 == 1.0);

  const CorrelationVector center = correlation_from_spectrum({{0.25, 0.25, 0.25, 0.25}});
  CHECK(center.c1 == 0.0);
  CHECK(center.c2 == 0.0);
  CHECK(center.c3 == 0.0);

  const CorrelationVector c = correlation_from_spectrum({{0.65, 0.35, 0.0, 0.0}});
  CHECK(c.c1 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(c.c2 == doctest::Approx(-0.3).epsilon(1e-14));
  CHECK(c.c3 == doctest::Approx(0.3).epsilon(1e-14));

  CHECK_THROWS_AS(correlation_from_spectrum({{0.5, 0.5, 0.5, 0.5}}), std::invalid_argument);
}

TEST_CASE("round trip through the spectrum is the identity") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> cube(-1.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const CorrelationVector c{cube(rng), cube(rng), cube(rng)};
    const CorrelationVector back = correlation_from_spectrum(spectrum(c));
    CHECK(std::abs(back.c1 - c.c1) <= 1e-14);
    CHECK(std::abs(back.c2 - c.c2) <= 1e-14);
    CHECK(std::abs(back.c3 - c.c3) <= 1e-14);
  }
}

TEST_CASE("physicality tests") {
  CHECK(is_physical({1.0, -1.0, 1.0}, 0.0));
  CHECK_FALSE(is_physical({1.0, 1.0, 1.0}, 0.0));
  // lambda_11 = (1 - c1 - c2 + |c3|)/4 is the binding eigenvalue here.
  CHECK(is_physical({0.5, 0.5, -0.5}, 0.0));
  CHECK_FALSE(is_physical({0.5, 0.5, 0.5}, 0.0));
  CHECK_THROWS_AS(is_physical({0.0, 0.0, 0.0}, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(require_physical({2.0, 0.0, 0.0}), std::domain_error);
}

TEST_CASE("separability matches the octahedron") {
  CHECK(is_separable({1.0, 0.0, 0.0}));
  CHECK_FALSE(is_separable({1.0, -1.0, 1.0}));
  CHECK(is_separable({0.4, -0.3, 0.2}));
  CHECK_THROWS_AS(is_separable({1.5, 0.0, 0.0}), std::domain_error);
}

TEST_CASE("octahedron condition is equivalent to max eigenvalue 1/2") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 2000; ++i) {
    const CorrelationVector c = sample_uniform_physical(rng);
    if (std::abs(c.one_norm() - 1.0) < 1e-9) continue;  // exclude the shared boundary
    CHECK((c.one_norm() <= 1.0) == (spectrum(c).max() <= 0.5));
  }
}

TEST_CASE("classification at the reference points") {
  const StateClass axis = classify({0.0, 0.0, 0.7});
  CHECK(axis.physical);
  CHECK(axis.separable);
  CHECK(axis.classical);
  CHECK(axis.dominant_vertex == BellLabel{0, 0});  // tie with (1,0), lexicographic

  const StateClass edge = classify({1.0, -0.3, 0.3});
  CHECK(edge.physical);
  CHECK_FALSE(edge.separable);
  CHECK_FALSE(edge.classical);
  CHECK(edge.dominant_vertex == BellLabel{0, 0});

  const StateClass plane = classify({0.5, 0.5, 0.0});
  CHECK(plane.physical);
  CHECK(plane.separable);
  CHECK_FALSE(plane.classical);

  CHECK_FALSE(classify({2.0, 0.0, 0.0}).physical);
}

TEST_CASE("classification flags are invariant under the tetrahedron group") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    const CorrelationVector c = sample_uniform_physical(rng);
    const StateClass ref = classify(c);
    CHECK(ref.physical);
    if (ref.classical) CHECK(ref.separable);
    if (ref.separable) CHECK(ref.physical);
    for (const CorrelationVector& g : testutil::group_orbit(c)) {
      const StateClass img = classify(g);
      CHECK(img.physical == ref.physical);
      CHECK(img.separable == ref.separable);
      CHECK(img.classical == ref.classical);
    }
  }
}

TEST_CASE("density matrix at the reference points") {
  const Mat4c center = density_matrix({0.0, 0.0, 0.0});
  CHECK((center - Mat4c::Identity() / 4.0).cwiseAbs().maxCoeff() <= 1e-15);

  Mat4c bell = Mat4c::Zero();
  bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
  CHECK((density_matrix({1.0, -1.0, 1.0}) - bell).cwiseAbs().maxCoeff() <= 1e-15);

  const Mat4c axis = density_matrix({0.0, 0.0, 1.0});
  Mat4c expected = Mat4c::Zero();
  expected(0, 0) = expected(3, 3) = 0.5;
  CHECK((axis - expected).cwiseAbs().maxCoeff() <= 1e-15);

  CHECK_THROWS_AS(density_matrix({1.0, 1.0, 1.0}), std::domain_error);
}

TEST_CASE("density matrix properties on random physical states") {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 200; ++i) {
    const CorrelationVector c = sample_uniform_physical(rng);
    const Mat4c rho = density_matrix(c);
    CHECK((rho - rho.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(std::abs(rho.trace().real() - 1.0) <= 1e-12);
    CHECK((rho - bloch_matrix(c)).cwiseAbs().maxCoeff() <= 1e-14);

    Eigen::SelfAdjointEigenSolver<Mat4c> solver(rho, Eigen::EigenvaluesOnly);
    auto eigs = solver.eigenvalues();
    std::array<double, 4> got{eigs(0), eigs(1), eigs(2), eigs(3)};
    std::sort(got.begin(), got.end());
    const auto want = sorted_lambdas(c);
    for (int q = 0; q < 4; ++q) {
      CHECK(std::abs(got[q] - want[q]) <= 1e-12);
      CHECK(got[q] >= -1e-12);
    }
  }
}

TEST_CASE("partial transposition flips the sign of c2") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 200; ++i) {
    const CorrelationVector c = sample_uniform_physical(rng);
    const Mat4c pt = partial_transpose_b(density_matrix(c));
    const Mat4c mirrored = bloch_matrix({c.c1, -c.c2, c.c3});
    CHECK((pt - mirrored).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("spectrum multiset is invariant under the tetrahedron group") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> cube(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const CorrelationVector c{cube(rng), cube(rng), cube(rng)};
    const auto ref = sorted_lambdas(c);
    for (const CorrelationVector& g : testutil::group_orbit(c)) {
      const auto img = sorted_lambdas(g);
      for (int q = 0; q < 4; ++q) CHECK(std::abs(img[q] - ref[q]) <= 1e-15);
    }
  }
}

TEST_CASE("bell_diagonalize on already-diagonal input") {
  Mat3 t = Vec3(0.5, -0.3, 0.1).asDiagonal();
  const BellDiagonalization d = bell_diagonalize(t);
  const Mat3 rebuilt = d.rotation_a * Mat3(d.c.vec().asDiagonal()) * d.rotation_b.transpose();
  CHECK((rebuilt - t).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK(d.rotation_a.determinant() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(d.rotation_b.determinant() == doctest::Approx(1.0).epsilon(1e-12));

  const BellDiagonalization zero = bell_diagonalize(Mat3::Zero());
  CHECK(zero.c.vec().norm() == 0.0);
  CHECK(zero.rotation_a.determinant() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("bell_diagonalize round trip on rotated diagonals") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const Mat3 ra = testutil::random_rotation(rng);
    const Mat3 rb = testutil::random_rotation(rng);
    const Vec3 diag(entry(rng), entry(rng), entry(rng));
    Mat3 t = ra * Mat3(diag.asDiagonal()) * rb.transpose();
    t = t.cwiseMax(-1.0).cwiseMin(1.0);

    const BellDiagonalization d = bell_diagonalize(t);
    const Mat3 rebuilt = d.rotation_a * Mat3(d.c.vec().asDiagonal()) * d.rotation_b.transpose();
    CHECK((rebuilt - t).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(std::abs(d.rotation_a.determinant() - 1.0) <= 1e-12);
    CHECK(std::abs(d.rotation_b.determinant() - 1.0) <= 1e-12);
    // Magnitudes descending, signs absorbed into the last component.
    CHECK(std::abs(d.c.c1) >= std::abs(d.c.c2));
    CHECK(std::abs(d.c.c2) >= std::abs(d.c.c3));

    // Recovered magnitudes match the input singular values.
    Vec3 got(std::abs(d.c.c1), std::abs(d.c.c2), std::abs(d.c.c3));
    Vec3 want = diag.cwiseAbs();
    std::sort(want.data(), want.data() + 3, std::greater<double>());
    CHECK((got - want).cwiseAbs().maxCoeff() <= 1e-10);
    // det(T) = c1*c2*c3 pins the product of signs.
    CHECK(d.c.c1 * d.c.c2 * d.c.c3 == doctest::Approx(t.determinant()).epsilon(1e-9));
  }
}

TEST_CASE("bell_diagonalize recovers a known factor set") {
  std::mt19937_64 rng(37);
  const Mat3 r = testutil::random_rotation(rng);
  const Mat3 t = r * Mat3(Vec3(0.8, 0.2, 0.1).asDiagonal()) * r.transpose();
  const BellDiagonalization d = bell_diagonalize(t);
  CHECK(std::abs(d.c.c1) == doctest::Approx(0.8).epsilon(1e-10));
  CHECK(std::abs(d.c.c2) == doctest::Approx(0.2).epsilon(1e-10));
  CHECK(std::abs(d.c.c3) == doctest::Approx(0.1).epsilon(1e-10));
  CHECK(d.c.c1 * d.c.c2 * d.c.c3 == doctest::Approx(t.determinant()).epsilon(1e-9));
  const Mat3 rebuilt = d.rotation_a * Mat3(d.c.vec().asDiagonal()) * d.rotation_b.transpose();
  CHECK((rebuilt - t).cwiseAbs().maxCoeff() <= 1e-10);

  Mat3 too_big = Mat3::Identity() * 1.5;
  CHECK_THROWS_AS(bell_diagonalize(too_big), std::invalid_argument);
}
