// Bell-diagonal two-qubit states: correlation-vector parametrization, Bell
// spectrum, physicality/separability/classicality tests, density-matrix
// realization, and reduction of a correlation matrix to Bell-diagonal form.
#pragma once

#include <array>
#include <cmath>

#include <Eigen/Dense>

namespace belldiag {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat4c = Eigen::Matrix4cd;

inline constexpr double kPhysicalTol = 1e-12;
inline constexpr double kClassicalTol = 1e-9;

/// The triple (c1,c2,c3) of sigma_j (x) sigma_j expectation values that
/// fully specifies a Bell-diagonal state. Components lie in [-1,1].
struct CorrelationVector {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;

  CorrelationVector() = default;
  CorrelationVector(double c1_, double c2_, double c3_) : c1(c1_), c2(c2_), c3(c3_) {}
  explicit CorrelationVector(const Vec3& v) : c1(v.x()), c2(v.y()), c3(v.z()) {}

  Vec3 vec() const { return {c1, c2, c3}; }

  double operator[](int j) const { return j == 0 ? c1 : (j == 1 ? c2 : c3); }
  double& operator[](int j) { return j == 0 ? c1 : (j == 1 ? c2 : c3); }

  double max_abs() const {
    return std::max({std::abs(c1), std::abs(c2), std::abs(c3)});
  }
  double one_norm() const { return std::abs(c1) + std::abs(c2) + std::abs(c3); }
};

/// Bell-basis label (a,b), a,b in {0,1}.
struct BellLabel {
  int a = 0;
  int b = 0;
  friend bool operator==(const BellLabel&, const BellLabel&) = default;
};

/// The four eigenvalues lambda_ab, stored in index order
/// (0,0),(0,1),(1,0),(1,1). This order is fixed everywhere, including
/// serialized output.
struct BellSpectrum {
  std::array<double, 4> lambda{};

  static constexpr int index(int a, int b) { return 2 * a + b; }
  double operator()(int a, int b) const { return lambda[index(a, b)]; }
  double& operator()(int a, int b) { return lambda[index(a, b)]; }

  double min() const { return *std::min_element(lambda.begin(), lambda.end()); }
  double max() const { return *std::max_element(lambda.begin(), lambda.end()); }
  double sum() const { return lambda[0] + lambda[1] + lambda[2] + lambda[3]; }

  /// Label of the largest eigenvalue; ties broken toward the smallest (a,b)
  /// in lexicographic order.
  BellLabel argmax() const;
};

struct StateClass {
  bool physical = false;
  bool separable = false;
  bool classical = false;
  BellLabel dominant_vertex{};
};

/// Result of factoring a correlation matrix as RA * diag(c) * RB^T with
/// det(RA) = det(RB) = +1.
struct BellDiagonalization {
  CorrelationVector c;
  Mat3 rotation_a;
  Mat3 rotation_b;
};

/// lambda_ab = (1 + (-1)^a c1 - (-1)^(a+b) c2 + (-1)^b c3) / 4.
/// Accepts unphysical input (signed "eigenvalues"); the sum is 1 regardless.
BellSpectrum spectrum(const CorrelationVector& c);

/// Inverse of the affine map above. Rejects spectra whose sum deviates from
/// 1 by more than 1e-12.
CorrelationVector correlation_from_spectrum(const BellSpectrum& s);

/// True iff min lambda_ab >= -tol.
bool is_physical(const CorrelationVector& c, double tol = kPhysicalTol);

/// Throws std::domain_error naming the most violated lambda_ab when the
/// state lies outside the tetrahedron beyond tol.
void require_physical(const CorrelationVector& c, double tol = kPhysicalTol);

/// True iff |c1|+|c2|+|c3| <= 1 (equivalently max lambda_ab <= 1/2).
/// Throws on unphysical input.
bool is_separable(const CorrelationVector& c);

/// Physical/separable/classical flags plus the dominant Bell vertex.
/// Never throws; unphysical input just yields physical = false.
/// A state counts as classical when at most one |c_j| exceeds classical_tol.
StateClass classify(const CorrelationVector& c, double classical_tol = kClassicalTol,
                    double physical_tol = kPhysicalTol);

/// (I + sum_j c_j sigma_j (x) sigma_j) / 4 in the computational basis
/// |00>,|01>,|10>,|11>. Throws on unphysical input.
Mat4c density_matrix(const CorrelationVector& c);

/// Factor T = RA * diag(c1,c2,c3) * RB^T with proper rotations on both
/// sides. Singular values are ordered by descending magnitude; reflections
/// are converted to rotations by negating the last column of the factor and
/// absorbing the sign into c3.
BellDiagonalization bell_diagonalize(const Mat3& t);

}  // namespace belldiag
