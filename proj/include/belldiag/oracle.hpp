// Numerical minimization of the measured conditional entropy over local
// measurements on qubit A, built from the 4x4 density matrix by explicit
// matrix algebra. Verifies the closed-form classical correlations without
// sharing their code path.
#pragma once

#include <cstdint>

#include "belldiag/state.hpp"

namespace belldiag {

/// Unit Bloch vector selecting a projective measurement basis on qubit A.
struct MeasurementDirection {
  Vec3 n{0.0, 0.0, 1.0};

  MeasurementDirection() = default;
  explicit MeasurementDirection(const Vec3& v);  // throws unless |v| = 1 within 1e-12
};

struct OracleResult {
  double min_entropy = 0.0;  // bits
  MeasurementDirection argmin;
  long evaluations = 0;
  bool refined = false;
};

/// Probabilities and conditional entropies of the two outcomes of the
/// projective measurement (I +- n.sigma)/2 on qubit A.
struct ProjectiveOutcome {
  std::array<double, 2> probability{};
  std::array<double, 2> entropy{};  // S(rho_B|k) in bits

  double average_entropy() const {
    return probability[0] * entropy[0] + probability[1] * entropy[1];
  }
};

/// Von Neumann entropy in bits, via Hermitian eigendecomposition.
double von_neumann_entropy(const Mat4c& rho);

ProjectiveOutcome projective_outcomes(const Mat4c& rho, const Vec3& n);
ProjectiveOutcome projective_outcomes(const CorrelationVector& c, const MeasurementDirection& n);

/// sum_k p_k S(rho_B|k) for the two-outcome measurement along n.
double conditional_entropy_for_direction(const CorrelationVector& c,
                                         const MeasurementDirection& n);

/// Coarse search over a Fibonacci-sphere grid of directions, then
/// derivative-free refinement (coordinate-wise golden section on the
/// spherical angles, at most 200 steps, stopping once a refinement pass
/// improves the entropy by less than 1e-12). The result never exceeds the
/// objective at any grid point.
OracleResult minimize_conditional_entropy(const CorrelationVector& c,
                                          int grid_resolution = 512,
                                          bool refine = true);

/// Samples random rank-one POVMs with the given outcome count (3 or 4) and
/// returns the smallest average conditional entropy observed. Directions
/// and weights are drawn so that completeness holds exactly; degenerate
/// draws are rejected and redrawn, and exceeding the redraw budget throws
/// with the counts in the message.
double povm_sanity_scan(const CorrelationVector& c, int trials, int outcomes,
                        std::uint64_t seed = 0);

}  // namespace belldiag
