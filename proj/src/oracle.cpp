#include "belldiag/oracle.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "belldiag/sampling.hpp"

namespace belldiag {
namespace {

using Mat2c = Eigen::Matrix2cd;
using Complex = std::complex<double>;

Mat2c bloch_projector(const Vec3& n, int sign) {
  const double s = sign >= 0 ? 1.0 : -1.0;
  Mat2c p;
  p(0, 0) = Complex(0.5 * (1.0 + s * n.z()), 0.0);
  p(1, 1) = Complex(0.5 * (1.0 - s * n.z()), 0.0);
  p(0, 1) = Complex(0.5 * s * n.x(), -0.5 * s * n.y());
  p(1, 0) = std::conj(p(0, 1));
  return p;
}

double entropy_bits_2x2(const Mat2c& rho) {
  Eigen::SelfAdjointEigenSolver<Mat2c> solver(rho, Eigen::EigenvaluesOnly);
  double entropy = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double l = solver.eigenvalues()(i);
    if (l > 0.0) entropy -= l * std::log2(l);
  }
  return entropy;
}

// rho_B|k = <k| rho |k> / p_k for the rank-one projector P = |k><k| on A:
// the unnormalized conditional block is sum_ab P(b,a) rho.block(2a, 2b).
ProjectiveOutcome outcomes_from_rho(const Mat4c& rho, const Vec3& n) {
  ProjectiveOutcome out;
  for (int k = 0; k < 2; ++k) {
    const Mat2c p = bloch_projector(n, k == 0 ? +1 : -1);
    Mat2c block = Mat2c::Zero();
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        block += p(b, a) * rho.block<2, 2>(2 * a, 2 * b);
      }
    }
    const double prob = block.trace().real();
    out.probability[k] = prob;
    out.entropy[k] = prob > 1e-15 ? entropy_bits_2x2(Mat2c(block / prob)) : 0.0;
  }
  return out;
}

Vec3 direction_from_angles(double theta, double phi) {
  const double st = std::sin(theta);
  return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}

bool lexicographically_before(const Vec3& a, const Vec3& b) {
  if (a.x() != b.x()) return a.x() < b.x();
  if (a.y() != b.y()) return a.y() < b.y();
  return a.z() < b.z();
}

}  // namespace

MeasurementDirection::MeasurementDirection(const Vec3& v) : n(v) {
  if (std::abs(v.norm() - 1.0) > 1e-12) {
    throw std::invalid_argument("measurement direction must be a unit vector, |n| = " +
                                std::to_string(v.norm()));
  }
}

double von_neumann_entropy(const Mat4c& rho) {
  Eigen::SelfAdjointEigenSolver<Mat4c> solver(rho, Eigen::EigenvaluesOnly);
  double entropy = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double l = solver.eigenvalues()(i);
    if (l > 0.0) entropy -= l * std::log2(l);
  }
  return entropy;
}

ProjectiveOutcome projective_outcomes(const Mat4c& rho, const Vec3& n) {
  return outcomes_from_rho(rho, n);
}

ProjectiveOutcome projective_outcomes(const CorrelationVector& c,
                                      const MeasurementDirection& n) {
  return outcomes_from_rho(density_matrix(c), n.n);
}

double conditional_entropy_for_direction(const CorrelationVector& c,
                                         const MeasurementDirection& n) {
  return outcomes_from_rho(density_matrix(c), n.n).average_entropy();
}

OracleResult minimize_conditional_entropy(const CorrelationVector& c, int grid_resolution,
                                          bool refine) {
  if (grid_resolution < 8) {
    throw std::invalid_argument("grid_resolution must be at least 8");
  }
  const Mat4c rho = density_matrix(c);

  OracleResult result;
  result.refined = refine;
  result.min_entropy = std::numeric_limits<double>::infinity();
  Vec3 best_dir(0.0, 0.0, 1.0);

  auto objective = [&](const Vec3& n) {
    ++result.evaluations;
    return outcomes_from_rho(rho, n).average_entropy();
  };

  auto consider = [&](const Vec3& n, double value) {
    if (value < result.min_entropy ||
        (value == result.min_entropy && lexicographically_before(n, best_dir))) {
      result.min_entropy = value;
      best_dir = n;
    }
  };

  // Fibonacci sphere: near-uniform coverage with no clustering at the poles.
  const double golden_angle = M_PI * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < grid_resolution; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / grid_resolution;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * i;
    const Vec3 n(r * std::cos(phi), r * std::sin(phi), z);
    consider(n, objective(n));
  }

  if (refine) {
    double theta = std::acos(std::clamp(best_dir.z(), -1.0, 1.0));
    double phi = std::atan2(best_dir.y(), best_dir.x());
    double window = 2.0 * std::sqrt(4.0 * M_PI / grid_resolution);
    const double inv_golden = (std::sqrt(5.0) - 1.0) / 2.0;
    int budget = 200;

    for (int round = 0; round < 8 && budget > 0; ++round) {
      const double before = result.min_entropy;
      for (int coord = 0; coord < 2 && budget > 0; ++coord) {
        const double center = coord == 0 ? theta : phi;
        double lo = center - window;
        double hi = center + window;
        auto at = [&](double x) {
          return coord == 0 ? direction_from_angles(x, phi)
                            : direction_from_angles(theta, x);
        };
        double x1 = hi - inv_golden * (hi - lo);
        double x2 = lo + inv_golden * (hi - lo);
        double f1 = objective(at(x1));
        double f2 = objective(at(x2));
        while (budget > 0 && hi - lo > 1e-10) {
          if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_golden * (hi - lo);
            f1 = objective(at(x1));
          } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_golden * (hi - lo);
            f2 = objective(at(x2));
          }
          --budget;
        }
        const double mid = 0.5 * (lo + hi);
        const Vec3 n = at(mid);
        const double fm = objective(n);
        if (fm < result.min_entropy) {
          result.min_entropy = fm;
          best_dir = n;
          (coord == 0 ? theta : phi) = mid;
        }
      }
      window *= 0.25;
      if (before - result.min_entropy < 1e-12) break;
    }
  }

  result.argmin = MeasurementDirection(best_dir.normalized());
  return result;
}

double povm_sanity_scan(const CorrelationVector& c, int trials, int outcomes,
                        std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("povm_sanity_scan: trials must be >= 1");
  if (outcomes != 3 && outcomes != 4) {
    throw std::invalid_argument("povm_sanity_scan: outcome count must be 3 or 4");
  }
  const Mat4c rho = density_matrix(c);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> weight_dist(0.25, 1.0);

  const long redraw_budget = 100L * trials + 100;
  long redraws = 0;
  double best = std::numeric_limits<double>::infinity();

  for (int trial = 0; trial < trials; ++trial) {
    std::vector<Vec3> dirs;
    std::vector<double> weights;
    while (true) {
      if (redraws > redraw_budget) {
        throw std::runtime_error(
            "povm_sanity_scan: completeness not satisfied after " +
            std::to_string(redraws) + " redraws (" + std::to_string(trial) +
            " trials completed)");
      }
      dirs.clear();
      weights.clear();
      Vec3 tail = Vec3::Zero();
      double total = 0.0;
      for (int k = 0; k < outcomes - 1; ++k) {
        dirs.push_back(sample_unit_direction(rng));
        weights.push_back(weight_dist(rng));
        tail += weights.back() * dirs.back();
        total += weights.back();
      }
      // Close the direction sum exactly so sum_k w_k n_k = 0.
      const double closing = tail.norm();
      if (closing < 1e-6) {
        ++redraws;
        continue;
      }
      dirs.push_back(-tail / closing);
      weights.push_back(closing);
      total += closing;
      for (double& w : weights) w *= 2.0 / total;

      Mat2c completeness = Mat2c::Zero();
      for (int k = 0; k < outcomes; ++k) {
        completeness += weights[k] * bloch_projector(dirs[k], +1);
      }
      completeness -= Mat2c::Identity();
      if (completeness.cwiseAbs().maxCoeff() > 1e-10) {
        ++redraws;
        continue;
      }
      break;
    }

    double average = 0.0;
    for (int k = 0; k < outcomes; ++k) {
      const ProjectiveOutcome outcome = outcomes_from_rho(rho, dirs[k]);
      // E_k = w_k |n_k><n_k|, so p_k = w_k * <n_k|rho_A|n_k> and the
      // conditional state matches the + branch of the projective outcome.
      average += weights[k] * outcome.probability[0] * outcome.entropy[0];
    }
    best = std::min(best, average);
  }
  return best;
}

}  // namespace belldiag
