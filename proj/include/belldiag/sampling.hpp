// Seeded samplers shared by the library and the test suites.
#pragma once

#include <random>

#include "belldiag/state.hpp"

namespace belldiag {

/// Uniform sample from the state tetrahedron: a uniform point on the
/// eigenvalue simplex (normalized exponentials) pushed through the affine
/// inverse map.
template <class URBG>
CorrelationVector sample_uniform_physical(URBG& rng) {
  std::exponential_distribution<double> exp_dist(1.0);
  BellSpectrum s;
  double total = 0.0;
  for (double& l : s.lambda) {
    l = exp_dist(rng);
    total += l;
  }
  for (double& l : s.lambda) l /= total;
  return correlation_from_spectrum(s);
}

/// Uniform direction on the unit sphere.
template <class URBG>
Vec3 sample_unit_direction(URBG& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  while (true) {
    const Vec3 v(gauss(rng), gauss(rng), gauss(rng));
    const double norm = v.norm();
    if (norm > 1e-6) return v / norm;
  }
}

}  // namespace belldiag
