#include "belldiag/state.hpp"

#include <cstdio>
#include <stdexcept>
#include <string>

namespace belldiag {
namespace {

std::string format_c(const CorrelationVector& c) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "(%.17g, %.17g, %.17g)", c.c1, c.c2, c.c3);
  return buf;
}

}  // namespace

BellLabel BellSpectrum::argmax() const {
  BellLabel best{0, 0};
  double value = lambda[0];
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      if (lambda[index(a, b)] > value) {
        value = lambda[index(a, b)];
        best = {a, b};
      }
    }
  }
  return best;
}

BellSpectrum spectrum(const CorrelationVector& c) {
  BellSpectrum s;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const double sa = a == 0 ? 1.0 : -1.0;
      const double sb = b == 0 ? 1.0 : -1.0;
      s(a, b) = (1.0 + sa * c.c1 - sa * sb * c.c2 + sb * c.c3) / 4.0;
    }
  }
  return s;
}

CorrelationVector correlation_from_spectrum(const BellSpectrum& s) {
  if (std::abs(s.sum() - 1.0) > 1e-12) {
    throw std::invalid_argument("spectrum sum deviates from 1 beyond 1e-12: sum = " +
                                std::to_string(s.sum()));
  }
  const double l00 = s(0, 0), l01 = s(0, 1), l10 = s(1, 0), l11 = s(1, 1);
  return {l00 + l01 - l10 - l11, -(l00 - l01 - l10 + l11), l00 - l01 + l10 - l11};
}

bool is_physical(const CorrelationVector& c, double tol) {
  if (tol < 0.0) throw std::invalid_argument("physicality tolerance must be nonnegative");
  return spectrum(c).min() >= -tol;
}

void require_physical(const CorrelationVector& c, double tol) {
  const BellSpectrum s = spectrum(c);
  if (s.min() >= -tol) return;
  BellLabel worst{0, 0};
  double value = s(0, 0);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      if (s(a, b) < value) {
        value = s(a, b);
        worst = {a, b};
      }
    }
  }
  char buf[192];
  std::snprintf(buf, sizeof(buf), "unphysical state: lambda_%d%d = %.17g < 0 for c = ",
                worst.a, worst.b, value);
  throw std::domain_error(buf + format_c(c));
}

bool is_separable(const CorrelationVector& c) {
  require_physical(c);
  return c.one_norm() <= 1.0;
}

StateClass classify(const CorrelationVector& c, double classical_tol, double physical_tol) {
  const BellSpectrum s = spectrum(c);
  StateClass out;
  out.physical = s.min() >= -physical_tol;
  out.separable = c.one_norm() <= 1.0;
  int large = 0;
  for (int j = 0; j < 3; ++j) {
    if (std::abs(c[j]) > classical_tol) ++large;
  }
  out.classical = large <= 1;
  out.dominant_vertex = s.argmax();
  return out;
}

Mat4c density_matrix(const CorrelationVector& c) {
  require_physical(c);
  const double diag_plus = (1.0 + c.c3) / 4.0;
  const double diag_minus = (1.0 - c.c3) / 4.0;
  const double outer = (c.c1 - c.c2) / 4.0;  // couples |00> and |11>
  const double inner = (c.c1 + c.c2) / 4.0;  // couples |01> and |10>
  Mat4c rho = Mat4c::Zero();
  rho(0, 0) = diag_plus;
  rho(1, 1) = diag_minus;
  rho(2, 2) = diag_minus;
  rho(3, 3) = diag_plus;
  rho(0, 3) = outer;
  rho(3, 0) = outer;
  rho(1, 2) = inner;
  rho(2, 1) = inner;
  return rho;
}

BellDiagonalization bell_diagonalize(const Mat3& t) {
  if (t.cwiseAbs().maxCoeff() > 1.0 + 1e-12) {
    throw std::invalid_argument("correlation matrix entries must lie in [-1,1]");
  }
  Eigen::JacobiSVD<Mat3> svd(t, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 u = svd.matrixU();
  Mat3 v = svd.matrixV();
  Vec3 sv = svd.singularValues();  // descending
  if (u.determinant() < 0.0) {
    u.col(2) *= -1.0;
    sv(2) *= -1.0;
  }
  if (v.determinant() < 0.0) {
    v.col(2) *= -1.0;
    sv(2) *= -1.0;
  }
  return {CorrelationVector(sv), u, v};
}

}  // namespace belldiag
