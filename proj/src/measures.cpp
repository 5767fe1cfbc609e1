#include "belldiag/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace belldiag {

double binary_entropy(double p) {
  if (p < 0.0 || p > 1.0) {
    if (p < -1e-12 || p > 1.0 + 1e-12) {
      throw std::domain_error("binary_entropy: p = " + std::to_string(p) +
                              " outside [0,1]");
    }
    p = std::clamp(p, 0.0, 1.0);
  }
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

double spectrum_entropy(const BellSpectrum& s) {
  double entropy = 0.0;
  for (double l : s.lambda) {
    if (l > 0.0) entropy -= l * std::log2(l);
  }
  return entropy;
}

double mutual_information(const CorrelationVector& c) {
  require_physical(c);
  double info = 0.0;
  for (double l : spectrum(c).lambda) {
    if (l > 0.0) info += l * std::log2(4.0 * l);
  }
  return info;
}

double classical_correlation(const CorrelationVector& c) {
  require_physical(c);
  return 1.0 - binary_entropy((1.0 + c.max_abs()) / 2.0);
}

double discord(const CorrelationVector& c) {
  const double d = mutual_information(c) - classical_correlation(c);
  if (d < -1e-12) {
    throw std::logic_error("discord: negative value " + std::to_string(d) +
                           " indicates an internal error");
  }
  return d;
}

double concurrence(const CorrelationVector& c) {
  require_physical(c);
  return std::max(0.0, 2.0 * spectrum(c).max() - 1.0);
}

double entanglement_of_formation(const CorrelationVector& c) {
  const double q = concurrence(c);
  return binary_entropy((1.0 + std::sqrt(std::max(0.0, 1.0 - q * q))) / 2.0);
}

CorrelationMeasures all_measures(const CorrelationVector& c) {
  require_physical(c);
  const BellSpectrum s = spectrum(c);
  CorrelationMeasures m;
  m.c_max = c.max_abs();
  for (double l : s.lambda) {
    if (l > 0.0) m.mutual_info += l * std::log2(4.0 * l);
  }
  m.classical = 1.0 - binary_entropy((1.0 + m.c_max) / 2.0);
  m.discord = m.mutual_info - m.classical;
  if (m.discord < -1e-12) {
    throw std::logic_error("discord: negative value " + std::to_string(m.discord) +
                           " indicates an internal error");
  }
  m.concurrence = std::max(0.0, 2.0 * s.max() - 1.0);
  m.eof = binary_entropy((1.0 + std::sqrt(std::max(0.0, 1.0 - m.concurrence * m.concurrence))) / 2.0);
  return m;
}

}  // namespace belldiag
