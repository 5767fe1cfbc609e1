// Closed-form correlation measures for Bell-diagonal states. All entropic
// quantities are in bits (base-2 logarithms).
#pragma once

#include "belldiag/state.hpp"

namespace belldiag {

struct CorrelationMeasures {
  double mutual_info = 0.0;   // I = 2 - S(rho_AB)
  double classical = 0.0;     // C = 1 - H2((1+c)/2), c = max|c_j|
  double discord = 0.0;       // D = I - C
  double concurrence = 0.0;   // max(0, 2*lambda_max - 1)
  double eof = 0.0;           // entanglement of formation
  double c_max = 0.0;
};

/// -p log2 p - (1-p) log2(1-p) with 0 log 0 = 0 handled by branch.
/// Throws if p lies outside [0,1] by more than 1e-12.
double binary_entropy(double p);

/// -sum lambda log2 lambda over positive entries, in bits.
double spectrum_entropy(const BellSpectrum& s);

/// I = sum_ab lambda_ab log2(4 lambda_ab).
double mutual_information(const CorrelationVector& c);

/// C = 1 - H2((1+c)/2) with c = max|c_j|. The maximizing local measurement
/// is along the axis of the largest |c_j|.
double classical_correlation(const CorrelationVector& c);

/// D = I - C. Never clamped; a result below -1e-12 signals an internal
/// error and throws std::logic_error.
double discord(const CorrelationVector& c);

/// max(0, 2*max_ab lambda_ab - 1).
double concurrence(const CorrelationVector& c);

/// H2((1 + sqrt(1 - conc^2))/2), the monotone map from concurrence.
/// The explicit function comes from the concurrence literature; zero iff
/// the state is separable.
double entanglement_of_formation(const CorrelationVector& c);

/// All measures for one state; discord is the exact difference of the
/// mutual-information and classical-correlation values in the bundle.
CorrelationMeasures all_measures(const CorrelationVector& c);

}  // namespace belldiag
