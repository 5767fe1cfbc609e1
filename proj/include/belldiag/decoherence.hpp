// Flip-channel decoherence of Bell-diagonal states: exact trajectories,
// closed-form event times (discord kink, entanglement sudden death), and
// the constant/decaying discord formulas on the straight-line trajectory
// family.
#pragma once

#include <vector>

#include "belldiag/measures.hpp"
#include "belldiag/state.hpp"

namespace belldiag {

enum class ChannelKind { phase, bit, bitphase };

/// Index (0,1,2) of the correlation component the channel preserves:
/// phase keeps c3, bit keeps c1, bit-phase keeps c2.
int preserved_component(ChannelKind kind);

const char* to_string(ChannelKind kind);

/// A flip channel acting on both qubits independently. The two
/// non-preserved components are multiplied by the scale factor
/// s = (1-2p)^2 = exp(-gamma t); only s is exposed, not a per-qubit rate
/// convention.
struct FlipChannel {
  ChannelKind kind = ChannelKind::phase;
  double scale = 1.0;  // s in [0,1]

  static FlipChannel from_probability(ChannelKind kind, double p);  // p in [0, 1/2]
  static FlipChannel from_rate_time(ChannelKind kind, double gamma, double t);
  static FlipChannel from_scale(ChannelKind kind, double s);
};

CorrelationVector apply_channel(const CorrelationVector& c, const FlipChannel& ch);

struct TrajectorySample {
  double t = 0.0;
  CorrelationVector c;
  CorrelationMeasures measures;
};

/// Uniform time samples of the exact exponential solution (no numerical
/// integration). steps >= 2; samples cover [0, t_max] inclusive.
std::vector<TrajectorySample> trajectory(const CorrelationVector& c0, ChannelKind kind,
                                         double gamma, double t_max, int steps);

enum class EventKind { discord_kink, sudden_death, reached_axis };

const char* to_string(EventKind kind);

struct TrajectoryEvent {
  EventKind kind = EventKind::discord_kink;
  double t = 0.0;
  CorrelationVector c_at_event;
};

struct EventReport {
  std::vector<TrajectoryEvent> events;  // finite-time events, sorted by time
  // The classical axis is approached only as t -> infinity, so it is
  // reported as a flag rather than a timed event.
  bool reaches_axis_asymptotically = false;
};

/// Event times from the closed forms where the initial condition is of the
/// edge type (largest decaying magnitude equal to 1), and by bisection on
/// the monotone decaying scale otherwise (tolerance 1e-12). The discord
/// kink sits where the largest decaying |c_j| crosses |c_preserved|; sudden
/// death where the 1-norm first reaches 1. Events with no solution at
/// finite positive time are omitted.
EventReport analytic_event_times(const CorrelationVector& c0, ChannelKind kind,
                                 double gamma);

/// Discord along the phase-flip family (c1, -c3*c1, c3) with c1,c3 in
/// [0,1]: 1 - H2((1+c3)/2) while c1 >= c3 (the frozen interval), then
/// 1 - H2((1+c1)/2). Matches the general discord on this family.
double dephasing_trajectory_discord(double c1, double c3);

}  // namespace belldiag
