#include "belldiag/decoherence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace belldiag {
namespace {

CorrelationVector scaled_state(const CorrelationVector& c0, int preserved, double s) {
  CorrelationVector c = c0;
  for (int j = 0; j < 3; ++j) {
    if (j != preserved) c[j] *= s;
  }
  return c;
}

// Root of a monotonically increasing g on [0,1], bisected until the bracket
// in the decaying scale variable is below 1e-12.
template <class F>
double bisect_scale(F g) {
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) >= 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

int preserved_component(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::bit: return 0;
    case ChannelKind::bitphase: return 1;
    case ChannelKind::phase: return 2;
  }
  return 2;
}

const char* to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::bit: return "bit";
    case ChannelKind::bitphase: return "bitphase";
    case ChannelKind::phase: return "phase";
  }
  return "phase";
}

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::discord_kink: return "discord_kink";
    case EventKind::sudden_death: return "sudden_death";
    case EventKind::reached_axis: return "reached_axis";
  }
  return "discord_kink";
}

FlipChannel FlipChannel::from_probability(ChannelKind kind, double p) {
  if (!(p >= 0.0 && p <= 0.5)) {
    throw std::invalid_argument("flip probability must lie in [0, 1/2]");
  }
  const double m = 1.0 - 2.0 * p;
  return {kind, m * m};
}

FlipChannel FlipChannel::from_rate_time(ChannelKind kind, double gamma, double t) {
  if (!(gamma >= 0.0) || !(t >= 0.0)) {
    throw std::invalid_argument("decay rate and time must be nonnegative");
  }
  return {kind, std::exp(-gamma * t)};
}

FlipChannel FlipChannel::from_scale(ChannelKind kind, double s) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw std::invalid_argument("scale factor must lie in [0,1]");
  }
  return {kind, s};
}

CorrelationVector apply_channel(const CorrelationVector& c, const FlipChannel& ch) {
  require_physical(c);
  if (!(ch.scale >= 0.0 && ch.scale <= 1.0)) {
    throw std::invalid_argument("scale factor must lie in [0,1]");
  }
  return scaled_state(c, preserved_component(ch.kind), ch.scale);
}

std::vector<TrajectorySample> trajectory(const CorrelationVector& c0, ChannelKind kind,
                                         double gamma, double t_max, int steps) {
  require_physical(c0);
  if (steps < 2) throw std::invalid_argument("trajectory requires at least 2 samples");
  if (!(gamma >= 0.0)) throw std::invalid_argument("decay rate must be nonnegative");
  if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");

  const int preserved = preserved_component(kind);
  std::vector<TrajectorySample> samples;
  samples.reserve(steps);
  for (int i = 0; i < steps; ++i) {
    const double t = t_max * i / (steps - 1);
    const CorrelationVector c = scaled_state(c0, preserved, std::exp(-gamma * t));
    samples.push_back({t, c, all_measures(c)});
  }
  return samples;
}

EventReport analytic_event_times(const CorrelationVector& c0, ChannelKind kind,
                                 double gamma) {
  require_physical(c0);
  if (!(gamma > 0.0)) throw std::invalid_argument("decay rate must be positive");

  const int preserved = preserved_component(kind);
  const int d1 = (preserved + 1) % 3;
  const int d2 = (preserved + 2) % 3;
  const double a1 = std::abs(c0[d1]);
  const double a2 = std::abs(c0[d2]);
  const double decay_max = std::max(a1, a2);
  const double decay_sum = a1 + a2;
  const double kept = std::abs(c0[preserved]);
  const bool edge_class = std::abs(decay_max - 1.0) <= 1e-12;

  EventReport report;
  report.reaches_axis_asymptotically = decay_max > 0.0;

  // Discord kink: the largest decaying |c_j| crosses |c_preserved|.
  if (kept > 0.0 && kept < decay_max) {
    const double s = edge_class ? kept / decay_max
                                : bisect_scale([&](double x) { return decay_max * x - kept; });
    report.events.push_back(
        {EventKind::discord_kink, -std::log(s) / gamma, scaled_state(c0, preserved, s)});
  }

  // Sudden death: the 1-norm first reaches 1; only entangled initial states
  // with |c_preserved| < 1 hit it at finite time.
  if (decay_sum + kept > 1.0 && kept < 1.0 && decay_sum > 0.0) {
    const double s = edge_class
                         ? (1.0 - kept) / decay_sum
                         : bisect_scale([&](double x) { return decay_sum * x + kept - 1.0; });
    report.events.push_back(
        {EventKind::sudden_death, -std::log(s) / gamma, scaled_state(c0, preserved, s)});
  }

  std::sort(report.events.begin(), report.events.end(),
            [](const TrajectoryEvent& a, const TrajectoryEvent& b) { return a.t < b.t; });
  return report;
}

double dephasing_trajectory_discord(double c1, double c3) {
  if (c1 < -1e-12 || c1 > 1.0 + 1e-12 || c3 < -1e-12 || c3 > 1.0 + 1e-12) {
    throw std::domain_error("dephasing_trajectory_discord: arguments must lie in [0,1]");
  }
  c1 = std::clamp(c1, 0.0, 1.0);
  c3 = std::clamp(c3, 0.0, 1.0);
  return c1 >= c3 ? 1.0 - binary_entropy((1.0 + c3) / 2.0)
                  : 1.0 - binary_entropy((1.0 + c1) / 2.0);
}

}  // namespace belldiag
