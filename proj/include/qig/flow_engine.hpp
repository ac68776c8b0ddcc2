#pragma once

// Flows of vector fields on the Bloch ball and their comparison with exact
// group-action orbits.

#include <optional>
#include <string>
#include <vector>

#include "qig/group_actions.hpp"

namespace qig {

struct Trajectory {
  std::vector<double> times;
  std::vector<Vec3> points;  // Bloch Cartesian coordinates
  std::string descriptor;
  std::string integrator;    // "rk4", "rk4-adaptive" or "orbit"
  double step = 0.0;         // nominal step; 0 for adaptive runs
};

struct IntegratorOptions {
  bool adaptive = false;
  /// Local error target per unit time for the adaptive mode.
  double tolerance = 1e-10;
  double eps_boundary = kDefaultBoundaryEps;
};

/// Classical RK4 with `steps` uniform steps in the Cartesian chart. Throws
/// LeftManifold if any stage point reaches r >= 1 - eps_boundary.
Trajectory integrate_flow(const VectorField& field, const QubitState& start, double t_end, int steps,
                          const IntegratorOptions& opts = {});

/// Exact samples of t -> act_along(action, a, b, t, start) on a uniform grid
/// with `samples` intervals.
Trajectory orbit_curve(const ActionSpec& action, const TracelessObservable& a, const TracelessObservable& b,
                       const QubitState& start, double t_end, int samples);

struct FlowOrbitComparison {
  double max_deviation = 0.0;
  Trajectory flow;
  Trajectory orbit;
};

/// Integrates `field` for time t_end and compares it with the orbit sampled
/// at times scale * t.
FlowOrbitComparison compare_flow_to_orbit(const VectorField& field, const ActionSpec& action,
                                          const TracelessObservable& a, const TracelessObservable& b,
                                          const QubitState& start, double t_end, int steps, double scale = 1.0);

struct FlowCase {
  VectorField field;
  ActionSpec action;
  TracelessObservable a;
  TracelessObservable b;
  Vec3 start;
  double t_end = 1.0;
  int steps = 1000;
};

/// Max deviation for each case.
std::vector<double> compare_batch(const std::vector<FlowCase>& cases, Execution ex = Execution::Parallel);

struct GradientAscentCheck {
  double max_rate_error = 0.0;     // |d l/dt - G(Y, Y)| from central differences
  double min_increment = 0.0;      // smallest l(t_{k+1}) - l(t_k)
  double min_metric_norm = 0.0;    // smallest G(Y, Y)
};

/// Follows the gradient flow of l_a for `spec` and checks that l_a rises at
/// the rate G(Y, Y). The start must be off the center.
GradientAscentCheck check_gradient_ascent(const TracelessObservable& a, const MonotoneFunctionSpec& spec,
                                          const QubitState& start, double t_end, int steps);

/// CSV with columns t,x,y,z,r and l_a when an observable is given.
std::string trajectory_csv(const Trajectory& traj, const std::optional<TracelessObservable>& observable = {});

}  // namespace qig
