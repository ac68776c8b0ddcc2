#include "qig/flow_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qig {

namespace {

class GuardedField {
 public:
  GuardedField(const VectorField& f, double eps) : f_(f), limit_(1.0 - eps) {}

  Vec3 operator()(const Vec3& v) const {
    if (v.norm() >= limit_) throw Error(ErrorCode::LeftManifold, "flow reached the boundary of the ball");
    return f_(v);
  }

 private:
  const VectorField& f_;
  double limit_;
};

Vec3 rk4_step(const GuardedField& f, const Vec3& y, double h) {
  const Vec3 k1 = f(y);
  const Vec3 k2 = f(y + 0.5 * h * k1);
  const Vec3 k3 = f(y + 0.5 * h * k2);
  const Vec3 k4 = f(y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

void check_interior(const Vec3& v, double eps) {
  if (v.norm() >= 1.0 - eps) throw Error(ErrorCode::LeftManifold, "flow reached the boundary of the ball");
}

}  // namespace

Trajectory integrate_flow(const VectorField& field, const QubitState& start, double t_end, int steps,
                          const IntegratorOptions& opts) {
  if (steps < 1) throw Error(ErrorCode::InvalidInput, "steps must be >= 1");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw Error(ErrorCode::InvalidInput, "t_end must be positive");
  const GuardedField f(field, opts.eps_boundary);
  Trajectory traj;
  traj.descriptor = field.descriptor().describe();
  traj.times.push_back(0.0);
  traj.points.push_back(start.bloch());

  if (!opts.adaptive) {
    traj.integrator = "rk4";
    traj.step = t_end / steps;
    Vec3 y = start.bloch();
    for (int k = 1; k <= steps; ++k) {
      y = rk4_step(f, y, traj.step);
      check_interior(y, opts.eps_boundary);
      traj.times.push_back(k == steps ? t_end : k * traj.step);
      traj.points.push_back(y);
    }
    return traj;
  }

  // Step doubling: compare one step of h with two of h/2.
  traj.integrator = "rk4-adaptive";
  double t = 0.0;
  double h = t_end / steps;
  Vec3 y = start.bloch();
  while (t < t_end) {
    h = std::min(h, t_end - t);
    const Vec3 coarse = rk4_step(f, y, h);
    const Vec3 fine = rk4_step(f, rk4_step(f, y, 0.5 * h), 0.5 * h);
    const double err = (fine - coarse).cwiseAbs().maxCoeff() / 15.0;
    const double target = opts.tolerance * h;
    if (err <= target || h < 1e-12) {
      y = fine + (fine - coarse) / 15.0;
      check_interior(y, opts.eps_boundary);
      t = (t_end - t - h) < 1e-15 * t_end ? t_end : t + h;
      traj.times.push_back(t);
      traj.points.push_back(y);
    }
    const double factor = err > 0.0 ? 0.9 * std::pow(target / err, 0.25) : 5.0;
    h *= std::clamp(factor, 0.2, 5.0);
  }
  return traj;
}

Trajectory orbit_curve(const ActionSpec& action, const TracelessObservable& a, const TracelessObservable& b,
                       const QubitState& start, double t_end, int samples) {
  if (samples < 1) throw Error(ErrorCode::InvalidInput, "samples must be >= 1");
  Trajectory traj;
  traj.descriptor = action.name();
  traj.integrator = "orbit";
  traj.step = t_end / samples;
  for (int k = 0; k <= samples; ++k) {
    const double t = k == samples ? t_end : k * traj.step;
    traj.times.push_back(t);
    traj.points.push_back(t == 0.0 ? start.bloch() : act_along(action, a, b, t, start).bloch());
  }
  return traj;
}

FlowOrbitComparison compare_flow_to_orbit(const VectorField& field, const ActionSpec& action,
                                          const TracelessObservable& a, const TracelessObservable& b,
                                          const QubitState& start, double t_end, int steps, double scale) {
  FlowOrbitComparison out;
  out.flow = integrate_flow(field, start, t_end, steps);
  out.orbit.descriptor = action.name();
  out.orbit.integrator = "orbit";
  out.orbit.step = out.flow.step;
  for (std::size_t k = 0; k < out.flow.times.size(); ++k) {
    const double t = out.flow.times[k];
    const Vec3 p = t == 0.0 ? start.bloch() : act_along(action, a, b, scale * t, start).bloch();
    out.orbit.times.push_back(t);
    out.orbit.points.push_back(p);
    out.max_deviation = std::max(out.max_deviation, (p - out.flow.points[k]).norm());
  }
  return out;
}

std::vector<double> compare_batch(const std::vector<FlowCase>& cases, Execution ex) {
  return map_indices<double>(ex, cases.size(), [&](std::size_t i) {
    const auto& c = cases[i];
    return compare_flow_to_orbit(c.field, c.action, c.a, c.b, state_from_bloch(c.start), c.t_end, c.steps)
        .max_deviation;
  });
}

GradientAscentCheck check_gradient_ascent(const TracelessObservable& a, const MonotoneFunctionSpec& spec,
                                          const QubitState& start, double t_end, int steps) {
  const auto field = gradient_field_closed(a, spec);
  const auto traj = integrate_flow(field, start, t_end, steps);
  GradientAscentCheck out;
  out.min_increment = std::numeric_limits<double>::infinity();
  out.min_metric_norm = std::numeric_limits<double>::infinity();
  const double h = traj.step;
  std::vector<double> l;
  for (const auto& p : traj.points) l.push_back(expectation_value(a, p));
  for (std::size_t k = 0; k + 1 < l.size(); ++k) out.min_increment = std::min(out.min_increment, l[k + 1] - l[k]);
  // Five-point stencil, so truncation stays well under the RK4 error.
  for (std::size_t k = 2; k + 2 < l.size(); ++k) {
    const Vec3& v = traj.points[k];
    const Vec3 y = field(v);
    const double norm = y.dot(metric_cartesian(spec, v).components * y);
    const double rate = (l[k - 2] - 8.0 * l[k - 1] + 8.0 * l[k + 1] - l[k + 2]) / (12.0 * h);
    out.min_metric_norm = std::min(out.min_metric_norm, norm);
    out.max_rate_error = std::max(out.max_rate_error, std::abs(rate - norm));
  }
  return out;
}

std::string trajectory_csv(const Trajectory& traj, const std::optional<TracelessObservable>& observable) {
  std::ostringstream os;
  os.precision(17);
  os << "t,x,y,z,r";
  if (observable) os << ",l_a";
  os << "\n";
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const Vec3& p = traj.points[k];
    os << traj.times[k] << "," << p.x() << "," << p.y() << "," << p.z() << "," << p.norm();
    if (observable) os << "," << expectation_value(*observable, p);
    os << "\n";
  }
  return os.str();
}

}  // namespace qig
