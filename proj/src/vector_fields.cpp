#include "qig/vector_fields.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace qig {

namespace {

Vec3 spherical_coords(const SphericalPoint& p) { return {p.r(), p.theta(), p.phi()}; }

// Partial derivatives of l_a = a1 r s_t c_p + a2 r s_t s_p + a3 r c_t with
// respect to (r, theta, phi).
Vec3 expectation_differential(const Vec3& a, const SphericalPoint& p) {
  const double r = p.r();
  const double st = std::sin(p.theta()), ct = std::cos(p.theta());
  const double sp = std::sin(p.phi()), cp = std::cos(p.phi());
  return {a[0] * st * cp + a[1] * st * sp + a[2] * ct,
          r * (a[0] * ct * cp + a[1] * ct * sp - a[2] * st),
          r * st * (-a[0] * sp + a[1] * cp)};
}

Vec3 axis(int j) { return Vec3::Unit(j - 1); }

}  // namespace

TangentVector to_cartesian(const TangentVector& v) {
  if (v.chart == Chart::Cartesian) return v;
  const auto p = SphericalPoint::make(v.base[0], v.base[1], v.base[2]);
  return {Chart::Cartesian, spherical_jacobian(p) * v.components, cartesian_from_spherical(p)};
}

TangentVector to_spherical(const TangentVector& v, double eps_chart) {
  if (v.chart == Chart::Spherical) return v;
  const auto p = spherical_from_cartesian(v.base, eps_chart);
  return {Chart::Spherical, spherical_jacobian(p).partialPivLu().solve(v.components), spherical_coords(p)};
}

const char* to_string(FieldKind kind) {
  switch (kind) {
    case FieldKind::Fundamental: return "fundamental";
    case FieldKind::Gradient: return "gradient";
    case FieldKind::GradientFromMetric: return "gradient-metric";
    case FieldKind::RescaledGradient: return "rescaled-gradient";
    case FieldKind::Custom: return "custom";
  }
  return "unknown";
}

std::string FieldDescriptor::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << to_string(kind) << "[" << label[0] << "," << label[1] << "," << label[2] << "]";
  if (!spec.empty()) os << "{" << spec << "}";
  if (scale != 1.0) os << "*" << scale;
  return os.str();
}

VectorField::VectorField(FieldDescriptor descriptor, CartesianFn cartesian, SphericalFn spherical)
    : descriptor_(std::move(descriptor)), cartesian_(std::move(cartesian)), spherical_(std::move(spherical)) {}

TangentVector VectorField::at(const Vec3& v) const { return {Chart::Cartesian, cartesian_(v), v}; }

TangentVector VectorField::at(const SphericalPoint& p) const {
  if (spherical_) return {Chart::Spherical, spherical_(p), spherical_coords(p)};
  const Vec3 c = cartesian_(cartesian_from_spherical(p));
  return {Chart::Spherical, spherical_jacobian(p).partialPivLu().solve(c), spherical_coords(p)};
}

VectorField VectorField::scaled(double s) const {
  FieldDescriptor d = descriptor_;
  d.scale *= s;
  SphericalFn sph;
  if (spherical_) sph = [f = spherical_, s](const SphericalPoint& p) -> Vec3 { return s * f(p); };
  return VectorField(std::move(d), [f = cartesian_, s](const Vec3& v) -> Vec3 { return s * f(v); },
                     std::move(sph));
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  FieldDescriptor d{FieldKind::Custom, Vec3::Zero(), a.descriptor_.describe() + "+" + b.descriptor_.describe(), 1.0};
  VectorField::SphericalFn sph;
  if (a.spherical_ && b.spherical_)
    sph = [fa = a.spherical_, fb = b.spherical_](const SphericalPoint& p) -> Vec3 { return fa(p) + fb(p); };
  return VectorField(std::move(d),
                     [fa = a.cartesian_, fb = b.cartesian_](const Vec3& v) -> Vec3 { return fa(v) + fb(v); },
                     std::move(sph));
}

VectorField fundamental_field(const TracelessObservable& b) {
  const Vec3 c = b.coeffs();
  auto spherical = [c](const SphericalPoint& p) -> Vec3 {
    const double sp = std::sin(p.phi()), cp = std::cos(p.phi());
    const double cot = std::cos(p.theta()) / std::sin(p.theta());
    // X1 = -sin(phi) d_theta - cot(theta) cos(phi) d_phi
    // X2 =  cos(phi) d_theta - cot(theta) sin(phi) d_phi
    // X3 =  d_phi
    return {0.0, -c[0] * sp + c[1] * cp, -c[0] * cot * cp - c[1] * cot * sp + c[2]};
  };
  return VectorField({FieldKind::Fundamental, c, "", 1.0},
                     [c](const Vec3& v) -> Vec3 { return c.cross(v); }, spherical);
}

VectorField gradient_field_closed(const TracelessObservable& a, const MonotoneFunctionSpec& spec) {
  const Vec3 c = a.coeffs();
  auto cartesian = [c, spec](const Vec3& v) -> Vec3 {
    const double r = v.norm();
    if (r >= 1.0) throw Error(ErrorCode::BoundaryViolation, "gradient field outside the ball");
    if (r < 1e-12) return spec.evaluate_unrestricted(1.0) * c;
    // r g(r) = (1+r) f(t): tangential stretch; radial part is (1 - r^2).
    const double rg = (1.0 + r) * f_eval(spec, t_from_r(r));
    const double radial = c.dot(v) / (r * r);
    return rg * c + ((1.0 - r * r) - rg) * radial * v;
  };
  auto spherical = [c, spec](const SphericalPoint& p) -> Vec3 {
    const double r = p.r();
    const double g = g_from_f(spec, r);
    const double st = std::sin(p.theta()), ct = std::cos(p.theta());
    const double sp = std::sin(p.phi()), cp = std::cos(p.phi());
    const double w = 1.0 - r * r;
    // Y1 = w s_t c_p d_r + g (c_t c_p d_theta - s_p / s_t d_phi)
    // Y2 = w s_t s_p d_r + g (c_t s_p d_theta + c_p / s_t d_phi)
    // Y3 = w c_t d_r - g s_t d_theta
    return {w * (c[0] * st * cp + c[1] * st * sp + c[2] * ct),
            g * (c[0] * ct * cp + c[1] * ct * sp - c[2] * st),
            g * (-c[0] * sp + c[1] * cp) / st};
  };
  return VectorField({FieldKind::Gradient, c, spec.name(), 1.0}, cartesian, spherical);
}

VectorField gradient_field_from_metric(const TracelessObservable& a, const MonotoneFunctionSpec& spec) {
  const Vec3 c = a.coeffs();
  auto cartesian = [c, spec](const Vec3& v) -> Vec3 {
    // l_a is linear in (x, y, z), so dl_a has components a.
    return inverse_metric(metric_cartesian(spec, v)).components * c;
  };
  auto spherical = [c, spec](const SphericalPoint& p) -> Vec3 {
    return inverse_metric(metric_spherical(spec, p)).components * expectation_differential(c, p);
  };
  return VectorField({FieldKind::GradientFromMetric, c, spec.name(), 1.0}, cartesian, spherical);
}

VectorField rescaled_gradient_field(const TracelessObservable& a, double A) {
  if (!(A > 0.0)) throw Error(ErrorCode::InvalidInput, "rescaled gradient needs A > 0");
  VectorField f = gradient_field_closed(a, MonotoneFunctionSpec::family_a(A)).scaled(1.0 / std::sqrt(A));
  FieldDescriptor d = f.descriptor();
  d.kind = FieldKind::RescaledGradient;
  return VectorField(d, [f](const Vec3& v) { return f(v); }, [f](const SphericalPoint& p) {
    return f.at(p).components;
  });
}

VectorField zero_field() {
  return VectorField({FieldKind::Custom, Vec3::Zero(), "zero", 1.0}, [](const Vec3&) -> Vec3 { return Vec3::Zero(); },
                     [](const SphericalPoint&) -> Vec3 { return Vec3::Zero(); });
}

TangentVector lie_bracket_numeric(const VectorField& v, const VectorField& w, const Vec3& p, double h,
                                  double eps_boundary) {
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidInput, "bracket step must be positive");
  if (p.norm() + 2.0 * h >= 1.0 - eps_boundary)
    throw Error(ErrorCode::NeighborhoodOutsideBall, "difference stencil leaves the ball");
  auto jacobian = [&p](const VectorField& f, double step) {
    Mat3 j;
    for (int i = 0; i < 3; ++i) {
      const Vec3 e = step * Vec3::Unit(i);
      j.col(i) = (f(p + e) - f(p - e)) / (2.0 * step);
    }
    return j;
  };
  auto richardson = [&](const VectorField& f) -> Mat3 { return (4.0 * jacobian(f, 0.5 * h) - jacobian(f, h)) / 3.0; };
  const Vec3 bracket = richardson(w) * v(p) - richardson(v) * w(p);
  return {Chart::Cartesian, bracket, p};
}

namespace {

int projected_sign(const Vec3& bracket, const Vec3& reference) {
  return bracket.dot(reference) >= 0.0 ? 1 : -1;
}

struct RawCommutatorPoint {
  CommutatorPointResult summary;
  std::array<Vec3, 3> yy;  // [Y_i, Y_j] for the cyclic triples
  std::array<Vec3, 3> xk;  // matching X_k
};

constexpr int kCyclic[3][3] = {{1, 2, 3}, {2, 3, 1}, {3, 1, 2}};

}  // namespace

int measure_fundamental_bracket_sign(const Vec3& p, double h) {
  const auto b = lie_bracket_numeric(fundamental_field(TracelessObservable::sigma(1)),
                                     fundamental_field(TracelessObservable::sigma(2)), p, h);
  return projected_sign(b.components, fundamental_field(TracelessObservable::sigma(3))(p));
}

CommutatorReport verify_commutator_relations(const MonotoneFunctionSpec& spec, const std::vector<Vec3>& points,
                                             double h, double tol, Execution ex) {
  CommutatorReport rep;
  rep.spec = spec.name();
  rep.h = h;
  rep.tolerance = tol;
  if (points.empty()) return rep;

  std::array<VectorField, 3> X{fundamental_field(TracelessObservable::sigma(1)),
                               fundamental_field(TracelessObservable::sigma(2)),
                               fundamental_field(TracelessObservable::sigma(3))};
  std::array<VectorField, 3> Y{gradient_field_closed(TracelessObservable::sigma(1), spec),
                               gradient_field_closed(TracelessObservable::sigma(2), spec),
                               gradient_field_closed(TracelessObservable::sigma(3), spec)};

  rep.convention_sign = measure_fundamental_bracket_sign(points.front(), h);
  rep.mixed_sign = projected_sign(lie_bracket_numeric(X[0], Y[1], points.front(), h).components, Y[2](points.front()));

  const auto raw = map_indices<RawCommutatorPoint>(ex, points.size(), [&](std::size_t n) {
    const Vec3& p = points[n];
    RawCommutatorPoint out;
    out.summary.point = p;
    out.summary.F = big_f(spec, p.norm());
    for (int c = 0; c < 3; ++c) {
      const int i = kCyclic[c][0], j = kCyclic[c][1], k = kCyclic[c][2];
      out.yy[c] = lie_bracket_numeric(Y[i - 1], Y[j - 1], p, h).components;
      out.xk[c] = X[k - 1](p);
      out.summary.coefficients[c] = out.yy[c].dot(out.xk[c]) / out.xk[c].squaredNorm();
      out.summary.pointwise_error =
          std::max(out.summary.pointwise_error, (out.yy[c] - out.summary.F * out.xk[c]).cwiseAbs().maxCoeff());
    }
    for (int i = 1; i <= 3; ++i) {
      for (int j = 1; j <= 3; ++j) {
        const Vec3 bracket = lie_bracket_numeric(X[i - 1], Y[j - 1], p, h).components;
        const Vec3 label = axis(i).cross(axis(j));
        const Vec3 expected = rep.mixed_sign * gradient_field_closed(TracelessObservable(label), spec)(p);
        out.summary.closure_error = std::max(out.summary.closure_error, (bracket - expected).cwiseAbs().maxCoeff());
      }
    }
    return out;
  });

  double num = 0.0, den = 0.0;
  for (const auto& r : raw) {
    for (int c = 0; c < 3; ++c) {
      num += r.yy[c].dot(r.xk[c]);
      den += r.xk[c].squaredNorm();
    }
  }
  rep.fitted_constant = den > 0.0 ? num / den : 0.0;
  for (const auto& r : raw) {
    rep.points.push_back(r.summary);
    rep.max_error = std::max(rep.max_error, r.summary.pointwise_error);
    rep.max_closure_error = std::max(rep.max_closure_error, r.summary.closure_error);
    for (int c = 0; c < 3; ++c)
      rep.max_constant_error =
          std::max(rep.max_constant_error, (r.yy[c] - rep.fitted_constant * r.xk[c]).cwiseAbs().maxCoeff());
  }
  rep.passed = rep.max_error < tol && rep.max_constant_error < tol && rep.max_closure_error < tol;
  return rep;
}

GradientCrossCheck cross_validate_gradient(const MonotoneFunctionSpec& spec, const std::vector<Vec3>& points,
                                           std::uint64_t seed, Execution ex) {
  struct PointErrors {
    double spherical = 0.0;
    double cartesian = 0.0;
  };
  const auto errors = map_indices<PointErrors>(ex, points.size(), [&](std::size_t n) {
    std::mt19937_64 rng(derive_seed(seed, 0x67726164ULL, n));
    const std::array<TracelessObservable, 4> observables{TracelessObservable::sigma(1), TracelessObservable::sigma(2),
                                                         TracelessObservable::sigma(3), sample_observable(rng)};
    const Vec3& v = points[n];
    const auto p = spherical_from_cartesian(v);
    PointErrors e;
    for (const auto& a : observables) {
      const auto closed = gradient_field_closed(a, spec);
      const auto raised = gradient_field_from_metric(a, spec);
      const Vec3 cc = closed(v);
      const Vec3 cs = closed.at(p).components;
      e.cartesian = std::max(e.cartesian, (cc - raised(v)).cwiseAbs().maxCoeff() / std::max(1.0, cc.cwiseAbs().maxCoeff()));
      e.spherical = std::max(e.spherical, (cs - raised.at(p).components).cwiseAbs().maxCoeff() /
                                              std::max(1.0, cs.cwiseAbs().maxCoeff()));
    }
    return e;
  });
  GradientCrossCheck out;
  out.spec = spec.name();
  out.points = points.size();
  for (const auto& e : errors) {
    out.max_spherical_error = std::max(out.max_spherical_error, e.spherical);
    out.max_cartesian_error = std::max(out.max_cartesian_error, e.cartesian);
  }
  return out;
}

}  // namespace qig
