#include "qig/metric_family.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace qig {

namespace {

// Removable-singularity window around t = 1.
constexpr double kSeriesWindow = 1e-6;
// |cos(arg)| below this is treated as sitting on a tangent pole.
constexpr double kPoleCos = 1e-12;

std::string format_param(const char* label, double value) {
  std::ostringstream os;
  os.precision(17);
  os << label << value;
  return os.str();
}

// w = -log(t)/2, computed with log1p near t = 1.
double half_neg_log(double t) {
  if (t > 0.5 && t < 2.0) return -0.5 * std::log1p(t - 1.0);
  return -0.5 * std::log(t);
}

// sinh(w)/w and x/tanh(x), exact at 0.
double sinhc(double w) {
  if (std::abs(w) < 1e-4) {
    const double w2 = w * w;
    return 1.0 + w2 / 6.0 + w2 * w2 / 120.0;
  }
  return std::sinh(w) / w;
}

double x_coth_x(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 + x2 / 3.0 - x2 * x2 / 45.0;
  }
  return x / std::tanh(x);
}

double bkm_f(double t) {
  const double e = t - 1.0;
  if (std::abs(e) < kSeriesWindow) {
    return 1.0 + e * (0.5 + e * (-1.0 / 12.0 + e * (1.0 / 24.0 - e * 19.0 / 720.0)));
  }
  return e / std::log(t);
}

// (s/2)(1-t)(1+t^s)/(1-t^s) rewritten as e^{-w} (sinh w / w) (s w / tanh(s w))
// with t = e^{-2w}; the two quotients carry the series near t = 1.
double family_a_f(double s, double t) {
  const double w = half_neg_log(t);
  if (std::abs(t - 1.0) < kSeriesWindow) {
    const double w2 = w * w;
    const double x2 = s * s * w2;
    return std::exp(-w) * (1.0 + w2 / 6.0 + w2 * w2 / 120.0) * (1.0 + x2 / 3.0 - x2 * x2 / 45.0);
  }
  return std::exp(-w) * sinhc(w) * x_coth_x(s * w);
}

double family_b_f(double B, double c, double t) {
  const double rb = std::sqrt(B);
  const double arg = rb * (std::log(t) - c);
  const double cs = std::cos(arg);
  if (std::abs(cs) < kPoleCos) throw Error(ErrorCode::PoleError, format_param("tangent pole at t=", t));
  return rb * (1.0 - t) * std::sin(arg) / cs;
}

}  // namespace

MonotoneFunctionSpec MonotoneFunctionSpec::bkm() { return {FunctionKind::BKM, "bkm"}; }

MonotoneFunctionSpec MonotoneFunctionSpec::family_a(double A) {
  if (!(A > 0.0) || !std::isfinite(A)) throw Error(ErrorCode::InvalidInput, "FamilyA requires A > 0");
  MonotoneFunctionSpec s(FunctionKind::FamilyA, format_param("familyA(A=", A) + ")");
  s.A_ = A;
  return s;
}

MonotoneFunctionSpec MonotoneFunctionSpec::family_b(double B, double c) {
  if (!(B > 0.0) || !std::isfinite(B) || !std::isfinite(c))
    throw Error(ErrorCode::InvalidInput, "FamilyB requires B > 0 and finite c");
  MonotoneFunctionSpec s(FunctionKind::FamilyB,
                         format_param("familyB(B=", B) + format_param(",c=", c) + ")");
  s.B_ = B;
  s.c_ = c;
  s.A_ = -4.0 * B;
  return s;
}

MonotoneFunctionSpec MonotoneFunctionSpec::bures_helstrom() { return {FunctionKind::BuresHelstrom, "bh"}; }
MonotoneFunctionSpec MonotoneFunctionSpec::wigner_yanase() { return {FunctionKind::WignerYanase, "wy"}; }
MonotoneFunctionSpec MonotoneFunctionSpec::rld() { return {FunctionKind::RLD, "rld"}; }

MonotoneFunctionSpec MonotoneFunctionSpec::custom(std::string name, Fn f) {
  if (!f) throw Error(ErrorCode::InvalidInput, "custom spec needs a callable");
  MonotoneFunctionSpec s(FunctionKind::Custom, std::move(name));
  s.custom_ = std::move(f);
  return s;
}

double MonotoneFunctionSpec::evaluate_unrestricted(double t) const {
  if (!(t > 0.0) || !std::isfinite(t)) throw Error(ErrorCode::DomainError, "f requires t > 0");
  switch (kind_) {
    case FunctionKind::BKM: return bkm_f(t);
    case FunctionKind::FamilyA: return family_a_f(std::sqrt(A_), t);
    case FunctionKind::FamilyB: return family_b_f(B_, c_, t);
    case FunctionKind::BuresHelstrom: return 0.5 * (1.0 + t);
    case FunctionKind::WignerYanase: {
      const double q = 1.0 + std::sqrt(t);
      return 0.25 * q * q;
    }
    case FunctionKind::RLD: return 2.0 * t / (1.0 + t);
    case FunctionKind::Custom: return custom_(t);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

MonotoneFunctionSpec spec_from_name(const std::string& name, double A, double B, double c) {
  if (name == "bkm") return MonotoneFunctionSpec::bkm();
  if (name == "bh") return MonotoneFunctionSpec::bures_helstrom();
  if (name == "wy") return MonotoneFunctionSpec::wigner_yanase();
  if (name == "rld") return MonotoneFunctionSpec::rld();
  if (name == "familyA" || name == "alphaA" || name == "A") return MonotoneFunctionSpec::family_a(A);
  if (name == "familyB" || name == "B") return MonotoneFunctionSpec::family_b(B, c);
  throw Error(ErrorCode::InvalidInput, "unknown spec '" + name + "'");
}

double f_eval(const MonotoneFunctionSpec& spec, double t) {
  if (!(t > 0.0 && t <= 1.0)) throw Error(ErrorCode::DomainError, "f is evaluated on (0, 1]");
  return spec.evaluate_unrestricted(t);
}

double g_from_f(const MonotoneFunctionSpec& spec, double r) {
  if (!(r > 0.0 && r < 1.0)) throw Error(ErrorCode::DomainError, "g requires r in (0, 1)");
  return (1.0 + r) / r * f_eval(spec, t_from_r(r));
}

double g_prime_numeric(const MonotoneFunctionSpec& spec, double r, double h) {
  if (!(r - h > 0.0 && r + h < 1.0)) throw Error(ErrorCode::DomainError, "difference stencil leaves (0, 1)");
  auto central = [&](double step) {
    return (g_from_f(spec, r + step) - g_from_f(spec, r - step)) / (2.0 * step);
  };
  return (4.0 * central(0.5 * h) - central(h)) / 3.0;
}

double g_prime(const MonotoneFunctionSpec& spec, double r, double h) {
  if (!(r > 0.0 && r < 1.0)) throw Error(ErrorCode::DomainError, "g' requires r in (0, 1)");
  const double one_minus_r2 = 1.0 - r * r;
  const double u = std::atanh(r);
  switch (spec.kind()) {
    case FunctionKind::BKM: return -1.0 / (u * u * one_minus_r2);
    case FunctionKind::FamilyA: {
      const double s = std::sqrt(spec.A());
      const double sh = std::sinh(s * u);
      return -s * s / (sh * sh * one_minus_r2);
    }
    case FunctionKind::FamilyB: {
      const double rb = std::sqrt(spec.B());
      const double cs = std::cos(rb * (-2.0 * u - spec.c()));
      if (std::abs(cs) < kPoleCos) throw Error(ErrorCode::PoleError, "g' at a tangent pole");
      return -4.0 * spec.B() / (cs * cs * one_minus_r2);
    }
    case FunctionKind::BuresHelstrom: return -1.0 / (r * r);
    case FunctionKind::WignerYanase: {
      const double q = std::sqrt(one_minus_r2);
      return -(1.0 + q) / (2.0 * q * r * r);
    }
    case FunctionKind::RLD: return -1.0 / (r * r) - 1.0;
    case FunctionKind::Custom: return g_prime_numeric(spec, r, h);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double big_f(const MonotoneFunctionSpec& spec, double r) {
  const double g = g_from_f(spec, r);
  return (1.0 - r * r) * g_prime(spec, r) + g * g;
}

const char* to_string(Chart chart) { return chart == Chart::Spherical ? "spherical" : "cartesian"; }

namespace {

// Coefficient of the round part: r^2 / ((1+r) f(t)) = r^2 / (r g(r)).
double tangential_factor(const MonotoneFunctionSpec& spec, double r) {
  const double f = f_eval(spec, t_from_r(r));
  if (!(f > 0.0) || !std::isfinite(f))
    throw Error(ErrorCode::IndefiniteMetric, "f(t) must be positive for a Riemannian metric");
  return 1.0 / ((1.0 + r) * f);
}

}  // namespace

MetricAtPoint metric_spherical(const MonotoneFunctionSpec& spec, const SphericalPoint& p) {
  const double r = p.r();
  const double k = r * r * tangential_factor(spec, r);
  const double st = std::sin(p.theta());
  MetricAtPoint m;
  m.chart = Chart::Spherical;
  m.point = Vec3(p.r(), p.theta(), p.phi());
  m.components = Vec3(1.0 / (1.0 - r * r), k, k * st * st).asDiagonal();
  return m;
}

MetricAtPoint metric_cartesian(const MonotoneFunctionSpec& spec, const Vec3& v, double eps_chart) {
  const double r = v.norm();
  if (r >= 1.0) throw Error(ErrorCode::BoundaryViolation, "point is outside the open ball");
  if (r <= eps_chart) throw Error(ErrorCode::CenterSingularity, "metric components at the center");
  const Vec3 n = v / r;
  const double radial = 1.0 / (1.0 - r * r);
  const double tangential = tangential_factor(spec, r);
  MetricAtPoint m;
  m.chart = Chart::Cartesian;
  m.point = v;
  m.components = tangential * Mat3::Identity() + (radial - tangential) * (n * n.transpose());
  return m;
}

MetricAtPoint inverse_metric(const MetricAtPoint& m) {
  const Mat3 sym = 0.5 * (m.components + m.components.transpose());
  Eigen::SelfAdjointEigenSolver<Mat3> es(sym, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (!(lo > 0.0)) throw Error(ErrorCode::IndefiniteMetric, "metric is not positive definite");
  if (hi / lo > 1e12) throw Error(ErrorCode::IllConditioned, "condition number exceeds 1e12");
  MetricAtPoint out = m;
  const Mat3 inv = sym.inverse();
  out.components = 0.5 * (inv + inv.transpose());
  return out;
}

PetzSymmetryReport check_petz_symmetry(const MonotoneFunctionSpec& spec, const std::vector<double>& grid,
                                       double tol) {
  PetzSymmetryReport rep;
  rep.spec = spec.name();
  rep.tolerance = tol;
  constexpr double inf = std::numeric_limits<double>::infinity();
  try {
    double at_one = spec.evaluate_unrestricted(1.0);
    if (!std::isfinite(at_one)) at_one = spec.evaluate_unrestricted(1.0 - 1e-9);
    rep.unit_deviation = std::abs(at_one - 1.0);
  } catch (const Error&) {
    rep.unit_deviation = inf;
  }
  for (double t : grid) {
    double dev = inf;
    try {
      dev = std::abs(spec.evaluate_unrestricted(t) - t * spec.evaluate_unrestricted(1.0 / t));
    } catch (const Error&) {
    }
    if (!(dev <= rep.max_symmetry_deviation)) rep.max_symmetry_deviation = std::isnan(dev) ? inf : dev;
  }
  rep.passed = rep.unit_deviation < tol && rep.max_symmetry_deviation < tol;
  return rep;
}

double derivative_limit_at_zero(double A) {
  if (!(A > 1.0)) throw Error(ErrorCode::DomainError, "derivative limit is defined for A > 1");
  const auto spec = MonotoneFunctionSpec::family_a(A);
  std::vector<double> d;
  for (int k = 3; k <= 8; ++k) {
    const double t = std::pow(10.0, -k);
    d.push_back((spec.evaluate_unrestricted(1.5 * t) - spec.evaluate_unrestricted(0.5 * t)) / t);
  }
  // Leading error is C t^(sqrt(A)-1), geometric in k; Aitken's delta-squared
  // removes it without knowing the exponent. A second pass takes out the
  // next geometric term, which matters when sqrt(A) is close to 1.
  const auto aitken = [](const std::vector<double>& d) {
    std::vector<double> est;
    for (std::size_t i = 0; i + 2 < d.size(); ++i) {
      const double d1 = d[i + 1] - d[i];
      const double d2 = d[i + 2] - d[i + 1];
      const double scale = std::max(1.0, std::abs(d[i + 2]));
      if (std::abs(d2) < 1e-10 * scale || std::abs(d2 - d1) < 1e-14 * scale) {
        est.push_back(d[i + 2]);
      } else {
        est.push_back(d[i + 2] - d2 * d2 / (d2 - d1));
      }
    }
    return est;
  };
  const auto est = aitken(aitken(d));
  const double last = est.back();
  const double prev = est[est.size() - 2];
  if (!std::isfinite(last) || std::abs(last - prev) > 1e-5 * std::max(1.0, std::abs(last)))
    throw Error(ErrorCode::ExtrapolationUnstable, "derivative sequence did not settle");
  return last;
}

std::vector<double> linear_grid(double lo, double hi, int steps) {
  if (steps < 2) throw Error(ErrorCode::InvalidInput, "grid needs at least 2 points");
  std::vector<double> g(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (steps - 1);
  return g;
}

}  // namespace qig
