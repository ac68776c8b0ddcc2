#pragma once

// Petz monotone metric family on the Bloch ball: the catalog of functions f,
// the radial functions g(r) and F(r), and metric components in both charts.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qig/state_space.hpp"

namespace qig {

enum class FunctionKind { BKM, FamilyA, FamilyB, BuresHelstrom, WignerYanase, RLD, Custom };

class MonotoneFunctionSpec {
 public:
  using Fn = std::function<double(double)>;

  static MonotoneFunctionSpec bkm();
  /// f_A(t) = (sqrt(A)/2) (1-t) (1+t^sqrt(A)) / (1-t^sqrt(A)), A > 0.
  static MonotoneFunctionSpec family_a(double A);
  /// f_B(t) = sqrt(B) (1-t) tan(sqrt(B) log t - sqrt(B) c), B > 0.
  static MonotoneFunctionSpec family_b(double B, double c);
  static MonotoneFunctionSpec bures_helstrom();
  static MonotoneFunctionSpec wigner_yanase();
  static MonotoneFunctionSpec rld();
  /// `f` must be defined on (0, inf) for the symmetry check; only (0, 1] is
  /// used elsewhere.
  static MonotoneFunctionSpec custom(std::string name, Fn f);

  FunctionKind kind() const { return kind_; }
  double A() const { return A_; }
  double B() const { return B_; }
  double c() const { return c_; }
  const std::string& name() const { return name_; }

  /// Intended as a Petz function: f(1) = 1 and f(t) = t f(1/t).
  bool is_petz_class() const { return kind_ != FunctionKind::FamilyB && kind_ != FunctionKind::Custom; }
  bool has_analytic_derivative() const { return kind_ != FunctionKind::Custom; }

  /// Evaluates the defining formula for any t > 0, without the (0, 1] domain
  /// restriction. Removable singularities at t = 1 use a series.
  double evaluate_unrestricted(double t) const;

 private:
  MonotoneFunctionSpec(FunctionKind kind, std::string name) : kind_(kind), name_(std::move(name)) {}

  FunctionKind kind_;
  std::string name_;
  double A_ = 0.0;
  double B_ = 0.0;
  double c_ = 0.0;
  Fn custom_;
};

/// Parses "bkm", "bh", "wy", "rld", "familyA"/"alphaA" (needs A),
/// "familyB" (needs B, c). Throws InvalidInput.
MonotoneFunctionSpec spec_from_name(const std::string& name, double A = 0.0, double B = 0.0,
                                    double c = 0.0);

/// f(t) for t in (0, 1]; DomainError outside, PoleError at FamilyB poles.
double f_eval(const MonotoneFunctionSpec& spec, double t);

/// t = (1-r)/(1+r).
inline double t_from_r(double r) { return (1.0 - r) / (1.0 + r); }
inline double r_from_t(double t) { return (1.0 - t) / (1.0 + t); }

/// g(r) = ((1+r)/r) f((1-r)/(1+r)), r in (0,1).
double g_from_f(const MonotoneFunctionSpec& spec, double r);

/// g'(r): closed form for catalog kinds, Richardson-extrapolated central
/// differences (step `h`) for Custom.
double g_prime(const MonotoneFunctionSpec& spec, double r, double h = 1e-6);
double g_prime_numeric(const MonotoneFunctionSpec& spec, double r, double h = 1e-6);

/// F(r) = (1 - r^2) g'(r) + g(r)^2.
double big_f(const MonotoneFunctionSpec& spec, double r);

enum class Chart { Spherical, Cartesian };
const char* to_string(Chart chart);

struct MetricAtPoint {
  Chart chart = Chart::Cartesian;
  Mat3 components = Mat3::Identity();
  /// Point coordinates in `chart`: (r, theta, phi) or (x, y, z).
  Vec3 point = Vec3::Zero();
};

/// diag(1/(1-r^2), r^2/((1+r) f(t)), r^2 sin^2(theta)/((1+r) f(t))).
/// Throws IndefiniteMetric when f(t) <= 0.
MetricAtPoint metric_spherical(const MonotoneFunctionSpec& spec, const SphericalPoint& p);

/// Cartesian components; well defined on the polar axis, CenterSingularity
/// for r <= eps_chart.
MetricAtPoint metric_cartesian(const MonotoneFunctionSpec& spec, const Vec3& v,
                               double eps_chart = kDefaultChartEps);

/// Throws IndefiniteMetric if not positive definite, IllConditioned if the
/// condition number exceeds 1e12.
MetricAtPoint inverse_metric(const MetricAtPoint& m);

struct PetzSymmetryReport {
  std::string spec;
  double max_symmetry_deviation = 0.0;  // max |f(t) - t f(1/t)|
  double unit_deviation = 0.0;          // |f(1) - 1|
  double tolerance = 1e-9;
  bool passed = false;
};

PetzSymmetryReport check_petz_symmetry(const MonotoneFunctionSpec& spec, const std::vector<double>& grid,
                                       double tol = 1e-9);

/// Extrapolated limit of f_A'(t) as t -> 0+, A > 1. Throws DomainError for
/// A <= 1 and ExtrapolationUnstable if the sequence does not settle.
double derivative_limit_at_zero(double A);

/// Uniform grid of `steps` points from lo to hi inclusive.
std::vector<double> linear_grid(double lo, double hi, int steps);

}  // namespace qig
