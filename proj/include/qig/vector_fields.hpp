#pragma once

// Fundamental SU(2) fields, gradient fields of expectation values, numeric
// Lie brackets and the commutator checks built on them.

#include <functional>
#include <string>
#include <vector>

#include "qig/metric_family.hpp"
#include "qig/parallel.hpp"

namespace qig {

struct TangentVector {
  Chart chart = Chart::Cartesian;
  Vec3 components = Vec3::Zero();
  /// Base point in the same chart: (x,y,z) or (r,theta,phi).
  Vec3 base = Vec3::Zero();
};

TangentVector to_cartesian(const TangentVector& v);
/// Throws ChartSingularity if the base point is off the spherical chart.
TangentVector to_spherical(const TangentVector& v, double eps_chart = kDefaultChartEps);

enum class FieldKind { Fundamental, Gradient, GradientFromMetric, RescaledGradient, Custom };
const char* to_string(FieldKind kind);

struct FieldDescriptor {
  FieldKind kind = FieldKind::Custom;
  Vec3 label = Vec3::Zero();  // Pauli coefficients of the generating observable
  std::string spec;           // metric name, empty for fundamental fields
  double scale = 1.0;

  std::string describe() const;
};

class VectorField {
 public:
  using CartesianFn = std::function<Vec3(const Vec3&)>;
  using SphericalFn = std::function<Vec3(const SphericalPoint&)>;

  VectorField(FieldDescriptor descriptor, CartesianFn cartesian, SphericalFn spherical = {});

  /// Cartesian components at the Bloch point v.
  Vec3 operator()(const Vec3& v) const { return cartesian_(v); }
  TangentVector at(const Vec3& v) const;
  /// Spherical components; uses the chart formula when the field has one,
  /// otherwise pulls the Cartesian evaluator back through the Jacobian.
  TangentVector at(const SphericalPoint& p) const;

  const FieldDescriptor& descriptor() const { return descriptor_; }
  bool has_spherical_form() const { return static_cast<bool>(spherical_); }

  VectorField scaled(double s) const;
  friend VectorField operator+(const VectorField& a, const VectorField& b);

 private:
  FieldDescriptor descriptor_;
  CartesianFn cartesian_;
  SphericalFn spherical_;
};

/// b1 X1 + b2 X2 + b3 X3. In Cartesian form, v -> b x v.
VectorField fundamental_field(const TracelessObservable& b);

/// a1 Y1 + a2 Y2 + a3 Y3 from the closed-form expressions in terms of g(r).
/// The Cartesian evaluator extends continuously to the center.
VectorField gradient_field_closed(const TracelessObservable& a, const MonotoneFunctionSpec& spec);

/// G_f^{-1}(dl_a, .) assembled from metric components and inverse_metric.
VectorField gradient_field_from_metric(const TracelessObservable& a, const MonotoneFunctionSpec& spec);

/// (1/sqrt(A)) times the gradient field of FamilyA(A).
VectorField rescaled_gradient_field(const TracelessObservable& a, double A);

VectorField zero_field();

/// [V, W] = DW.V - DV.W at p (Cartesian chart), Jacobians by central
/// differences at h and h/2 combined by Richardson extrapolation.
/// Throws NeighborhoodOutsideBall if |p| + 2h >= 1 - eps_boundary.
TangentVector lie_bracket_numeric(const VectorField& v, const VectorField& w, const Vec3& p, double h = 1e-4,
                                  double eps_boundary = kDefaultBoundaryEps);

/// Sign s with [X1, X2] = s X3 under the bracket convention above, measured
/// at `p` and rounded to +-1.
int measure_fundamental_bracket_sign(const Vec3& p, double h = 1e-4);

struct CommutatorPointResult {
  Vec3 point = Vec3::Zero();
  double F = 0.0;
  Vec3 coefficients = Vec3::Zero();  // measured c_k with [Y_i, Y_j] ~ c_k X_k
  double pointwise_error = 0.0;      // max |[Y_i,Y_j] - F(r) X_k|
  double closure_error = 0.0;        // max |[X_i,Y_j] - s Y_{e_i x e_j}|
};

struct CommutatorReport {
  std::string spec;
  double h = 1e-4;
  double tolerance = 1e-6;
  std::vector<CommutatorPointResult> points;
  int convention_sign = 0;      // [X1,X2] = convention_sign * X3
  int mixed_sign = 0;           // [X_i,Y_j] = mixed_sign * Y_{[i,j]}
  double fitted_constant = 0.0; // least-squares A in [Y_i,Y_j] = A X_k
  double max_error = 0.0;       // pointwise law against F(r)
  double max_constant_error = 0.0;
  double max_closure_error = 0.0;
  bool passed = false;          // all three errors below tolerance
};

CommutatorReport verify_commutator_relations(const MonotoneFunctionSpec& spec, const std::vector<Vec3>& points,
                                             double h = 1e-4, double tol = 1e-6,
                                             Execution ex = Execution::Parallel);

struct GradientCrossCheck {
  std::string spec;
  std::size_t points = 0;
  double max_spherical_error = 0.0;  // closed vs metric-raised, spherical chart
  double max_cartesian_error = 0.0;  // same, Cartesian chart
  double max_error() const { return std::max(max_spherical_error, max_cartesian_error); }
};

/// Compares gradient_field_closed with gradient_field_from_metric for
/// observable sigma_1, sigma_2, sigma_3 and a random mix at every point.
/// Errors are relative to max(1, |Y|).
GradientCrossCheck cross_validate_gradient(const MonotoneFunctionSpec& spec, const std::vector<Vec3>& points,
                                           std::uint64_t seed, Execution ex = Execution::Parallel);

}  // namespace qig
