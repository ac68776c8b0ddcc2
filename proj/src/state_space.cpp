#include "qig/state_space.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace qig {

namespace {
constexpr Complex kI{0.0, 1.0};
}

Vec3 sample_ball_point(std::mt19937_64& rng, double r_lo, double r_hi, double theta_margin) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = r_lo + (r_hi - r_lo) * unit(rng);
  const double theta = theta_margin + (std::numbers::pi - 2.0 * theta_margin) * unit(rng);
  const double phi = 2.0 * std::numbers::pi * unit(rng);
  return {r * std::sin(theta) * std::cos(phi), r * std::sin(theta) * std::sin(phi), r * std::cos(theta)};
}

TracelessObservable sample_observable(std::mt19937_64& rng, double sigma) {
  std::normal_distribution<double> normal(0.0, sigma);
  const double a1 = normal(rng);
  const double a2 = normal(rng);
  const double a3 = normal(rng);
  return TracelessObservable(a1, a2, a3);
}

double hermiticity_defect(const Mat2& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermitianMatrix2::HermitianMatrix2(const Mat2& m, double tol) {
  if (hermiticity_defect(m) > tol) throw Error(ErrorCode::NotHermitian, "matrix is not self-adjoint");
  m_ = 0.5 * (m + m.adjoint());
}

std::array<HermitianMatrix2, 4> pauli_basis() {
  Mat2 s0, s1, s2, s3;
  s0 << 1, 0, 0, 1;
  s1 << 0, 1, 1, 0;
  // i|1><2| - i|2><1|
  s2 << 0, kI, -kI, 0;
  s3 << 1, 0, 0, -1;
  return {HermitianMatrix2(s0), HermitianMatrix2(s1), HermitianMatrix2(s2), HermitianMatrix2(s3)};
}

TracelessObservable TracelessObservable::sigma(int j) {
  if (j < 1 || j > 3) throw Error(ErrorCode::InvalidInput, "Pauli index must be 1, 2 or 3");
  Vec3 c = Vec3::Zero();
  c[j - 1] = 1.0;
  return TracelessObservable(c);
}

TracelessObservable TracelessObservable::from_matrix(const Mat2& m, double tol) {
  if (std::abs(m.trace()) > tol) throw Error(ErrorCode::InvalidInput, "observable is not traceless");
  if (hermiticity_defect(m) > tol) throw Error(ErrorCode::NotHermitian, "observable is not self-adjoint");
  const auto basis = pauli_basis();
  Vec3 c;
  for (int j = 1; j <= 3; ++j) c[j - 1] = 0.5 * (m * basis[j].matrix()).trace().real();
  return TracelessObservable(c);
}

Mat2 TracelessObservable::matrix() const {
  Mat2 m;
  m << coeffs_[2], Complex(coeffs_[0], coeffs_[1]), Complex(coeffs_[0], -coeffs_[1]), -coeffs_[2];
  return m;
}

TracelessObservable su2_bracket(const TracelessObservable& a, const TracelessObservable& b) {
  return TracelessObservable(a.coeffs().cross(b.coeffs()));
}

TracelessObservable matrix_commutator(const TracelessObservable& a, const TracelessObservable& b) {
  const Mat2 am = a.matrix();
  const Mat2 bm = b.matrix();
  return TracelessObservable::from_matrix((am * bm - bm * am) / Complex(0.0, 2.0));
}

QubitState state_from_bloch(const Vec3& v, double eps_boundary) {
  if (!v.allFinite()) throw Error(ErrorCode::InvalidInput, "non-finite Bloch vector");
  if (v.squaredNorm() >= 1.0 - eps_boundary)
    throw Error(ErrorCode::BoundaryViolation, "Bloch point is not strictly inside the unit ball");
  Mat2 m;
  m << 0.5 * (1.0 + v.z()), 0.5 * Complex(v.x(), v.y()), 0.5 * Complex(v.x(), -v.y()),
      0.5 * (1.0 - v.z());
  return QubitState(m, v);
}

QubitState bloch_from_state(const HermitianMatrix2& h, double eps_boundary) {
  const Mat2& m = h.matrix();
  if (std::abs(h.trace() - 1.0) > 1e-12) throw Error(ErrorCode::NotAState, "trace differs from 1");
  Eigen::SelfAdjointEigenSolver<Mat2> es(m, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= eps_boundary)
    throw Error(ErrorCode::NotAState, "state is not faithful");
  // x = Tr(m s1), y = Tr(m s2), z = Tr(m s3), written out entrywise.
  const Vec3 v(2.0 * m(1, 0).real(), -2.0 * m(1, 0).imag(), (m(0, 0) - m(1, 1)).real());
  return QubitState(m, v);
}

SphericalPoint SphericalPoint::make(double r, double theta, double phi) {
  if (!(std::isfinite(r) && std::isfinite(theta) && std::isfinite(phi)))
    throw Error(ErrorCode::InvalidInput, "non-finite chart coordinates");
  if (r >= 1.0) throw Error(ErrorCode::BoundaryViolation, "r must be < 1");
  if (r <= 0.0) throw Error(ErrorCode::ChartSingularity, "r must be > 0");
  if (theta <= 0.0 || theta >= std::numbers::pi)
    throw Error(ErrorCode::ChartSingularity, "theta must lie strictly inside (0, pi)");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double wrapped = std::fmod(phi, two_pi);
  if (wrapped < 0.0) wrapped += two_pi;
  if (wrapped >= two_pi) wrapped = 0.0;
  return SphericalPoint(r, theta, wrapped);
}

SphericalPoint spherical_from_cartesian(const Vec3& v, double eps_chart) {
  const double r = v.norm();
  if (r >= 1.0) throw Error(ErrorCode::BoundaryViolation, "point is outside the open ball");
  if (r <= eps_chart) throw Error(ErrorCode::ChartSingularity, "center of the ball");
  if (std::abs(v.z()) / r >= 1.0 - eps_chart) throw Error(ErrorCode::ChartSingularity, "polar axis");
  const double theta = std::acos(v.z() / r);
  const double phi = std::atan2(v.y(), v.x());
  return SphericalPoint::make(r, theta, phi);
}

Vec3 cartesian_from_spherical(const SphericalPoint& p) {
  const double st = std::sin(p.theta());
  return {p.r() * st * std::cos(p.phi()), p.r() * st * std::sin(p.phi()), p.r() * std::cos(p.theta())};
}

Mat3 spherical_jacobian(const SphericalPoint& p) {
  const double r = p.r();
  const double st = std::sin(p.theta()), ct = std::cos(p.theta());
  const double sp = std::sin(p.phi()), cp = std::cos(p.phi());
  Mat3 j;
  j << st * cp, r * ct * cp, -r * st * sp,
       st * sp, r * ct * sp, r * st * cp,
       ct, -r * st, 0.0;
  return j;
}

double expectation_value(const TracelessObservable& a, const SphericalPoint& p) {
  const double st = std::sin(p.theta());
  return a[0] * p.r() * st * std::cos(p.phi()) + a[1] * p.r() * st * std::sin(p.phi()) +
         a[2] * p.r() * std::cos(p.theta());
}

double expectation_value(const TracelessObservable& a, const Vec3& bloch) {
  return a.coeffs().dot(bloch);
}

double trace_expectation(const TracelessObservable& a, const QubitState& rho) {
  return (rho.matrix() * a.matrix()).trace().real();
}

}  // namespace qig
