#pragma once

// Faithful qubit states, Bloch coordinates, the Pauli algebra and
// expectation-value functions.

#include <array>
#include <complex>
#include <random>

#include <Eigen/Dense>

#include "qig/errors.hpp"

namespace qig {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kDefaultBoundaryEps = 1e-9;
inline constexpr double kDefaultChartEps = 1e-9;
inline constexpr double kHermitianTol = 1e-14;

class HermitianMatrix2 {
 public:
  HermitianMatrix2() : m_(Mat2::Zero()) {}
  /// Throws NotHermitian if m deviates from m^dagger by more than `tol`
  /// entrywise. The stored matrix is the exact Hermitian part.
  explicit HermitianMatrix2(const Mat2& m, double tol = kHermitianTol);

  const Mat2& matrix() const { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }
  double trace() const { return m_.trace().real(); }

  friend HermitianMatrix2 operator*(double s, const HermitianMatrix2& h) {
    return HermitianMatrix2(s * h.m_);
  }
  friend HermitianMatrix2 operator+(const HermitianMatrix2& a, const HermitianMatrix2& b) {
    return HermitianMatrix2(a.m_ + b.m_);
  }

 private:
  Mat2 m_;
};

/// Returns (sigma0, sigma1, sigma2, sigma3) in the fixed basis {|1>, |2>}.
/// sigma2 has +i in row |1>, column |2>.
std::array<HermitianMatrix2, 4> pauli_basis();

/// Traceless Hermitian operator a1 s1 + a2 s2 + a3 s3, stored by its Pauli
/// coefficients so the zero-trace invariant holds by construction.
class TracelessObservable {
 public:
  TracelessObservable() : coeffs_(Vec3::Zero()) {}
  explicit TracelessObservable(const Vec3& coeffs) : coeffs_(coeffs) {}
  TracelessObservable(double a1, double a2, double a3) : coeffs_(a1, a2, a3) {}

  static TracelessObservable sigma(int j);  // j in {1,2,3}

  /// Decomposes a traceless Hermitian matrix; throws InvalidInput if the
  /// trace exceeds `tol`.
  static TracelessObservable from_matrix(const Mat2& m, double tol = 1e-12);

  const Vec3& coeffs() const { return coeffs_; }
  double operator[](int i) const { return coeffs_[i]; }
  Mat2 matrix() const;

  friend TracelessObservable operator*(double s, const TracelessObservable& a) {
    return TracelessObservable(s * a.coeffs_);
  }
  friend TracelessObservable operator+(const TracelessObservable& a, const TracelessObservable& b) {
    return TracelessObservable(a.coeffs_ + b.coeffs_);
  }

 private:
  Vec3 coeffs_;
};

/// Bracket with [s1, s2] = s3 and cyclic: the cross product of Pauli
/// coefficients.
TracelessObservable su2_bracket(const TracelessObservable& a, const TracelessObservable& b);
/// (ab - ba) / (2i) computed on matrices. With s2 = i|1><2| - i|2><1| this
/// is -su2_bracket(a, b).
TracelessObservable matrix_commutator(const TracelessObservable& a, const TracelessObservable& b);

class QubitState {
 public:
  const Mat2& matrix() const { return matrix_; }
  const Vec3& bloch() const { return bloch_; }
  double radius() const { return bloch_.norm(); }

 private:
  QubitState(const Mat2& m, const Vec3& b) : matrix_(m), bloch_(b) {}
  friend QubitState state_from_bloch(const Vec3&, double);
  friend QubitState bloch_from_state(const HermitianMatrix2&, double);

  Mat2 matrix_;
  Vec3 bloch_;
};

/// rho = (s0 + x s1 + y s2 + z s3) / 2. Throws BoundaryViolation unless
/// |v|^2 < 1 - eps_boundary.
QubitState state_from_bloch(const Vec3& v, double eps_boundary = kDefaultBoundaryEps);
inline QubitState state_from_bloch(double x, double y, double z,
                                   double eps_boundary = kDefaultBoundaryEps) {
  return state_from_bloch(Vec3(x, y, z), eps_boundary);
}

/// Inverse of state_from_bloch. Throws NotAState if the trace is not 1 or an
/// eigenvalue is <= eps_boundary.
QubitState bloch_from_state(const HermitianMatrix2& m, double eps_boundary = kDefaultBoundaryEps);

/// Chart point with r in (0,1), theta in (0,pi), phi in [0, 2pi).
class SphericalPoint {
 public:
  /// Validates r and theta (ChartSingularity / BoundaryViolation) and wraps
  /// phi into [0, 2pi).
  static SphericalPoint make(double r, double theta, double phi);

  double r() const { return r_; }
  double theta() const { return theta_; }
  double phi() const { return phi_; }

 private:
  SphericalPoint(double r, double theta, double phi) : r_(r), theta_(theta), phi_(phi) {}
  double r_, theta_, phi_;
};

SphericalPoint spherical_from_cartesian(const Vec3& v, double eps_chart = kDefaultChartEps);
Vec3 cartesian_from_spherical(const SphericalPoint& p);

/// d(x,y,z)/d(r,theta,phi), columns are the coordinate basis vectors.
Mat3 spherical_jacobian(const SphericalPoint& p);

/// l_a(rho) = Tr(rho a) = a1 x + a2 y + a3 z.
double expectation_value(const TracelessObservable& a, const SphericalPoint& p);
double expectation_value(const TracelessObservable& a, const Vec3& bloch);
/// Matrix-side Tr(rho a), kept independent of the Bloch formula.
double trace_expectation(const TracelessObservable& a, const QubitState& rho);

/// Uniform in r on [r_lo, r_hi], theta uniform on [margin, pi - margin],
/// phi uniform on [0, 2pi); returned in Cartesian form.
Vec3 sample_ball_point(std::mt19937_64& rng, double r_lo, double r_hi, double theta_margin);
/// Pauli coefficients drawn i.i.d. normal with the given standard deviation.
TracelessObservable sample_observable(std::mt19937_64& rng, double sigma = 1.0);

/// Largest entrywise deviation |m - m^dagger|.
double hermiticity_defect(const Mat2& m);

}  // namespace qig
