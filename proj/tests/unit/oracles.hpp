#pragma once

// Reference formulas written out independently of the library, used as test
// oracles. Nothing here calls into qig beyond the plain types.

#include <cmath>
#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace oracle {

using C = std::complex<double>;
using M2 = Eigen::Matrix2cd;
using V3 = Eigen::Vector3d;

inline M2 sigma(int j) {
  const C i(0.0, 1.0);
  M2 m;
  switch (j) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, i, -i, 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

inline M2 rho(const V3& v) { return 0.5 * (sigma(0) + v.x() * sigma(1) + v.y() * sigma(2) + v.z() * sigma(3)); }

inline M2 observable(const V3& a) { return a.x() * sigma(1) + a.y() * sigma(2) + a.z() * sigma(3); }

inline V3 bloch(const M2& m) {
  return {(m * sigma(1)).trace().real(), (m * sigma(2)).trace().real(), (m * sigma(3)).trace().real()};
}

inline double f_bh(double t) { return (1.0 + t) / 2.0; }
inline double f_wy(double t) { return (1.0 + std::sqrt(t)) * (1.0 + std::sqrt(t)) / 4.0; }
inline double f_bkm(double t) { return (t - 1.0) / std::log(t); }
inline double f_rld(double t) { return 2.0 * t / (1.0 + t); }
// Normalized so that f(1) = 1.
inline double f_a(double A, double t) {
  const double s = std::sqrt(A);
  return 0.5 * s * (1.0 - t) * (1.0 + std::pow(t, s)) / (1.0 - std::pow(t, s));
}

inline double g_of(const std::function<double(double)>& f, double r) {
  return (1.0 + r) / r * f((1.0 - r) / (1.0 + r));
}

/// (1 - r^2) g' + g^2 with g' from a 4-point central stencil.
inline double big_f(const std::function<double(double)>& f, double r, double h = 1e-4) {
  const double d = (-g_of(f, r + 2 * h) + 8 * g_of(f, r + h) - 8 * g_of(f, r - h) + g_of(f, r - 2 * h)) / (12 * h);
  const double g = g_of(f, r);
  return (1.0 - r * r) * d + g * g;
}

/// Gradient field of l_a = a.v in spherical components (r, theta, phi).
inline V3 gradient_spherical(const V3& a, double g, double r, double th, double ph) {
  const double l = r * (a.x() * std::sin(th) * std::cos(ph) + a.y() * std::sin(th) * std::sin(ph) + a.z() * std::cos(th));
  return {(1.0 - r * r) * l / r,
          g * (a.x() * std::cos(th) * std::cos(ph) + a.y() * std::cos(th) * std::sin(ph) - a.z() * std::sin(th)),
          g * (-a.x() * std::sin(ph) + a.y() * std::cos(ph)) / std::sin(th)};
}

/// X_b in spherical components.
inline V3 fundamental_spherical(const V3& b, double th, double ph) {
  const double cot = std::cos(th) / std::sin(th);
  return {0.0, -b.x() * std::sin(ph) + b.y() * std::cos(ph),
          -cot * (b.x() * std::cos(ph) + b.y() * std::sin(ph)) + b.z()};
}

inline Eigen::Matrix3d jacobian(double r, double th, double ph) {
  Eigen::Matrix3d J;
  J << std::sin(th) * std::cos(ph), r * std::cos(th) * std::cos(ph), -r * std::sin(th) * std::sin(ph),
      std::sin(th) * std::sin(ph), r * std::cos(th) * std::sin(ph), r * std::sin(th) * std::cos(ph), std::cos(th),
      -r * std::sin(th), 0.0;
  return J;
}

/// Spectral function of a Hermitian matrix.
template <class Fn>
Eigen::MatrixXcd apply(const Eigen::MatrixXcd& h, Fn fn) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  Eigen::VectorXd d = es.eigenvalues();
  for (Eigen::Index i = 0; i < d.size(); ++i) d[i] = fn(d[i]);
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

/// Bisection for a root of fn on [lo, hi] with a sign change.
inline double bisect(const std::function<double(double)>& fn, double lo, double hi, int iters = 200) {
  double flo = fn(lo);
  for (int k = 0; k < iters; ++k) {
    const double mid = 0.5 * (lo + hi);
    const double fm = fn(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle
