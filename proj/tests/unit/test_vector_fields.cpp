#include "doctest.h"

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qig/vector_fields.hpp"

using namespace qig;

namespace {

template <class Fn>
ErrorCode code_of(Fn fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected qig::Error");
  return ErrorCode::InvalidInput;
}

VectorField linear_field(const Mat3& M) {
  return VectorField(FieldDescriptor{}, [M](const Vec3& v) -> Vec3 { return M * v; });
}

std::vector<Vec3> points(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  std::vector<Vec3> out;
  for (int i = 0; i < n; ++i) out.push_back(sample_ball_point(rng, 0.1, 0.9, 0.2));
  return out;
}

}  // namespace

TEST_CASE("fundamental field examples") {
  const auto X3 = fundamental_field(TracelessObservable::sigma(3));
  for (double th : {0.3, 1.0, 2.5}) {
    const auto v = X3.at(SphericalPoint::make(0.4, th, 1.1));
    CHECK((v.components - Vec3(0, 0, 1)).norm() < 1e-15);
  }
  const auto X1 = fundamental_field(TracelessObservable::sigma(1));
  CHECK(X1.at(SphericalPoint::make(0.5, std::numbers::pi / 2, 0.0)).components.norm() < 1e-15);
}

TEST_CASE("fundamental field matches the spherical formula and is tangential") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200; ++i) {
    const Vec3 v = sample_ball_point(rng, 0.05, 0.95, 0.05);
    const auto b = sample_observable(rng);
    const auto s = spherical_from_cartesian(v);
    const auto X = fundamental_field(b);
    const Vec3 want = oracle::fundamental_spherical(b.coeffs(), s.theta(), s.phi());
    CHECK((X.at(s).components - want).norm() < 1e-12);
    CHECK(X.at(s).components[0] == 0.0);
    // Cartesian evaluator pushed through the chart Jacobian.
    CHECK((oracle::jacobian(s.r(), s.theta(), s.phi()) * want - X(v)).norm() < 1e-12);
    CHECK(std::abs(X(v).dot(v)) < 1e-15);
  }
}

TEST_CASE("gradient field examples") {
  const auto bh = MonotoneFunctionSpec::bures_helstrom();
  const auto Y3 = gradient_field_closed(TracelessObservable::sigma(3), bh);
  const auto y = Y3.at(SphericalPoint::make(0.5, std::numbers::pi / 4, 0.0)).components;
  CHECK(y[0] == doctest::Approx(0.75 * std::cos(std::numbers::pi / 4)));
  CHECK(y[1] == doctest::Approx(-2.0 * std::sin(std::numbers::pi / 4)));
  CHECK(std::abs(y[2]) < 1e-15);
  const auto eq = Y3.at(SphericalPoint::make(0.3, std::numbers::pi / 2, 0.7)).components;
  CHECK(std::abs(eq[0]) < 1e-15);
  CHECK(eq[1] == doctest::Approx(-g_from_f(bh, 0.3)));
  const auto Y1 = gradient_field_closed(TracelessObservable::sigma(1), bh);
  const auto w = Y1.at(SphericalPoint::make(0.3, std::numbers::pi / 2, std::numbers::pi / 2)).components;
  CHECK(std::abs(w[0]) < 1e-15);
  CHECK(std::abs(w[1]) < 1e-15);
  CHECK(w[2] == doctest::Approx(-g_from_f(bh, 0.3)));
  const auto m = gradient_field_from_metric(TracelessObservable::sigma(3), bh);
  CHECK((m.at(SphericalPoint::make(0.5, std::numbers::pi / 4, 0.0)).components - y).norm() < 1e-12);
  CHECK(gradient_field_from_metric(TracelessObservable(), bh)(Vec3(0.1, 0.2, 0.3)).norm() == 0.0);
}

TEST_CASE("gradient field matches the direct spherical formula") {
  std::mt19937_64 rng(4);
  const std::vector<std::pair<MonotoneFunctionSpec, std::function<double(double)>>> cases = {
      {MonotoneFunctionSpec::bkm(), oracle::f_bkm},
      {MonotoneFunctionSpec::bures_helstrom(), oracle::f_bh},
      {MonotoneFunctionSpec::wigner_yanase(), oracle::f_wy},
      {MonotoneFunctionSpec::rld(), oracle::f_rld},
      {MonotoneFunctionSpec::family_a(2.0), [](double t) { return oracle::f_a(2.0, t); }},
  };
  for (const auto& [spec, f] : cases) {
    for (int i = 0; i < 200; ++i) {
      const Vec3 v = sample_ball_point(rng, 0.02, 0.98, 0.05);
      const auto a = sample_observable(rng);
      const auto s = spherical_from_cartesian(v);
      const Vec3 want = oracle::gradient_spherical(a.coeffs(), oracle::g_of(f, s.r()), s.r(), s.theta(), s.phi());
      const auto Y = gradient_field_closed(a, spec);
      CHECK((Y.at(s).components - want).norm() < 1e-10 * std::max(1.0, want.norm()));
      CHECK((Y(v) - oracle::jacobian(s.r(), s.theta(), s.phi()) * want).norm() < 1e-10 * std::max(1.0, want.norm()));
    }
  }
}

TEST_CASE("closed and metric-raised gradients agree at 1000 points") {
  std::mt19937_64 rng(8);
  std::vector<Vec3> pts;
  for (int i = 0; i < 1000; ++i) pts.push_back(sample_ball_point(rng, 0.02, 0.98, 0.05));
  for (const auto& s : {MonotoneFunctionSpec::bkm(), MonotoneFunctionSpec::bures_helstrom(),
                        MonotoneFunctionSpec::wigner_yanase(), MonotoneFunctionSpec::family_a(0.5),
                        MonotoneFunctionSpec::family_a(2.0), MonotoneFunctionSpec::rld()}) {
    const auto r = cross_validate_gradient(s, pts, 1);
    CHECK(r.max_error() < 1e-10);
  }
}

TEST_CASE("gradient field extends continuously to the center") {
  for (const auto& s : {MonotoneFunctionSpec::bkm(), MonotoneFunctionSpec::wigner_yanase()}) {
    const auto Y = gradient_field_closed(TracelessObservable(0.2, -0.4, 0.9), s);
    const Vec3 dir = Vec3(1, 2, -1).normalized();
    CHECK((Y(1e-4 * dir) - Y(1e-5 * dir)).norm() < 1e-3);
    CHECK(Y(Vec3::Zero()).allFinite());
  }
}

TEST_CASE("rescaled gradient field") {
  const auto a = TracelessObservable(0.3, 0.1, -0.7);
  const Vec3 p(0.2, -0.3, 0.4);
  CHECK((rescaled_gradient_field(a, 1.0)(p) - gradient_field_closed(a, MonotoneFunctionSpec::bures_helstrom())(p))
            .norm() < 1e-14);
  CHECK((rescaled_gradient_field(a, 4.0)(p) - 0.5 * gradient_field_closed(a, MonotoneFunctionSpec::family_a(4.0))(p))
            .norm() < 1e-15);
  CHECK(rescaled_gradient_field(TracelessObservable(), 2.0)(p).norm() == 0.0);
}

TEST_CASE("numeric bracket of linear fields is the matrix commutator") {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> n;
  for (int i = 0; i < 20; ++i) {
    Mat3 M, N;
    for (int k = 0; k < 9; ++k) {
      M.data()[k] = n(rng);
      N.data()[k] = n(rng);
    }
    const Vec3 p = sample_ball_point(rng, 0.1, 0.8, 0.0);
    const Vec3 want = (N * M - M * N) * p;
    CHECK((lie_bracket_numeric(linear_field(M), linear_field(N), p).components - want).norm() < 1e-9);
  }
}

TEST_CASE("bracket trivial identities") {
  const auto V = gradient_field_closed(TracelessObservable(0.3, 0.5, 0.1), MonotoneFunctionSpec::wigner_yanase());
  const auto W = fundamental_field(TracelessObservable(-0.2, 0.4, 0.9));
  const Vec3 p(0.2, 0.3, -0.1);
  CHECK(lie_bracket_numeric(V, V, p).components.norm() < 1e-9);
  CHECK((lie_bracket_numeric(V.scaled(2.0), W, p).components - 2.0 * lie_bracket_numeric(V, W, p).components)
            .norm() < 1e-9);
  CHECK(code_of([&] { lie_bracket_numeric(V, W, Vec3(0.9999, 0, 0)); }) == ErrorCode::NeighborhoodOutsideBall);
}

TEST_CASE("fundamental bracket convention is pinned") {
  // Under [V,W] = DW.V - DV.W, linear rotation generators b x v give
  // [X_a, X_b] = -X_{a x b}.
  for (const auto& p : points(31, 10)) CHECK(measure_fundamental_bracket_sign(p) == -1);
  const auto X1 = fundamental_field(TracelessObservable::sigma(1));
  const auto X2 = fundamental_field(TracelessObservable::sigma(2));
  const auto X3 = fundamental_field(TracelessObservable::sigma(3));
  const Vec3 p(0.3, -0.2, 0.4);
  CHECK((lie_bracket_numeric(X1, X2, p).components + X3(p)).norm() < 1e-10);
}

TEST_CASE("commutator law for constant-F metrics") {
  const auto pts = points(41, 50);
  for (const auto& [spec, F] : std::vector<std::pair<MonotoneFunctionSpec, double>>{
           {MonotoneFunctionSpec::bkm(), 0.0},
           {MonotoneFunctionSpec::bures_helstrom(), 1.0},
           {MonotoneFunctionSpec::wigner_yanase(), 0.25},
           {MonotoneFunctionSpec::family_a(2.0), 2.0}}) {
    const auto r = verify_commutator_relations(spec, pts);
    CHECK(r.passed);
    CHECK(r.max_error < 1e-6);
    CHECK(r.fitted_constant == doctest::Approx(F).epsilon(1e-6));
    CHECK(r.convention_sign == -1);
    CHECK(r.mixed_sign == -1);
  }
}

TEST_CASE("commutators against the stencil F of the direct formula") {
  // [Y_1, Y_2] compared with F(r) X_3, F from the independent oracle.
  const auto wy = MonotoneFunctionSpec::wigner_yanase();
  const auto Y1 = gradient_field_closed(TracelessObservable::sigma(1), wy);
  const auto Y2 = gradient_field_closed(TracelessObservable::sigma(2), wy);
  const auto X3 = fundamental_field(TracelessObservable::sigma(3));
  for (const auto& p : points(43, 10)) {
    const double F = oracle::big_f(oracle::f_wy, p.norm());
    CHECK((lie_bracket_numeric(Y1, Y2, p).components - F * X3(p)).norm() < 1e-6);
  }
}

TEST_CASE("rld brackets follow F(r) but no constant") {
  const auto r = verify_commutator_relations(MonotoneFunctionSpec::rld(), points(47, 50));
  CHECK(r.max_error < 1e-6);
  CHECK(r.max_constant_error > 1e-2);
  CHECK_FALSE(r.passed);
}

TEST_CASE("fundamental fields are Killing") {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 30; ++i) {
    const Vec3 v = sample_ball_point(rng, 0.1, 0.9, 0.1);
    const Vec3 axis = sample_ball_point(rng, 0.5, 0.9, 0.0).normalized();
    const Eigen::Matrix3d R = Eigen::AngleAxisd(0.8, axis).toRotationMatrix();
    for (const auto& s : {MonotoneFunctionSpec::bkm(), MonotoneFunctionSpec::bures_helstrom(),
                          MonotoneFunctionSpec::rld()}) {
      const auto G = metric_cartesian(s, v).components;
      CHECK((metric_cartesian(s, R * v).components - R * G * R.transpose()).cwiseAbs().maxCoeff() < 1e-8);
    }
  }
}

TEST_CASE("tangent vector chart conversion") {
  const Vec3 p(0.3, 0.4, -0.2);
  const auto Y = gradient_field_closed(TracelessObservable(0.1, 0.2, 0.3), MonotoneFunctionSpec::bkm());
  const auto c = Y.at(p);
  const auto s = to_spherical(c);
  CHECK(s.chart == Chart::Spherical);
  CHECK((to_cartesian(s).components - c.components).norm() < 1e-12);
  TangentVector polar{Chart::Cartesian, Vec3(1, 0, 0), Vec3(0, 0, 0.5)};
  CHECK(code_of([&] { to_spherical(polar); }) == ErrorCode::ChartSingularity);
}
