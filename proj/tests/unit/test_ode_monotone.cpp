#include "doctest.h"

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qig/monotonicity.hpp"
#include "qig/ode_classifier.hpp"

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

const auto kGrid = linear_grid(0.05, 0.95, 20);

}  // namespace

TEST_CASE("classify examples") {
  const auto bkm = classify(MonotoneFunctionSpec::bkm(), kGrid);
  CHECK(bkm.constant);
  CHECK(bkm.branch == Branch::BKM_A0);
  const auto wy = classify(MonotoneFunctionSpec::family_a(0.25), kGrid);
  CHECK(wy.constant);
  CHECK(wy.branch == Branch::FamilyA_pos);
  CHECK(wy.A == doctest::Approx(0.25).epsilon(1e-9));
  const auto rld = classify(MonotoneFunctionSpec::rld(), kGrid);
  CHECK_FALSE(rld.constant);
  CHECK(rld.branch == Branch::None);
  // F = -2(1 - r^2), so the width is 2 (max - min of 1 - r^2).
  const double width = 2.0 * ((1 - 0.05 * 0.05) - (1 - 0.95 * 0.95));
  CHECK(rld.range_width == doctest::Approx(width).epsilon(1e-10));
  CHECK(code_of([] { classify(MonotoneFunctionSpec::bkm(), linear_grid(0.1, 0.9, 10)); }) == ErrorCode::InvalidInput);
}

TEST_CASE("solve_branch examples") {
  CHECK(std::get<MonotoneFunctionSpec>(solve_branch(0.0)).kind() == FunctionKind::BKM);
  const auto one = std::get<MonotoneFunctionSpec>(solve_branch(1.0));
  CHECK(one.kind() == FunctionKind::FamilyA);
  for (double t : linear_grid(0.01, 1.0, 50)) CHECK(f_eval(one, t) == doctest::Approx(oracle::f_bh(t)).epsilon(1e-12));
  const auto ex = std::get<Exclusion>(solve_branch(-4.0));
  CHECK(ex.poles.B == 1.0);
  CHECK(ex.candidate.kind() == FunctionKind::FamilyB);
  CHECK_FALSE(ex.poles.t.empty());
}

TEST_CASE("branch round trip for 20 values of A") {
  for (int k = 0; k <= 20; ++k) {
    const double A = 0.25 * k;
    const auto sol = std::get<MonotoneFunctionSpec>(solve_branch(A));
    const auto cls = classify(sol, kGrid);
    CHECK(cls.constant);
    CHECK(std::abs(cls.A - A) < 1e-6);
    CHECK(verify_ode_residual(sol, A, linear_grid(0.02, 0.98, 50)) < 1e-8);
  }
}

TEST_CASE("ode residual examples") {
  CHECK(verify_ode_residual(MonotoneFunctionSpec::family_a(2.0), 2.0, linear_grid(0.02, 0.98, 50)) < 1e-8);
  CHECK(verify_ode_residual(MonotoneFunctionSpec::bkm(), 0.0, linear_grid(0.02, 0.98, 50)) < 1e-8);
  CHECK(verify_ode_residual(MonotoneFunctionSpec::bures_helstrom(), 0.5, kGrid) ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("FamilyB solves the negative branch away from its poles") {
  // F = -4B on every interval between poles.
  const auto fb = MonotoneFunctionSpec::family_b(0.3, 0.0);
  for (double r : {0.05, 0.2, 0.4}) CHECK(big_f(fb, r) == doctest::Approx(-1.2).epsilon(1e-9));
}

TEST_CASE("pole locations by bisection") {
  const auto s = singularities(1.0, 0.0, 2);
  REQUIRE(s.t.size() == 2);
  // Zeros of cos(log t) bracketed around the analytic values.
  const auto c = [](double t) { return std::cos(std::log(t)); };
  const double t0 = oracle::bisect(c, 0.15, 0.25);
  const double t1 = oracle::bisect(c, 0.005, 0.012);
  CHECK(std::abs(s.t[0] - t0) < 1e-10);
  CHECK(std::abs(s.t[1] - t1) < 1e-10);
  CHECK(s.t[0] == doctest::Approx(0.20788).epsilon(1e-5));
  CHECK(s.t[1] == doctest::Approx(0.00898).epsilon(1e-3));
}

TEST_CASE("poles are simple and break the metric") {
  const auto fb = MonotoneFunctionSpec::family_b(1.0, 0.0);
  const auto s = singularities(1.0, 0.0, 6);
  for (std::size_t k = 0; k < s.t.size(); ++k) {
    const double below = f_eval(fb, s.t[k] * (1 - 1e-9));
    const double above = f_eval(fb, s.t[k] * (1 + 1e-9));
    CHECK(std::abs(below) > 1e6);
    CHECK(std::abs(above) > 1e6);
    CHECK(below * above < 0.0);
    CHECK(std::abs(std::sqrt(1.0) * std::log(s.t[k]) + 0.5 * std::numbers::pi + s.k[k] * std::numbers::pi) < 1e-12);
    // Deep poles sit where r is within ~1e-8 of 1, so the radius cannot pin t exactly.
    const double t_back = (1 - s.r[k]) / (1 + s.r[k]);
    if (std::abs(t_back - s.t[k]) < 1e-13 * s.t[k]) {
      CHECK(code_of([&] { metric_spherical(fb, SphericalPoint::make(s.r[k], 1.0, 0.0)); }) == ErrorCode::PoleError);
    } else {
      bool blown = false;
      try {
        blown = std::abs(f_eval(fb, t_back)) > 1e6;
      } catch (const Error& e) {
        blown = e.code() == ErrorCode::PoleError;
      }
      CHECK(blown);
    }
  }
}

TEST_CASE("singularity list bounds") {
  const auto ten = singularities(2.0, 0.5, 10);
  CHECK(ten.t.size() == 10);
  for (std::size_t k = 0; k < ten.t.size(); ++k) {
    CHECK(ten.t[k] > 0.0);
    CHECK(ten.t[k] <= 1.0);
    if (k > 0) CHECK(ten.t[k] < ten.t[k - 1]);
  }
  // c = 10: t_k = exp(10 - pi/2 - k pi) <= 1 first at k = 3.
  const auto shifted = singularities(1.0, 10.0, 3);
  CHECK(shifted.k.front() == 3);
  CHECK(shifted.t.front() == doctest::Approx(std::exp(10 - 0.5 * std::numbers::pi - 3 * std::numbers::pi)));
  CHECK(code_of([] { singularities(-1.0, 0.0, 2); }) == ErrorCode::InvalidInput);
}

TEST_CASE("scalar counterexample for A = 4") {
  const auto f4 = MonotoneFunctionSpec::family_a(4.0);
  CHECK(f_eval(f4, 0.01) == doctest::Approx((1 + 1e-4) / 1.01).epsilon(1e-12));
  CHECK(f_eval(f4, 0.01) > f_eval(f4, 0.2));
  const auto d = find_scalar_decrease(f4, linear_grid(0.001, 1.0, 500));
  REQUIRE(d.has_value());
  CHECK(d->f_low > d->f_high);
  CHECK(d->t_low < d->t_high);
  CHECK_FALSE(find_scalar_decrease(MonotoneFunctionSpec::bures_helstrom(), linear_grid(0.001, 1.0, 500)).has_value());
}

TEST_CASE("spectral_apply agrees with the eigen-decomposition oracle") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int n = 1; n <= 4; ++n) {
    Eigen::MatrixXcd Q = Eigen::MatrixXcd::Random(n, n);
    Q = Eigen::HouseholderQR<Eigen::MatrixXcd>(Q).householderQ();
    Eigen::VectorXd d(n);
    for (int i = 0; i < n; ++i) d[i] = u(rng);
    const Eigen::MatrixXcd h = Q * d.asDiagonal() * Q.adjoint();
    const auto wy = MonotoneFunctionSpec::wigner_yanase();
    const auto want = oracle::apply(h, [](double x) { return oracle::f_wy(x); });
    CHECK((spectral_apply(wy, h) - want).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("monotonicity scan verdicts") {
  ScanOptions opts;
  opts.samples = 2000;
  for (double A : {2.0, 4.0}) CHECK_FALSE(scan_monotonicity(MonotoneFunctionSpec::family_a(A), opts).monotone_on_samples());
  for (const auto& s : {MonotoneFunctionSpec::bures_helstrom(), MonotoneFunctionSpec::wigner_yanase(),
                        MonotoneFunctionSpec::bkm(), MonotoneFunctionSpec::family_a(0.5)}) {
    const auto r = scan_monotonicity(s, opts);
    CHECK(r.monotone_on_samples());
    CHECK(r.min_eigenvalue > -1e-10);
  }
  const auto four = scan_monotonicity(MonotoneFunctionSpec::family_a(4.0), opts);
  REQUIRE(four.counterexample.has_value());
  CHECK(four.counterexample->min_eigenvalue < -1e-10);
  CHECK(four.per_size.size() == 4);
}

TEST_CASE("counterexample spectra really violate the order") {
  // Rebuild f(B) - f(A) from the reported spectra on a commuting pair.
  ScanOptions opts;
  opts.sizes = {1};
  opts.samples = 2000;
  const auto f4 = MonotoneFunctionSpec::family_a(4.0);
  const auto r = scan_monotonicity(f4, opts);
  REQUIRE(r.counterexample.has_value());
  const auto& c = *r.counterexample;
  CHECK(c.spectrum_lower[0] <= c.spectrum_upper[0]);
  CHECK(oracle::f_a(4.0, c.spectrum_upper[0]) - oracle::f_a(4.0, c.spectrum_lower[0]) ==
        doctest::Approx(c.min_eigenvalue).epsilon(1e-9));
}
