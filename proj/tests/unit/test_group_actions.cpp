#include "doctest.h"

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qig/group_actions.hpp"

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

oracle::M2 mpow(const oracle::M2& m, double s) {
  return oracle::apply(m, [s](double x) { return std::pow(x, s); });
}

// (g rho^s g^dagger)^(1/s), normalized.
oracle::V3 alpha_oracle(double A, const oracle::M2& g, const oracle::V3& v) {
  const double s = std::sqrt(A);
  oracle::M2 inner = g * mpow(oracle::rho(v), s) * g.adjoint();
  inner = 0.5 * (inner + inner.adjoint()).eval();
  oracle::M2 out = mpow(inner, 1.0 / s);
  out /= out.trace().real();
  return oracle::bloch(out);
}

oracle::M2 random_sl(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 0.5);
  oracle::M2 m;
  m << oracle::C(n(rng) + 1, n(rng)), oracle::C(n(rng), n(rng)), oracle::C(n(rng), n(rng)),
      oracle::C(n(rng) + 1, n(rng));
  return m / std::sqrt(m.determinant());
}

}  // namespace

TEST_CASE("hermitian spectral functions") {
  Mat2 m;
  m << 4, 0, 0, 9;
  const Mat2 r = hermitian_power(m, 0.5);
  CHECK(std::abs(r(0, 0) - Complex(2, 0)) < 1e-14);
  CHECK(std::abs(r(1, 1) - Complex(3, 0)) < 1e-14);
  CHECK((hermitian_exp(hermitian_log(m)) - m).norm() < 1e-13);
  Mat2 neg;
  neg << 1, 0, 0, -1;
  CHECK(code_of([&] { hermitian_power(neg, 0.5); }) == ErrorCode::NotPositive);
  CHECK(code_of([&] { hermitian_log(neg); }) == ErrorCode::NotPositive);

  std::mt19937_64 rng(21);
  for (int i = 0; i < 50; ++i) {
    const Vec3 v = sample_ball_point(rng, 0.0, 0.95, 0.0);
    const oracle::M2 rho = oracle::rho(v);
    CHECK((hermitian_power(rho, 0.7) - mpow(rho, 0.7)).norm() < 1e-13);
    CHECK((hermitian_log(rho) - oracle::apply(rho, [](double x) { return std::log(x); })).norm() < 1e-13);
  }
}

TEST_CASE("sl_from_generators examples") {
  const auto g = sl_from_generators(TracelessObservable(), TracelessObservable::sigma(3));
  CHECK(std::abs(g.matrix()(0, 0) - std::exp(Complex(0, -0.5))) < 1e-14);
  CHECK(std::abs(g.matrix()(1, 1) - std::exp(Complex(0, 0.5))) < 1e-14);
  CHECK(std::abs(g.matrix()(0, 1)) < 1e-15);
  std::mt19937_64 rng(22);
  for (int i = 0; i < 100; ++i) {
    const auto a = sample_observable(rng);
    const auto b = sample_observable(rng);
    const auto h = sl_from_generators(a, b);
    CHECK(std::abs(h.matrix().determinant() - Complex(1, 0)) < 1e-12);
    // Independent: exp via eigen-decomposition of the (non-hermitian) generator.
    const oracle::M2 x = (oracle::observable(a.coeffs()) - oracle::C(0, 1) * oracle::observable(b.coeffs())) / 2.0;
    Eigen::ComplexEigenSolver<oracle::M2> es(x);
    const oracle::M2 e =
        es.eigenvectors() * es.eigenvalues().array().exp().matrix().asDiagonal() * es.eigenvectors().inverse();
    CHECK((h.matrix() - e).norm() < 1e-11 * std::max(1.0, e.norm()));
  }
  Mat2 bad;
  bad << 2, 0, 0, 2;
  CHECK(code_of([&] { SLGroupElement g2(bad); }) == ErrorCode::InvalidInput);
  CHECK(std::abs(SLGroupElement::normalized(bad).matrix().determinant() - Complex(1, 0)) < 1e-14);
}

TEST_CASE("action examples") {
  Mat2 d;
  d << std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0);
  const auto out = action_alpha_A(1.0, SLGroupElement(d), state_from_bloch(0, 0, 0));
  CHECK(out.matrix()(0, 0).real() == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(out.matrix()(1, 1).real() == doctest::Approx(0.2).epsilon(1e-14));

  // Gibbs state from the center: exp(sigma_3)/Tr.
  const auto gibbs = action_bkm(CotangentGroupElement::make(Mat2::Identity(), TracelessObservable::sigma(3)),
                                state_from_bloch(0, 0, 0));
  CHECK(gibbs.bloch().z() == doctest::Approx(std::tanh(1.0)).epsilon(1e-14));

  // Pure unitary part: U rho U^dagger.
  std::mt19937_64 rng(23);
  for (int i = 0; i < 20; ++i) {
    const Vec3 v = sample_ball_point(rng, 0.0, 0.95, 0.0);
    const auto b = sample_observable(rng);
    const auto h = CotangentGroupElement::from_generators(TracelessObservable(), b);
    const oracle::M2 want = h.U * oracle::rho(v) * h.U.adjoint();
    CHECK((action_bkm(h, state_from_bloch(v)).matrix() - want).norm() < 1e-13);
  }
}

TEST_CASE("alpha_A against the oracle") {
  std::mt19937_64 rng(24);
  double worst = 0.0;
  for (double A : {0.25, 1.0, 2.0, 4.0}) {
    for (int i = 0; i < 50; ++i) {
      const Vec3 v = sample_ball_point(rng, 0.0, 0.9, 0.0);
      const oracle::M2 g = random_sl(rng);
      const Vec3 got = action_alpha_A(A, SLGroupElement(g), state_from_bloch(v)).bloch();
      worst = std::max(worst, (got - alpha_oracle(A, g, v)).norm());
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("cotangent group law") {
  std::mt19937_64 rng(25);
  const auto h1 = CotangentGroupElement::from_generators(sample_observable(rng), sample_observable(rng));
  const auto h2 = CotangentGroupElement::from_generators(sample_observable(rng), sample_observable(rng));
  const auto p = cotangent_multiply(h1, h2);
  CHECK((p.U - h1.U * h2.U).norm() < 1e-14);
  const oracle::M2 want = oracle::observable(h1.a.coeffs()) + h1.U * oracle::observable(h2.a.coeffs()) * h1.U.adjoint();
  CHECK((p.a.matrix() - want).norm() < 1e-13);
  const auto e = cotangent_multiply(h1, cotangent_inverse(h1));
  CHECK((e.U - Mat2::Identity()).norm() < 1e-14);
  CHECK(e.a.coeffs().norm() < 1e-14);
  Mat2 notu;
  notu << 2, 0, 0, 0.5;
  CHECK(code_of([&] { CotangentGroupElement::make(notu, TracelessObservable()); }) == ErrorCode::InvalidInput);
}

TEST_CASE("left action axioms") {
  AxiomOptions opts;
  opts.samples = 200;
  for (double A : {0.25, 1.0, 4.0}) {
    const auto r = verify_left_action_alpha(A, opts);
    CHECK(r.passed);
    CHECK(r.max_compatibility_deviation < 1e-10);
    CHECK(r.max_identity_deviation < 1e-12);
  }
  const auto bkm = verify_left_action_bkm(opts);
  CHECK(bkm.passed);
  CHECK(bkm.max_compatibility_deviation < 1e-10);
  const auto naive = verify_left_action_bkm(opts, CotangentLaw::NaiveSum);
  CHECK_FALSE(naive.passed);
  CHECK(naive.max_compatibility_deviation > 1e-3);
}

TEST_CASE("transitivity of alpha_1") {
  CHECK(transitivity_probe(200, 5) < 1e-10);
  const auto from = state_from_bloch(0.1, -0.2, 0.3);
  const auto to = state_from_bloch(-0.5, 0.4, 0.1);
  const auto g = transporting_element(from, to);
  CHECK(std::abs(g.matrix().determinant() - Complex(1, 0)) < 1e-12);
  CHECK(bloch_distance(action_alpha_A(1.0, g, from), to) < 1e-12);
}

TEST_CASE("infinitesimal generators") {
  CHECK(measure_unitary_sign() == -1.0);
  CHECK(measure_unitary_sign(ActionSpec::bkm()) == -1.0);
  AxiomOptions opts;
  opts.samples = 50;
  opts.tolerance = 1e-6;
  for (const auto& act : {ActionSpec::alpha(1.0), ActionSpec::alpha(0.25), ActionSpec::alpha(4.0), ActionSpec::bkm()}) {
    const auto r = verify_generators(act, opts);
    CHECK(r.passed);
    CHECK(r.unitary_sign == -1.0);
    CHECK(r.max_fundamental_error < 1e-6);
    CHECK(r.max_gradient_error < 1e-6);
    CHECK(r.measured_scale == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("unitary restriction is the same for every action") {
  std::mt19937_64 rng(26);
  for (int i = 0; i < 30; ++i) {
    const Vec3 v = sample_ball_point(rng, 0.0, 0.9, 0.0);
    const auto b = sample_observable(rng);
    const auto rho = state_from_bloch(v);
    const auto ref = act_along(ActionSpec::alpha(1.0), TracelessObservable(), b, 0.7, rho);
    for (const auto& act : {ActionSpec::alpha(0.25), ActionSpec::alpha(4.0), ActionSpec::bkm()})
      CHECK(bloch_distance(act_along(act, TracelessObservable(), b, 0.7, rho), ref) < 1e-12);
  }
}
