#include "qig/group_actions.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace qig {

namespace {

constexpr Complex kI{0.0, 1.0};

Mat2 hermitize(const Mat2& m) { return 0.5 * (m + m.adjoint()); }

template <class Fn>
Mat2 spectral(const Mat2& m, Fn&& fn, bool require_positive) {
  Eigen::SelfAdjointEigenSolver<Mat2> es(hermitize(m));
  const auto& ev = es.eigenvalues();
  if (require_positive && !(ev.minCoeff() > 0.0))
    throw Error(ErrorCode::NotPositive, "spectral function needs a positive definite matrix");
  Eigen::Vector2cd mapped(fn(ev[0]), fn(ev[1]));
  return hermitize(es.eigenvectors() * mapped.asDiagonal() * es.eigenvectors().adjoint());
}

QubitState normalized_state(const Mat2& m) {
  const double tr = m.trace().real();
  if (!(tr > 1e-300) || !std::isfinite(tr)) throw Error(ErrorCode::NumericalUnderflow, "trace underflow");
  return bloch_from_state(HermitianMatrix2(hermitize(m / tr)));
}

constexpr std::uint64_t kStreamAlpha = 0xa1fa;
constexpr std::uint64_t kStreamBkm = 0xb4a;
constexpr std::uint64_t kStreamTransitive = 0x7a5;
constexpr std::uint64_t kStreamGenerator = 0x6e4;

constexpr double kGroupSpread = 0.5;
constexpr double kStateRadius = 0.9;

}  // namespace

Mat2 hermitian_power(const Mat2& m, double s) {
  return spectral(m, [s](double l) { return std::pow(l, s); }, true);
}

Mat2 hermitian_log(const Mat2& m) {
  return spectral(m, [](double l) { return std::log(l); }, true);
}

Mat2 hermitian_exp(const Mat2& m) {
  return spectral(m, [](double l) { return std::exp(l); }, false);
}

SLGroupElement::SLGroupElement(const Mat2& m) : m_(m) {
  const double scale = std::max(1.0, m.squaredNorm());
  if (!m.allFinite() || std::abs(m.determinant() - 1.0) > 1e-12 * scale)
    throw Error(ErrorCode::InvalidInput, "SL(2,C) element must have determinant 1");
}

SLGroupElement SLGroupElement::normalized(const Mat2& m) {
  const Complex d = m.determinant();
  if (std::abs(d) < 1e-300) throw Error(ErrorCode::InvalidInput, "singular matrix cannot be normalized");
  return SLGroupElement(m / std::sqrt(d));
}

SLGroupElement SLGroupElement::inverse() const {
  Mat2 inv;
  inv << m_(1, 1), -m_(0, 1), -m_(1, 0), m_(0, 0);
  return SLGroupElement(inv, Unchecked{});
}

Mat2 traceless_exp(const Mat2& m) {
  // M^2 = q^2 I with q^2 = -det M; eigenvalues are +-q.
  const Complex q2 = -m.determinant();
  const Complex q = std::sqrt(q2);
  Complex c, s;
  if (std::abs(2.0 * q) < 1e-8) {
    c = 1.0 + q2 / 2.0 + q2 * q2 / 24.0;
    s = 1.0 + q2 / 6.0 + q2 * q2 / 120.0;
  } else {
    c = std::cosh(q);
    s = std::sinh(q) / q;
  }
  return c * Mat2::Identity() + s * m;
}

SLGroupElement sl_from_generators(const TracelessObservable& a, const TracelessObservable& b) {
  return SLGroupElement::normalized(traceless_exp(0.5 * (a.matrix() - kI * b.matrix())));
}

CotangentGroupElement CotangentGroupElement::make(const Mat2& U, const TracelessObservable& a) {
  if ((U.adjoint() * U - Mat2::Identity()).cwiseAbs().maxCoeff() > 1e-12 || std::abs(U.determinant() - 1.0) > 1e-12)
    throw Error(ErrorCode::InvalidInput, "U must be special unitary");
  return {U, a};
}

CotangentGroupElement CotangentGroupElement::from_generators(const TracelessObservable& a,
                                                             const TracelessObservable& b) {
  return {traceless_exp(-0.5 * kI * b.matrix()), a};
}

TracelessObservable conjugate(const Mat2& U, const TracelessObservable& a) {
  return TracelessObservable::from_matrix(hermitize(U * a.matrix() * U.adjoint()), 1e-10);
}

CotangentGroupElement cotangent_multiply(const CotangentGroupElement& h1, const CotangentGroupElement& h2) {
  return {h1.U * h2.U, h1.a + conjugate(h1.U, h2.a)};
}

CotangentGroupElement cotangent_inverse(const CotangentGroupElement& h) {
  return {h.U.adjoint(), conjugate(h.U.adjoint(), -1.0 * h.a)};
}

CotangentGroupElement cotangent_identity() { return {Mat2::Identity(), TracelessObservable()}; }

QubitState action_alpha_A(double A, const SLGroupElement& g, const QubitState& rho) {
  if (!(A > 0.0)) throw Error(ErrorCode::InvalidInput, "alpha_A needs A > 0");
  const double s = std::sqrt(A);
  const Mat2 lifted = g.matrix() * hermitian_power(rho.matrix(), s) * g.matrix().adjoint();
  return normalized_state(hermitian_power(lifted, 1.0 / s));
}

QubitState action_bkm(const CotangentGroupElement& h, const QubitState& rho) {
  Mat2 exponent = h.U * hermitian_log(rho.matrix()) * h.U.adjoint() + h.a.matrix();
  // The scalar part cancels in the normalization.
  exponent -= 0.5 * exponent.trace() * Mat2::Identity();
  return normalized_state(hermitian_exp(exponent));
}

std::string ActionSpec::name() const {
  if (family == ActionFamily::BKM) return "bkm";
  std::ostringstream os;
  os.precision(17);
  os << "alphaA(A=" << A << ")";
  return os.str();
}

QubitState act_along(const ActionSpec& action, const TracelessObservable& a, const TracelessObservable& b, double t,
                     const QubitState& rho) {
  if (action.family == ActionFamily::BKM)
    return action_bkm(CotangentGroupElement::from_generators(t * a, t * b), rho);
  return action_alpha_A(action.A, sl_from_generators(t * a, t * b), rho);
}

TangentVector generator_of_action(const ActionSpec& action, const TracelessObservable& a, const TracelessObservable& b,
                                  const QubitState& rho, double t_step) {
  auto central = [&](double tau) -> Vec3 {
    return (act_along(action, a, b, tau, rho).bloch() - act_along(action, a, b, -tau, rho).bloch()) / (2.0 * tau);
  };
  return {Chart::Cartesian, (4.0 * central(0.5 * t_step) - central(t_step)) / 3.0, rho.bloch()};
}

VectorField expected_hermitian_generator(const ActionSpec& action, const TracelessObservable& a) {
  if (action.family == ActionFamily::BKM) return gradient_field_closed(a, MonotoneFunctionSpec::bkm());
  return rescaled_gradient_field(a, action.A);
}

namespace {

struct AxiomSample {
  double identity = 0.0;
  double compatibility = 0.0;
};

SLGroupElement random_sl(std::mt19937_64& rng) {
  const auto a = sample_observable(rng, kGroupSpread);
  const auto b = sample_observable(rng, kGroupSpread);
  return sl_from_generators(a, b);
}

CotangentGroupElement random_cotangent(std::mt19937_64& rng) {
  const auto a = sample_observable(rng, kGroupSpread);
  const auto b = sample_observable(rng, kGroupSpread);
  return CotangentGroupElement::from_generators(a, b);
}

QubitState random_state(std::mt19937_64& rng) {
  return state_from_bloch(sample_ball_point(rng, 0.0, kStateRadius, 0.0));
}

ActionAxiomReport summarize(std::string action, std::string law, const AxiomOptions& opts,
                            const std::vector<AxiomSample>& samples) {
  ActionAxiomReport rep;
  rep.action = std::move(action);
  rep.law = std::move(law);
  rep.samples = opts.samples;
  rep.tolerance = opts.tolerance;
  for (const auto& s : samples) {
    rep.max_identity_deviation = std::max(rep.max_identity_deviation, s.identity);
    rep.max_compatibility_deviation = std::max(rep.max_compatibility_deviation, s.compatibility);
  }
  rep.passed = rep.max_identity_deviation < opts.tolerance && rep.max_compatibility_deviation < opts.tolerance;
  return rep;
}

}  // namespace

ActionAxiomReport verify_left_action_alpha(double A, const AxiomOptions& opts) {
  const auto samples = map_indices<AxiomSample>(opts.execution, opts.samples, [&](std::size_t i) {
    std::mt19937_64 rng(derive_seed(opts.seed, kStreamAlpha, i));
    const auto g = random_sl(rng);
    const auto h = random_sl(rng);
    const auto rho = random_state(rng);
    AxiomSample s;
    s.identity = bloch_distance(action_alpha_A(A, SLGroupElement(), rho), rho);
    s.compatibility = bloch_distance(action_alpha_A(A, g, action_alpha_A(A, h, rho)), action_alpha_A(A, g * h, rho));
    return s;
  });
  return summarize(ActionSpec::alpha(A).name(), "matrix product", opts, samples);
}

ActionAxiomReport verify_left_action_bkm(const AxiomOptions& opts, CotangentLaw law) {
  auto multiply = [law](const CotangentGroupElement& h1, const CotangentGroupElement& h2) {
    if (law == CotangentLaw::NaiveSum) return CotangentGroupElement{h1.U * h2.U, h1.a + h2.a};
    return cotangent_multiply(h1, h2);
  };
  const auto samples = map_indices<AxiomSample>(opts.execution, opts.samples, [&](std::size_t i) {
    std::mt19937_64 rng(derive_seed(opts.seed, kStreamBkm, i));
    const auto g = random_cotangent(rng);
    const auto h = random_cotangent(rng);
    const auto rho = random_state(rng);
    AxiomSample s;
    s.identity = bloch_distance(action_bkm(cotangent_identity(), rho), rho);
    s.compatibility = bloch_distance(action_bkm(g, action_bkm(h, rho)), action_bkm(multiply(g, h), rho));
    return s;
  });
  return summarize("bkm", law == CotangentLaw::Semidirect ? "semidirect" : "naive-sum", opts, samples);
}

SLGroupElement transporting_element(const QubitState& from, const QubitState& to) {
  return SLGroupElement::normalized(hermitian_power(to.matrix(), 0.5) * hermitian_power(from.matrix(), -0.5));
}

double transitivity_probe(std::uint64_t samples, std::uint64_t seed, Execution ex) {
  const auto misses = map_indices<double>(ex, samples, [&](std::size_t i) {
    std::mt19937_64 rng(derive_seed(seed, kStreamTransitive, i));
    const auto rho1 = random_state(rng);
    const auto rho2 = random_state(rng);
    return bloch_distance(action_alpha_A(1.0, transporting_element(rho1, rho2), rho1), rho2);
  });
  double worst = 0.0;
  for (double m : misses) worst = std::max(worst, m);
  return worst;
}

double measure_unitary_sign(const ActionSpec& action) {
  const auto ref = state_from_bloch(0.3, 0.2, 0.1);
  const auto sigma3 = TracelessObservable::sigma(3);
  const Vec3 numeric = generator_of_action(action, TracelessObservable(), sigma3, ref).components;
  const Vec3 field = fundamental_field(sigma3)(ref.bloch());
  return numeric.dot(field) >= 0.0 ? 1.0 : -1.0;
}

GeneratorReport verify_generators(const ActionSpec& action, const AxiomOptions& opts) {
  const double sign = measure_unitary_sign(action);
  struct GeneratorSample {
    double fundamental = 0.0;
    double gradient = 0.0;
  };
  const auto samples = map_indices<GeneratorSample>(opts.execution, opts.samples, [&](std::size_t i) {
    std::mt19937_64 rng(derive_seed(opts.seed, kStreamGenerator, i));
    const auto rho = random_state(rng);
    const auto a = sample_observable(rng);
    const auto b = sample_observable(rng);
    const TracelessObservable zero;
    GeneratorSample s;
    s.fundamental = (generator_of_action(action, zero, b, rho).components - sign * fundamental_field(b)(rho.bloch()))
                        .cwiseAbs()
                        .maxCoeff();
    s.gradient = (generator_of_action(action, a, zero, rho).components -
                  expected_hermitian_generator(action, a)(rho.bloch()))
                     .cwiseAbs()
                     .maxCoeff();
    return s;
  });

  GeneratorReport rep;
  rep.action = action.name();
  rep.samples = opts.samples;
  rep.tolerance = opts.tolerance;
  rep.unitary_sign = sign;
  for (const auto& s : samples) {
    rep.max_fundamental_error = std::max(rep.max_fundamental_error, s.fundamental);
    rep.max_gradient_error = std::max(rep.max_gradient_error, s.gradient);
  }
  // Time scaling between exp(t a / 2) and the field flow, measured once.
  const auto ref = state_from_bloch(0.3, 0.2, 0.1);
  const auto sigma3 = TracelessObservable::sigma(3);
  const Vec3 numeric = generator_of_action(action, sigma3, TracelessObservable(), ref).components;
  const Vec3 field = expected_hermitian_generator(action, sigma3)(ref.bloch());
  rep.measured_scale = numeric.dot(field) / field.squaredNorm();
  rep.passed = rep.max_fundamental_error < opts.tolerance && rep.max_gradient_error < opts.tolerance &&
               std::abs(rep.measured_scale - 1.0) < opts.tolerance;
  return rep;
}

}  // namespace qig
