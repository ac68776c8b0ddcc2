#pragma once

// Spectral calculus on 2x2 Hermitian matrices, the SL(2,C) actions alpha_A,
// the cotangent-group action tied to the BKM metric, and checks of the
// action axioms and infinitesimal generators.

#include <cstdint>
#include <functional>
#include <string>

#include "qig/parallel.hpp"
#include "qig/vector_fields.hpp"

namespace qig {

/// m^s for m > 0. Throws NotPositive.
Mat2 hermitian_power(const Mat2& m, double s);
Mat2 hermitian_log(const Mat2& m);
Mat2 hermitian_exp(const Mat2& m);

class SLGroupElement {
 public:
  SLGroupElement() : m_(Mat2::Identity()) {}
  /// Throws InvalidInput unless |det m - 1| <= 1e-12 max(1, |m|^2).
  explicit SLGroupElement(const Mat2& m);
  /// Rescales m by a square root of its determinant.
  static SLGroupElement normalized(const Mat2& m);

  const Mat2& matrix() const { return m_; }
  SLGroupElement inverse() const;
  friend SLGroupElement operator*(const SLGroupElement& a, const SLGroupElement& b) {
    return SLGroupElement(a.m_ * b.m_);
  }

 private:
  struct Unchecked {};
  SLGroupElement(const Mat2& m, Unchecked) : m_(m) {}
  Mat2 m_;
};

/// exp of the traceless matrix (a - i b)/2.
SLGroupElement sl_from_generators(const TracelessObservable& a, const TracelessObservable& b);
/// exp of a traceless 2x2 matrix via M^2 = -det(M) I.
Mat2 traceless_exp(const Mat2& m);

struct CotangentGroupElement {
  Mat2 U = Mat2::Identity();
  TracelessObservable a;

  /// Throws InvalidInput unless U is special unitary to 1e-12.
  static CotangentGroupElement make(const Mat2& U, const TracelessObservable& a);
  /// (exp(b/(2i)), a).
  static CotangentGroupElement from_generators(const TracelessObservable& a, const TracelessObservable& b);
};

/// U a U^dagger for traceless a.
TracelessObservable conjugate(const Mat2& U, const TracelessObservable& a);

/// (U1, a1)(U2, a2) = (U1 U2, a1 + U1 a2 U1^dagger).
CotangentGroupElement cotangent_multiply(const CotangentGroupElement& h1, const CotangentGroupElement& h2);
CotangentGroupElement cotangent_inverse(const CotangentGroupElement& h);
CotangentGroupElement cotangent_identity();

/// (g rho^s g^dagger)^(1/s) / Tr(...), s = sqrt(A).
QubitState action_alpha_A(double A, const SLGroupElement& g, const QubitState& rho);
/// exp(U log(rho) U^dagger + a) / Tr(...).
QubitState action_bkm(const CotangentGroupElement& h, const QubitState& rho);

enum class ActionFamily { AlphaA, BKM };

struct ActionSpec {
  ActionFamily family = ActionFamily::AlphaA;
  double A = 1.0;

  static ActionSpec alpha(double A) { return {ActionFamily::AlphaA, A}; }
  static ActionSpec bkm() { return {ActionFamily::BKM, 0.0}; }
  std::string name() const;
};

/// The group element reached from the identity along (a, b) at time t, then
/// applied to rho: alpha_A(exp((t a - i t b)/2), rho), or for BKM
/// action_bkm((exp(-i t b/2), t a), rho).
QubitState act_along(const ActionSpec& action, const TracelessObservable& a, const TracelessObservable& b, double t,
                     const QubitState& rho);

/// d/dt at 0 of act_along in Bloch coordinates: central differences at
/// t_step and t_step/2 combined by Richardson extrapolation.
TangentVector generator_of_action(const ActionSpec& action, const TracelessObservable& a, const TracelessObservable& b,
                                  const QubitState& rho, double t_step = 1e-3);

/// Field the generator along (a, 0) should reproduce: the rescaled gradient
/// field for alpha_A and the BKM gradient field for the cotangent action.
VectorField expected_hermitian_generator(const ActionSpec& action, const TracelessObservable& a);

struct ActionAxiomReport {
  std::string action;
  std::string law;
  std::uint64_t samples = 0;
  double max_identity_deviation = 0.0;
  double max_compatibility_deviation = 0.0;
  double tolerance = 1e-10;
  bool passed = false;
};

enum class CotangentLaw { Semidirect, NaiveSum };

struct AxiomOptions {
  std::uint64_t samples = 200;
  std::uint64_t seed = 1;
  double tolerance = 1e-10;
  Execution execution = Execution::Parallel;
};

/// Identity and compatibility alpha(g, alpha(h, rho)) = alpha(gh, rho).
ActionAxiomReport verify_left_action_alpha(double A, const AxiomOptions& opts);
/// Same for the cotangent action; NaiveSum is the wrong law (a1 + a2) kept
/// as a negative control.
ActionAxiomReport verify_left_action_bkm(const AxiomOptions& opts, CotangentLaw law = CotangentLaw::Semidirect);

/// g = rho2^(1/2) rho1^(-1/2), normalized to det 1, maps rho1 to rho2 under
/// alpha_1. Returns the largest Bloch-space miss over the samples.
double transitivity_probe(std::uint64_t samples, std::uint64_t seed, Execution ex = Execution::Parallel);
SLGroupElement transporting_element(const QubitState& from, const QubitState& to);

struct GeneratorReport {
  std::string action;
  std::uint64_t samples = 0;
  double max_fundamental_error = 0.0;  // along (0, b) against unitary_sign * X_b
  double unitary_sign = 0.0;
  double max_gradient_error = 0.0;     // along (a, 0) against the expected field
  double measured_scale = 0.0;         // <numeric, field> / |field|^2 at the reference point
  double tolerance = 1e-6;
  bool passed = false;
};

/// +1 or -1: the sign s with d/dt act_along(0, b) = s X_b, read off at a
/// fixed reference point. The same for every action.
double measure_unitary_sign(const ActionSpec& action = ActionSpec::alpha(1.0));

GeneratorReport verify_generators(const ActionSpec& action, const AxiomOptions& opts);

/// Bloch-space distance between two states.
inline double bloch_distance(const QubitState& a, const QubitState& b) { return (a.bloch() - b.bloch()).norm(); }

}  // namespace qig
