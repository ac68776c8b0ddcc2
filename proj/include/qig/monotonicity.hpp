#pragma once

// Randomized Loewner-order test of a scalar function: sample A <= B, apply f
// spectrally, look for negative eigenvalues of f(B) - f(A).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qig/metric_family.hpp"
#include "qig/parallel.hpp"

namespace qig {

using MatXc = Eigen::MatrixXcd;

/// f applied to the eigenvalues of a Hermitian matrix whose spectrum lies in
/// (0, 1]; eigenvalues within 1e-12 above 1 are clamped to 1.
MatXc spectral_apply(const MonotoneFunctionSpec& spec, const MatXc& h);

struct MonotonicityCounterexample {
  int size = 0;
  std::uint64_t sample = 0;
  double min_eigenvalue = 0.0;
  std::vector<double> spectrum_lower;  // eigenvalues of A
  std::vector<double> spectrum_upper;  // eigenvalues of B
};

struct SizeSummary {
  int size = 0;
  double min_eigenvalue = 0.0;
  std::uint64_t violations = 0;
};

struct MonotonicityReport {
  std::string spec;
  std::vector<int> sizes;
  std::uint64_t samples_per_size = 0;
  std::uint64_t seed = 0;
  double tolerance = 1e-10;
  double min_eigenvalue = 0.0;
  std::vector<SizeSummary> per_size;
  /// Worst violating sample, if any.
  std::optional<MonotonicityCounterexample> counterexample;

  bool monotone_on_samples() const { return !counterexample.has_value(); }
};

struct ScanOptions {
  std::vector<int> sizes{1, 2, 3, 4};
  std::uint64_t samples = 10000;  // per size
  std::uint64_t seed = 1;
  double tolerance = 1e-10;       // min eigenvalue below -tolerance is a violation
  Execution execution = Execution::Parallel;
};

MonotonicityReport scan_monotonicity(const MonotoneFunctionSpec& spec, const ScanOptions& opts);

struct ScalarDecrease {
  double t_low = 0.0;
  double t_high = 0.0;
  double f_low = 0.0;
  double f_high = 0.0;
};

/// Pair t_low < t_high on the grid with the largest drop f(t_low) - f(t_high) > 0.
std::optional<ScalarDecrease> find_scalar_decrease(const MonotoneFunctionSpec& spec,
                                                   const std::vector<double>& grid);

}  // namespace qig
