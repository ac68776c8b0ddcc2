#include "qig/monotonicity.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace qig {

namespace {

constexpr double kSpectrumFloor = 1e-3;

struct SampleOutcome {
  double min_eigenvalue = 0.0;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
};

MatXc random_gaussian(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  MatXc m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = Complex(normal(rng), normal(rng));
  return m;
}

MatXc random_unitary(std::mt19937_64& rng, int n) {
  Eigen::HouseholderQR<MatXc> qr(random_gaussian(rng, n, n));
  return qr.householderQ() * MatXc::Identity(n, n);
}

MatXc hermitian_part(const MatXc& m) { return 0.5 * (m + m.adjoint()); }

SampleOutcome run_sample(const MonotoneFunctionSpec& spec, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double log_lo = std::log(kSpectrumFloor);

  Eigen::VectorXd lambda(n);
  for (int i = 0; i < n; ++i) lambda[i] = std::exp(log_lo * unit(rng));
  const MatXc q = random_unitary(rng, n);
  const MatXc lower = hermitian_part(q * lambda.cast<Complex>().asDiagonal() * q.adjoint());

  const int rank = 1 + static_cast<int>(unit(rng) * n) % n;
  const MatXc p = random_gaussian(rng, n, rank);
  const MatXc inc = hermitian_part(p * p.adjoint());
  Eigen::SelfAdjointEigenSolver<MatXc> inc_es(inc, Eigen::EigenvaluesOnly);
  const double inc_max = inc_es.eigenvalues().maxCoeff();
  // Weyl: lambda_max(A + sD) <= lambda_max(A) + s lambda_max(D) <= 1.
  const double headroom = 1.0 - lambda.maxCoeff();
  const double scale = inc_max > 0.0 ? (1.0 - unit(rng)) * headroom / inc_max : 0.0;
  const MatXc upper = hermitian_part(lower + scale * inc);

  const MatXc diff = hermitian_part(spectral_apply(spec, upper) - spectral_apply(spec, lower));
  Eigen::SelfAdjointEigenSolver<MatXc> es(diff, Eigen::EigenvaluesOnly);

  SampleOutcome out;
  out.min_eigenvalue = es.eigenvalues().minCoeff();
  out.lower = Eigen::SelfAdjointEigenSolver<MatXc>(lower, Eigen::EigenvaluesOnly).eigenvalues();
  out.upper = Eigen::SelfAdjointEigenSolver<MatXc>(upper, Eigen::EigenvaluesOnly).eigenvalues();
  return out;
}

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

MatXc spectral_apply(const MonotoneFunctionSpec& spec, const MatXc& h) {
  Eigen::SelfAdjointEigenSolver<MatXc> es(hermitian_part(h));
  Eigen::VectorXd fl(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    double l = es.eigenvalues()[i];
    if (l > 1.0 && l < 1.0 + 1e-12) l = 1.0;
    fl[i] = f_eval(spec, l);
  }
  return es.eigenvectors() * fl.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

MonotonicityReport scan_monotonicity(const MonotoneFunctionSpec& spec, const ScanOptions& opts) {
  MonotonicityReport rep;
  rep.spec = spec.name();
  rep.sizes = opts.sizes;
  rep.samples_per_size = opts.samples;
  rep.seed = opts.seed;
  rep.tolerance = opts.tolerance;
  rep.min_eigenvalue = std::numeric_limits<double>::infinity();

  for (int n : opts.sizes) {
    if (n < 1) throw Error(ErrorCode::InvalidInput, "matrix sizes must be >= 1");
    const auto outcomes = map_indices<SampleOutcome>(opts.execution, opts.samples, [&](std::size_t i) {
      return run_sample(spec, n, derive_seed(opts.seed, static_cast<std::uint64_t>(n), i));
    });
    SizeSummary summary;
    summary.size = n;
    summary.min_eigenvalue = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      const auto& o = outcomes[i];
      summary.min_eigenvalue = std::min(summary.min_eigenvalue, o.min_eigenvalue);
      if (o.min_eigenvalue < -opts.tolerance) {
        ++summary.violations;
        if (!rep.counterexample || o.min_eigenvalue < rep.counterexample->min_eigenvalue) {
          rep.counterexample = MonotonicityCounterexample{n, i, o.min_eigenvalue, to_std(o.lower), to_std(o.upper)};
        }
      }
    }
    rep.min_eigenvalue = std::min(rep.min_eigenvalue, summary.min_eigenvalue);
    rep.per_size.push_back(summary);
  }
  return rep;
}

std::optional<ScalarDecrease> find_scalar_decrease(const MonotoneFunctionSpec& spec,
                                                   const std::vector<double>& grid) {
  std::vector<double> t = grid;
  std::sort(t.begin(), t.end());
  std::vector<double> f(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) f[i] = f_eval(spec, t[i]);
  std::optional<ScalarDecrease> best;
  // Running maximum of f over the prefix gives the largest drop in one pass.
  std::size_t arg_max = 0;
  for (std::size_t j = 1; j < t.size(); ++j) {
    if (f[j - 1] > f[arg_max]) arg_max = j - 1;
    const double drop = f[arg_max] - f[j];
    if (drop > 0.0 && (!best || drop > best->f_low - best->f_high))
      best = ScalarDecrease{t[arg_max], t[j], f[arg_max], f[j]};
  }
  return best;
}

}  // namespace qig
