#include "qig/ode_classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace qig {

const char* to_string(Branch b) {
  switch (b) {
    case Branch::None: return "None";
    case Branch::BKM_A0: return "BKM_A0";
    case Branch::FamilyA_pos: return "FamilyA_pos";
    case Branch::FamilyB_neg: return "FamilyB_neg";
  }
  return "None";
}

OdeClassification classify(const MonotoneFunctionSpec& spec, const std::vector<double>& grid, double tol) {
  if (grid.size() < 20) throw Error(ErrorCode::InvalidInput, "classification grid needs >= 20 points");
  for (double r : grid)
    if (!(r > 0.0 && r < 1.0)) throw Error(ErrorCode::DomainError, "classification grid must lie in (0, 1)");
  OdeClassification out;
  out.spec = spec.name();
  out.grid = grid;
  out.tolerance = tol;
  out.F.reserve(grid.size());
  for (double r : grid) out.F.push_back(big_f(spec, r));
  const auto [lo, hi] = std::minmax_element(out.F.begin(), out.F.end());
  out.range_width = *hi - *lo;
  out.constant = out.range_width < tol;
  if (out.constant) {
    out.A = std::accumulate(out.F.begin(), out.F.end(), 0.0) / static_cast<double>(out.F.size());
    if (std::abs(out.A) < tol) out.branch = Branch::BKM_A0;
    else out.branch = out.A > 0.0 ? Branch::FamilyA_pos : Branch::FamilyB_neg;
  }
  return out;
}

SingularityList singularities(double B, double c, int max_count) {
  if (!(B > 0.0)) throw Error(ErrorCode::InvalidInput, "singularities need B > 0");
  if (max_count < 0) throw Error(ErrorCode::InvalidInput, "max_count must be >= 0");
  SingularityList out;
  out.B = B;
  out.c = c;
  const double rb = std::sqrt(B);
  // t_k = exp(c - (pi/2 + k pi)/sqrt(B)) <= 1  <=>  k >= (c sqrt(B) - pi/2)/pi.
  int k = std::max(0, static_cast<int>(std::ceil((c * rb - 0.5 * std::numbers::pi) / std::numbers::pi)));
  while (static_cast<int>(out.t.size()) < max_count) {
    const double t = std::exp(c - (0.5 * std::numbers::pi + k * std::numbers::pi) / rb);
    if (t <= 1.0) {
      out.k.push_back(k);
      out.t.push_back(t);
      out.r.push_back(r_from_t(t));
    }
    ++k;
  }
  return out;
}

BranchSolution solve_branch(double A, double c, int pole_count) {
  if (!std::isfinite(A)) throw Error(ErrorCode::InvalidInput, "A must be finite");
  if (A == 0.0) return MonotoneFunctionSpec::bkm();
  if (A > 0.0) return MonotoneFunctionSpec::family_a(A);
  const double B = -A / 4.0;
  Exclusion ex{A, MonotoneFunctionSpec::family_b(B, c), singularities(B, c, pole_count),
               "f_B has infinitely many tangent poles in (0, 1]; the metric is undefined on a "
               "sequence of spheres accumulating at the boundary of the ball"};
  return ex;
}

double verify_ode_residual(const MonotoneFunctionSpec& spec, double A, const std::vector<double>& grid) {
  double worst = 0.0;
  for (double r : grid) worst = std::max(worst, std::abs(big_f(spec, r) - A));
  return worst;
}

}  // namespace qig
