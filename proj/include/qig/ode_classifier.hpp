#pragma once

// The classifying equation (1 - r^2) g'(r) + g(r)^2 = A and its three
// solution branches.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qig/metric_family.hpp"

namespace qig {

enum class Branch { None, BKM_A0, FamilyA_pos, FamilyB_neg };
const char* to_string(Branch b);

struct OdeClassification {
  std::string spec;
  std::vector<double> grid;
  std::vector<double> F;
  bool constant = false;
  double A = 0.0;            // mean of F when constant
  double range_width = 0.0;  // max F - min F
  double tolerance = 1e-6;
  Branch branch = Branch::None;
};

/// Grid must lie in (0,1) and hold at least 20 points.
OdeClassification classify(const MonotoneFunctionSpec& spec, const std::vector<double>& grid, double tol = 1e-6);

struct SingularityList {
  double B = 0.0;
  double c = 0.0;
  std::vector<int> k;       // pole index in sqrt(B)(log t - c) = -pi/2 - k pi
  std::vector<double> t;    // in (0, 1], strictly decreasing
  std::vector<double> r;    // (1 - t)/(1 + t)
};

/// First `max_count` tangent poles of f_B inside (0, 1].
SingularityList singularities(double B, double c, int max_count);

/// The A < 0 branch: no Riemannian metric on the whole ball.
struct Exclusion {
  double A = 0.0;
  MonotoneFunctionSpec candidate;  // FamilyB(B = -A/4, c)
  SingularityList poles;
  std::string reason;
};

using BranchSolution = std::variant<MonotoneFunctionSpec, Exclusion>;

/// A = 0 -> BKM, A > 0 -> FamilyA(A), A < 0 -> Exclusion with FamilyB(-A/4, c).
BranchSolution solve_branch(double A, double c = 0.0, int pole_count = 5);

/// max over the grid of |(1 - r^2) g'(r) + g(r)^2 - A|.
double verify_ode_residual(const MonotoneFunctionSpec& spec, double A, const std::vector<double>& grid);

}  // namespace qig
