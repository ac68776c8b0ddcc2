#include "qig/verify.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

namespace qig {

namespace {

constexpr const char* kSuites[] = {"su2",      "gradient", "commutators", "ode",        "family",
                                   "monotone", "poles",    "actions",     "generators", "flows"};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front())
    return s.substr(1, s.size() - 2);
  return s;
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size() || !std::isfinite(x)) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidInput, "config key '" + key + "' expects a number, got '" + v + "'");
  }
}

std::uint64_t parse_count(const std::string& key, const std::string& v) {
  const double x = parse_double(key, v);
  if (x < 0.0 || x != std::floor(x)) throw Error(ErrorCode::InvalidInput, "config key '" + key + "' expects a count");
  return static_cast<std::uint64_t>(x);
}

Execution exec() { return Execution::Parallel; }

std::vector<double> f_grid(const RunConfig& cfg) { return linear_grid(0.05, 0.95, cfg.grid_steps); }

// Reports carry pass/fail against their own tolerance field; the suite
// records the worst deviation so the report stays comparable across runs.
struct Tracker {
  bool passed = true;
  double worst = 0.0;
  void check(bool ok, double deviation) {
    passed = passed && ok;
    if (std::isfinite(deviation)) worst = std::max(worst, deviation);
  }
};

std::vector<Vec3> interior_points(std::uint64_t seed, std::size_t n, double r_lo, double r_hi, double margin) {
  std::mt19937_64 rng(seed);
  std::vector<Vec3> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) pts.push_back(sample_ball_point(rng, r_lo, r_hi, margin));
  return pts;
}

TracelessObservable unit_observable(std::mt19937_64& rng) {
  Vec3 a = sample_observable(rng).coeffs();
  while (a.norm() < 1e-3) a = sample_observable(rng).coeffs();
  return TracelessObservable(a.normalized());
}

SuiteResult suite_su2(const RunConfig& cfg, std::uint64_t seed) {
  Tracker t;
  const double tol = cfg.tol("su2");
  double table = 0.0;
  double orientation = 0.0;
  const int cyc[3][3] = {{1, 2, 3}, {2, 3, 1}, {3, 1, 2}};
  for (const auto& c : cyc) {
    const auto si = TracelessObservable::sigma(c[0]);
    const auto sj = TracelessObservable::sigma(c[1]);
    const auto sk = TracelessObservable::sigma(c[2]);
    table = std::max(table, (su2_bracket(si, sj).coeffs() - sk.coeffs()).cwiseAbs().maxCoeff());
    orientation = std::max(orientation,
                           (matrix_commutator(si, sj).coeffs() + su2_bracket(si, sj).coeffs()).cwiseAbs().maxCoeff());
  }
  struct Sample {
    double jacobi = 0.0;
    double antisymmetry = 0.0;
  };
  const auto samples = map_indices<Sample>(exec(), 1000, [&](std::size_t i) {
    std::mt19937_64 rng(derive_seed(seed, 0, i));
    const auto a = sample_observable(rng);
    const auto b = sample_observable(rng);
    const auto c = sample_observable(rng);
    const Vec3 j = su2_bracket(a, su2_bracket(b, c)).coeffs() + su2_bracket(b, su2_bracket(c, a)).coeffs() +
                   su2_bracket(c, su2_bracket(a, b)).coeffs();
    return Sample{j.cwiseAbs().maxCoeff(),
                  (su2_bracket(a, b).coeffs() + su2_bracket(b, a).coeffs()).cwiseAbs().maxCoeff()};
  });
  double jacobi = 0.0;
  double anti = 0.0;
  for (const auto& s : samples) {
    jacobi = std::max(jacobi, s.jacobi);
    anti = std::max(anti, s.antisymmetry);
  }
  t.check(table == 0.0, table);
  t.check(jacobi < tol, jacobi);
  t.check(anti < tol, anti);
  t.check(orientation < tol, orientation);
  return {"su2",
          t.passed,
          t.worst,
          {{"table_deviation", table},
           {"max_jacobi_deviation", jacobi},
           {"max_antisymmetry_deviation", anti},
           {"matrix_commutator_sign", -1},
           {"matrix_commutator_deviation", orientation},
           {"tolerance", tol}}};
}

SuiteResult suite_gradient(const RunConfig& cfg, std::uint64_t seed) {
  Tracker t;
  const double tol = cfg.tol("gradient");
  const auto pts = interior_points(seed, cfg.gradient_points, 0.02, 0.98, 0.05);
  Json specs = Json::array();
  for (const auto& spec : {MonotoneFunctionSpec::bkm(), MonotoneFunctionSpec::bures_helstrom(),
                           MonotoneFunctionSpec::wigner_yanase(), MonotoneFunctionSpec::family_a(0.5),
                           MonotoneFunctionSpec::family_a(2.0), MonotoneFunctionSpec::rld()}) {
    const auto r = cross_validate_gradient(spec, pts, seed, exec());
    t.check(r.max_error() < tol, r.max_error());
    specs.push_back(to_json(r));
  }
  return {"gradient", t.passed, t.worst, {{"tolerance", tol}, {"specs", specs}}};
}

SuiteResult suite_commutators(const RunConfig& cfg, std::uint64_t seed) {
  Tracker t;
  const double tol = cfg.tol("commutators");
  const auto pts = interior_points(seed, cfg.commutator_points, 0.1, 0.9, 0.2);
  Json specs = Json::array();
  if (!cfg.spec.empty()) {
    const auto r = verify_commutator_relations(spec_from_name(cfg.spec, cfg.A), pts, cfg.bracket_h, tol, exec());
    const double dev = std::max({r.max_error, r.max_constant_error, r.max_closure_error});
    t.check(r.passed, dev);
    specs.push_back(to_json(r));
    return {"commutators", t.passed, t.worst, {{"tolerance", tol}, {"specs", specs}}};
  }
  for (const auto& spec : {MonotoneFunctionSpec::bkm(), MonotoneFunctionSpec::bures_helstrom(),
                           MonotoneFunctionSpec::wigner_yanase(), MonotoneFunctionSpec::family_a(2.0)}) {
    const auto r = verify_commutator_relations(spec, pts, cfg.bracket_h, tol, exec());
    t.check(r.passed, std::max({r.max_error, r.max_constant_error, r.max_closure_error}));
    specs.push_back(to_json(r));
  }
  // RLD has non-constant F: no single constant fits its Y-brackets.
  const double control = cfg.tol("control_commutators");
  const auto rld = verify_commutator_relations(MonotoneFunctionSpec::rld(), pts, cfg.bracket_h, tol, exec());
  const bool rejected = rld.max_constant_error > control;
  t.check(rejected, 0.0);
  Json neg = {{"spec", rld.spec},
              {"fitted_constant", rld.fitted_constant},
              {"max_constant_error", rld.max_constant_error},
              {"threshold", control},
              {"rejected", rejected}};
  return {"commutators", t.passed, t.worst, {{"tolerance", tol}, {"specs", specs}, {"negative_control", neg}}};
}

SuiteResult suite_ode(const RunConfig& cfg, std::uint64_t) {
  Tracker t;
  const double tol = cfg.tol("ode");
  const double res_tol = cfg.tol("ode_residual");
  const auto grid = f_grid(cfg);
  const auto fine = linear_grid(0.02, 0.98, 50);
  Json rows = Json::array();
  std::vector<double> As{0.0};
  for (int k = 1; k <= 20; ++k) As.push_back(0.25 * k);
  for (double A : As) {
    const auto sol = std::get<MonotoneFunctionSpec>(solve_branch(A));
    const auto cls = classify(sol, grid, tol);
    const double dev = std::abs(cls.A - A);
    const double residual = verify_ode_residual(sol, A, fine);
    const Branch want = A == 0.0 ? Branch::BKM_A0 : Branch::FamilyA_pos;
    const bool ok = cls.constant && dev < tol && cls.branch == want && residual < res_tol;
    t.check(ok, std::max(dev, residual));
    rows.push_back({{"A", A},
                    {"spec", sol.name()},
                    {"branch", to_string(cls.branch)},
                    {"constant", cls.constant},
                    {"range_width", cls.range_width},
                    {"A_deviation", dev},
                    {"residual", residual}});
  }
  const auto rld = classify(MonotoneFunctionSpec::rld(), grid, tol);
  t.check(!rld.constant && rld.range_width > 0.1, 0.0);
  const auto ex = std::get<Exclusion>(solve_branch(-4.0));
  t.check(ex.poles.B == 1.0, 0.0);
  return {"ode",
          t.passed,
          t.worst,
          {{"tolerance", tol},
           {"residual_tolerance", res_tol},
           {"branches", rows},
           {"rld", {{"constant", rld.constant}, {"range_width", rld.range_width}}},
           {"exclusion", to_json(ex)}}};
}

SuiteResult suite_family(const RunConfig& cfg, std::uint64_t) {
  Tracker t;
  const double tol = cfg.tol("family");
  const auto grid = linear_grid(0.01, 1.0, 100);
  const auto a1 = MonotoneFunctionSpec::family_a(1.0);
  const auto aq = MonotoneFunctionSpec::family_a(0.25);
  double bh = 0.0;
  double wy = 0.0;
  for (double x : grid) {
    bh = std::max(bh, std::abs(f_eval(a1, x) - (1.0 + x) / 2.0));
    const double s = 1.0 + std::sqrt(x);
    wy = std::max(wy, std::abs(f_eval(aq, x) - s * s / 4.0));
  }
  t.check(bh < tol, bh);
  t.check(wy < tol, wy);
  Json petz = Json::array();
  const auto sym_grid = linear_grid(0.01, 0.99, 99);
  const double sym_tol = cfg.tol("petz");
  for (const auto& spec : {MonotoneFunctionSpec::bkm(), MonotoneFunctionSpec::family_a(0.25),
                           MonotoneFunctionSpec::family_a(0.5), MonotoneFunctionSpec::family_a(2.0),
                           MonotoneFunctionSpec::family_a(4.0)}) {
    const auto r = check_petz_symmetry(spec, sym_grid, sym_tol);
    t.check(r.passed, std::max(r.max_symmetry_deviation, r.unit_deviation));
    petz.push_back(to_json(r));
  }
  return {"family",
          t.passed,
          t.worst,
          {{"tolerance", tol}, {"familyA_1_vs_bh", bh}, {"familyA_quarter_vs_wy", wy}, {"petz_symmetry", petz}}};
}

SuiteResult suite_monotone(const RunConfig& cfg, std::uint64_t seed) {
  Tracker t;
  const auto f4 = MonotoneFunctionSpec::family_a(4.0);
  const double lo = f_eval(f4, 0.01);
  const double hi = f_eval(f4, 0.2);
  t.check(lo > hi, 0.0);
  const auto scalar = find_scalar_decrease(f4, linear_grid(0.001, 1.0, 1000));
  t.check(scalar.has_value(), 0.0);

  const double dtol = cfg.tol("derivative_limit");
  Json limits = Json::array();
  for (double A : {4.0, 9.0, 1.21}) {
    const double want = -std::sqrt(A) / 2.0;
    const double got = derivative_limit_at_zero(A);
    const double rel = std::abs(got - want) / std::abs(want);
    t.check(rel < dtol, rel);
    limits.push_back({{"A", A}, {"limit", got}, {"expected", want}, {"relative_error", rel}});
  }

  ScanOptions opts;
  opts.samples = cfg.monotone_samples;
  opts.seed = seed;
  opts.tolerance = cfg.tol("monotone");
  opts.execution = exec();
  Json scans = Json::array();
  for (double A : {2.0, 4.0}) {
    const auto r = scan_monotonicity(MonotoneFunctionSpec::family_a(A), opts);
    t.check(!r.monotone_on_samples(), 0.0);
    auto j = to_json(r);
    j["expected"] = "violations";
    scans.push_back(j);
  }
  for (const auto& spec :
       {MonotoneFunctionSpec::bures_helstrom(), MonotoneFunctionSpec::wigner_yanase(), MonotoneFunctionSpec::bkm()}) {
    const auto r = scan_monotonicity(spec, opts);
    t.check(r.monotone_on_samples(), std::max(0.0, -r.min_eigenvalue));
    auto j = to_json(r);
    j["expected"] = "none";
    scans.push_back(j);
  }
  Json sc = nullptr;
  if (scalar)
    sc = {{"t_low", scalar->t_low}, {"t_high", scalar->t_high}, {"f_low", scalar->f_low}, {"f_high", scalar->f_high}};
  return {"monotone",
          t.passed,
          t.worst,
          {{"familyA_4_at_0.01", lo},
           {"familyA_4_at_0.2", hi},
           {"largest_scalar_decrease", sc},
           {"derivative_limits", limits},
           {"scans", scans}}};
}

SuiteResult suite_poles(const RunConfig& cfg, std::uint64_t) {
  Tracker t;
  const double tol = cfg.tol("poles");
  const auto s = singularities(1.0, 0.0, 2);
  const double want[2] = {std::exp(-0.5 * std::numbers::pi), std::exp(-1.5 * std::numbers::pi)};
  const auto fb = MonotoneFunctionSpec::family_b(1.0, 0.0);
  Json rows = Json::array();
  for (std::size_t k = 0; k < 2; ++k) {
    const double dev = std::abs(s.t[k] - want[k]);
    const double below = f_eval(fb, s.t[k] * (1.0 - 1e-9));
    const double above = f_eval(fb, s.t[k] * (1.0 + 1e-9));
    const bool blowup = std::abs(below) > 1e6 && std::abs(above) > 1e6 && below * above < 0.0;
    bool pole_error = false;
    try {
      metric_spherical(fb, SphericalPoint::make(s.r[k], 0.5 * std::numbers::pi, 0.0));
    } catch (const Error& e) {
      pole_error = e.code() == ErrorCode::PoleError;
    }
    t.check(dev < tol && blowup && pole_error, dev);
    rows.push_back({{"k", s.k[k]},
                    {"t", s.t[k]},
                    {"r", s.r[k]},
                    {"deviation", dev},
                    {"f_below", below},
                    {"f_above", above},
                    {"metric_raises_pole_error", pole_error}});
  }
  const auto ten = singularities(1.0, 0.0, 10);
  bool inside = ten.t.size() == 10;
  for (double x : ten.t) inside = inside && x > 0.0 && x <= 1.0;
  t.check(inside, 0.0);
  return {"poles", t.passed, t.worst, {{"B", 1.0}, {"c", 0.0}, {"tolerance", tol}, {"poles", rows}}};
}

SuiteResult suite_actions(const RunConfig& cfg, std::uint64_t seed) {
  Tracker t;
  AxiomOptions opts;
  opts.samples = cfg.action_samples;
  opts.seed = seed;
  opts.tolerance = cfg.tol("actions");
  opts.execution = exec();
  Json reports = Json::array();
  for (double A : {0.25, 0.5, 1.0, 2.0}) {
    const auto r = verify_left_action_alpha(A, opts);
    t.check(r.passed, std::max(r.max_identity_deviation, r.max_compatibility_deviation));
    reports.push_back(to_json(r));
  }
  const auto bkm = verify_left_action_bkm(opts);
  t.check(bkm.passed, std::max(bkm.max_identity_deviation, bkm.max_compatibility_deviation));
  reports.push_back(to_json(bkm));
  const auto naive = verify_left_action_bkm(opts, CotangentLaw::NaiveSum);
  const double control = cfg.tol("control_actions");
  const bool flagged = naive.max_compatibility_deviation > control;
  t.check(flagged, 0.0);
  const double transit = transitivity_probe(100, seed, exec());
  t.check(transit < opts.tolerance, transit);
  return {"actions",
          t.passed,
          t.worst,
          {{"axioms", reports},
           {"negative_control",
            {{"law", naive.law}, {"max_compatibility_deviation", naive.max_compatibility_deviation},
             {"threshold", control}, {"flagged", flagged}}},
           {"transitivity_max_miss", transit}}};
}

SuiteResult suite_generators(const RunConfig& cfg, std::uint64_t seed) {
  Tracker t;
  AxiomOptions opts;
  opts.samples = cfg.action_samples;
  opts.seed = seed;
  opts.tolerance = cfg.tol("generators");
  opts.execution = exec();
  Json reports = Json::array();
  for (const auto& action : {ActionSpec::alpha(0.25), ActionSpec::alpha(0.5), ActionSpec::alpha(1.0),
                             ActionSpec::alpha(2.0), ActionSpec::bkm()}) {
    const auto r = verify_generators(action, opts);
    t.check(r.passed, std::max({r.max_fundamental_error, r.max_gradient_error, std::abs(r.measured_scale - 1.0)}));
    reports.push_back(to_json(r));
  }
  return {"generators", t.passed, t.worst, {{"tolerance", opts.tolerance}, {"reports", reports}}};
}

SuiteResult suite_flows(const RunConfig& cfg, std::uint64_t seed) {
  Tracker t;
  const double tol = cfg.tol("flows");
  const double sign = measure_unitary_sign();
  struct Family {
    const char* name;
    ActionSpec action;
    std::function<VectorField(const TracelessObservable&)> field;
  };
  const std::vector<Family> families = {
      {"bh", ActionSpec::alpha(1.0), [](const TracelessObservable& a) { return rescaled_gradient_field(a, 1.0); }},
      {"wy", ActionSpec::alpha(0.25), [](const TracelessObservable& a) { return rescaled_gradient_field(a, 0.25); }},
      {"familyA(A=2)", ActionSpec::alpha(2.0),
       [](const TracelessObservable& a) { return rescaled_gradient_field(a, 2.0); }},
      {"bkm", ActionSpec::bkm(),
       [](const TracelessObservable& a) { return gradient_field_closed(a, MonotoneFunctionSpec::bkm()); }},
  };
  constexpr int kStarts = 4;
  std::vector<FlowCase> cases;
  std::vector<std::string> labels;
  std::mt19937_64 rng(seed);
  for (const auto& fam : families) {
    for (int i = 0; i < kStarts; ++i) {
      const Vec3 start = sample_ball_point(rng, 0.0, 0.5, 0.0);
      const auto a = unit_observable(rng);
      cases.push_back({fam.field(a), fam.action, a, TracelessObservable(), start, 1.0, cfg.flow_steps});
      labels.push_back(fam.name);
    }
  }
  for (int i = 0; i < kStarts; ++i) {
    const Vec3 start = sample_ball_point(rng, 0.0, 0.5, 0.0);
    const auto b = unit_observable(rng);
    cases.push_back({fundamental_field(b), ActionSpec::alpha(1.0), TracelessObservable(), sign * b, start, 1.0,
                     cfg.flow_steps});
    labels.push_back("fundamental");
  }
  const auto devs = compare_batch(cases, exec());
  Json rows = Json::array();
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const double lim = labels[i] == "fundamental" ? cfg.tol("flows_fundamental") : tol;
    t.check(devs[i] < lim, devs[i]);
    rows.push_back({{"family", labels[i]}, {"start", to_json(cases[i].start)}, {"max_deviation", devs[i]}});
  }

  // Order check on a coarse grid where the truncation error dominates.
  const auto a = TracelessObservable(0.3, -0.5, 0.8);
  const auto start = state_from_bloch(0.2, -0.3, 0.1);
  const auto field = rescaled_gradient_field(a, 1.0);
  const double coarse = compare_flow_to_orbit(field, ActionSpec::alpha(1.0), a, {}, start, 1.0, 20).max_deviation;
  const double finer = compare_flow_to_orbit(field, ActionSpec::alpha(1.0), a, {}, start, 1.0, 40).max_deviation;
  const double ratio = coarse / finer;
  t.check(ratio >= 8.0 && ratio <= 32.0, 0.0);

  // Quarter rotation about z from (0.5, 0, 0).
  const auto quarter = integrate_flow(fundamental_field(TracelessObservable::sigma(3)), state_from_bloch(0.5, 0, 0),
                                      0.5 * std::numbers::pi, cfg.flow_steps);
  double radius_drift = 0.0;
  for (const auto& p : quarter.points) radius_drift = std::max(radius_drift, std::abs(p.norm() - 0.5));
  const double end_miss = (quarter.points.back() - Vec3(0.0, 0.5, 0.0)).norm();
  t.check(radius_drift < cfg.tol("flows_radius") && end_miss < tol, std::max(radius_drift, end_miss));

  const auto ascent =
      check_gradient_ascent(a, MonotoneFunctionSpec::wigner_yanase(), start, 1.0, cfg.flow_steps);
  t.check(ascent.min_increment > 0.0 && ascent.max_rate_error < tol, ascent.max_rate_error);

  return {"flows",
          t.passed,
          t.worst,
          {{"tolerance", tol},
           {"steps", cfg.flow_steps},
           {"unitary_sign", sign},
           {"cases", rows},
           {"rk4_order", {{"steps", Json::array({20, 40})}, {"deviations", Json::array({coarse, finer})},
                          {"ratio", ratio}}},
           {"quarter_rotation", {{"endpoint", to_json(quarter.points.back())}, {"radius_drift", radius_drift}}},
           {"gradient_ascent", to_json(ascent)}}};
}

}  // namespace

std::map<std::string, double> default_tolerances() {
  return {{"su2", 1e-13},
          {"gradient", 1e-10},
          {"commutators", 1e-6},
          {"control_commutators", 1e-2},
          {"ode", 1e-6},
          {"ode_residual", 1e-8},
          {"family", 1e-12},
          {"petz", 1e-9},
          {"derivative_limit", 1e-4},
          {"monotone", 1e-10},
          {"poles", 1e-10},
          {"actions", 1e-10},
          {"control_actions", 1e-3},
          {"generators", 1e-6},
          {"flows", 1e-6},
          {"flows_fundamental", 1e-8},
          {"flows_radius", 1e-10}};
}

double RunConfig::tol(const std::string& key) const {
  const auto it = tolerances.find(key);
  if (it != tolerances.end()) return it->second;
  const auto defaults = default_tolerances();
  const auto d = defaults.find(key);
  if (d == defaults.end()) throw Error(ErrorCode::InvalidInput, "unknown tolerance key '" + key + "'");
  return d->second;
}

void set_all_tolerances(RunConfig& cfg, double value) {
  for (const auto& [k, v] : default_tolerances())
    if (k.rfind("control_", 0) != 0) cfg.tolerances[k] = value;
}

void apply_config_text(RunConfig& cfg, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  const auto defaults = default_tolerances();
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw Error(ErrorCode::InvalidInput, "malformed section at line " + std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      if (section != "tolerances" && section != "run")
        throw Error(ErrorCode::InvalidInput, "unknown config section '" + section + "'");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::InvalidInput, "expected key = value at line " + std::to_string(lineno));
    std::string key = trim(line.substr(0, eq));
    const std::string value = unquote(trim(line.substr(eq + 1)));
    if (section == "tolerances") key = "tolerance." + key;
    if (key == "tolerance") {
      set_all_tolerances(cfg, parse_double(key, value));
    } else if (key.rfind("tolerance.", 0) == 0) {
      const std::string name = key.substr(10);
      if (!defaults.count(name)) throw Error(ErrorCode::InvalidInput, "unknown tolerance key '" + name + "'");
      cfg.tolerances[name] = parse_double(key, value);
    } else if (key == "seed") {
      cfg.seed = parse_count(key, value);
    } else if (key == "threads") {
      cfg.threads = static_cast<int>(parse_count(key, value));
    } else if (key == "format") {
      if (value != "json" && value != "csv") throw Error(ErrorCode::InvalidInput, "format must be json or csv");
      cfg.format = value;
    } else if (key == "output") {
      cfg.output = value;
    } else if (key == "spec") {
      cfg.spec = value;
    } else if (key == "A") {
      cfg.A = parse_double(key, value);
    } else if (key == "grid_steps") {
      cfg.grid_steps = static_cast<int>(parse_count(key, value));
    } else if (key == "samples" || key == "monotone_samples") {
      cfg.monotone_samples = parse_count(key, value);
    } else if (key == "action_samples") {
      cfg.action_samples = parse_count(key, value);
    } else if (key == "points" || key == "commutator_points") {
      cfg.commutator_points = parse_count(key, value);
    } else if (key == "gradient_points") {
      cfg.gradient_points = parse_count(key, value);
    } else if (key == "steps" || key == "flow_steps") {
      cfg.flow_steps = static_cast<int>(parse_count(key, value));
    } else if (key == "h" || key == "bracket_h") {
      cfg.bracket_h = parse_double(key, value);
    } else {
      throw Error(ErrorCode::InvalidInput, "unknown config key '" + key + "'");
    }
  }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  apply_config_text(cfg, ss.str());
}

std::uint64_t suite_seed(std::uint64_t seed, const std::string& name) { return mix_seed(seed ^ fnv1a(name)); }

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names(std::begin(kSuites), std::end(kSuites));
  return names;
}

SuiteResult run_suite(const std::string& name, const RunConfig& cfg) {
  const std::uint64_t seed = suite_seed(cfg.seed, name);
  if (name == "su2") return suite_su2(cfg, seed);
  if (name == "gradient") return suite_gradient(cfg, seed);
  if (name == "commutators") return suite_commutators(cfg, seed);
  if (name == "ode") return suite_ode(cfg, seed);
  if (name == "family") return suite_family(cfg, seed);
  if (name == "monotone") return suite_monotone(cfg, seed);
  if (name == "poles") return suite_poles(cfg, seed);
  if (name == "actions") return suite_actions(cfg, seed);
  if (name == "generators") return suite_generators(cfg, seed);
  if (name == "flows") return suite_flows(cfg, seed);
  throw Error(ErrorCode::InvalidInput, "unknown suite '" + name + "'");
}

bool VerifyReport::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed; });
}

std::vector<std::string> VerifyReport::failed() const {
  std::vector<std::string> out;
  for (const auto& s : suites)
    if (!s.passed) out.push_back(s.name);
  return out;
}

VerifyReport run_suites(const std::vector<std::string>& names, const RunConfig& cfg) {
  VerifyReport rep;
  for (const auto& n : names) rep.suites.push_back(run_suite(n, cfg));
  return rep;
}

Json report_json(const VerifyReport& report, const RunConfig& cfg) {
  Json tol = Json::object();
  for (const auto& [k, v] : default_tolerances()) tol[k] = cfg.tol(k);
  Json suites = Json::array();
  for (const auto& s : report.suites)
    suites.push_back({{"name", s.name},
                      {"seed", suite_seed(cfg.seed, s.name)},
                      {"passed", s.passed},
                      {"max_deviation", s.max_deviation},
                      {"details", s.details}});
  return {{"seed", cfg.seed},
          {"tolerances", tol},
          {"passed", report.passed()},
          {"failed", report.failed()},
          {"suites", suites}};
}

}  // namespace qig
