// qig: command-line front end for the qubit information-geometry library.
//
// Exit codes: 0 success, 1 verification failure, 2 input error, 3 numeric
// failure. Errors print {"error": "<code>", "message": "..."} on stdout.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"

#include "qig/verify.hpp"

namespace {

using namespace qig;

constexpr int kExitOk = 0;
constexpr int kExitVerify = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;

struct SpecArgs {
  std::string name = "bh";
  double A = 0.0;
  double B = 0.0;
  double c = 0.0;

  void add(CLI::App* app) {
    app->add_option("--spec", name, "bkm | bh | wy | rld | familyA | familyB")->capture_default_str();
    app->add_option("--A", A, "FamilyA parameter");
    app->add_option("--B", B, "FamilyB parameter");
    app->add_option("--c", c, "FamilyB offset");
  }
  MonotoneFunctionSpec spec() const { return spec_from_name(name, A, B, c); }
};

struct Output {
  std::string path;
  void add(CLI::App* app) { app->add_option("-o,--output", path, "write to file instead of stdout"); }
  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidInput, "cannot open output file '" + path + "'");
    out << text;
  }
  void write(const Json& j) const { write(j.dump(2) + "\n"); }
};

Vec3 vec3_arg(const std::vector<double>& v, const char* what) {
  if (v.size() != 3) throw Error(ErrorCode::InvalidInput, std::string(what) + " needs three comma-separated values");
  return {v[0], v[1], v[2]};
}

std::string read_text_arg(const std::string& arg) {
  // Inline JSON or @path.
  if (!arg.empty() && arg.front() == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw Error(ErrorCode::InvalidInput, "cannot read '" + arg.substr(1) + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  return arg;
}

void apply_threads(int flag) {
  int cap = flag;
  if (const char* env = std::getenv("QIG_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || n < 1) throw Error(ErrorCode::InvalidInput, "QIG_THREADS must be a positive integer");
    cap = cap > 0 ? std::min(cap, static_cast<int>(n)) : static_cast<int>(n);
  }
  if (cap > 0) set_max_threads(cap);
}

VectorField make_field(const std::string& kind, const TracelessObservable& a, const SpecArgs& s) {
  if (kind == "fundamental") return fundamental_field(a);
  if (kind == "gradient") return gradient_field_closed(a, s.spec());
  if (kind == "gradient-metric") return gradient_field_from_metric(a, s.spec());
  if (kind == "rescaled") {
    if (!(s.A > 0.0)) throw Error(ErrorCode::InvalidInput, "rescaled fields need --A > 0");
    return rescaled_gradient_field(a, s.A);
  }
  throw Error(ErrorCode::InvalidInput, "unknown field kind '" + kind + "'");
}

ActionSpec action_from_family(const std::string& family, double A) {
  if (family == "bh") return ActionSpec::alpha(1.0);
  if (family == "wy") return ActionSpec::alpha(0.25);
  if (family == "bkm") return ActionSpec::bkm();
  if (family == "alphaA" || family == "familyA") {
    if (!(A > 0.0)) throw Error(ErrorCode::InvalidInput, "alphaA needs --A > 0");
    return ActionSpec::alpha(A);
  }
  throw Error(ErrorCode::InvalidInput, "unknown action family '" + family + "'");
}

// Field whose flow reproduces the orbit of `action` along (a, 0).
VectorField orbit_field(const ActionSpec& action, const TracelessObservable& a) {
  return expected_hermitian_generator(action, a);
}

int run(int argc, char** argv) {
  CLI::App app{"Monotone metrics, vector fields and group actions on the qubit Bloch ball"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "cap on OpenMP threads (QIG_THREADS also caps)");

  // metric
  auto* metric = app.add_subcommand("metric", "metric tensor components at a point");
  SpecArgs metric_spec;
  metric_spec.add(metric);
  std::string chart = "spherical";
  double r = 0.5, theta = std::numbers::pi / 2, phi = 0.0, x = 0.0, y = 0.0, z = 0.0;
  bool inverse = false;
  metric->add_option("--chart", chart, "spherical | cartesian")->capture_default_str();
  metric->add_option("--r", r);
  metric->add_option("--theta", theta);
  metric->add_option("--phi", phi);
  metric->add_option("--x", x);
  metric->add_option("--y", y);
  metric->add_option("--z", z);
  metric->add_flag("--inverse", inverse, "print the inverse metric as well");
  Output metric_out;
  metric_out.add(metric);

  // field
  auto* field = app.add_subcommand("field", "evaluate a vector field at a point");
  SpecArgs field_spec;
  field_spec.add(field);
  std::string field_kind = "gradient";
  std::vector<double> field_obs{0, 0, 1}, field_at{0.3, 0.2, 0.1};
  std::string field_chart = "cartesian";
  field->add_option("--kind", field_kind, "fundamental | gradient | gradient-metric | rescaled")->capture_default_str();
  field->add_option("--a", field_obs, "Pauli coefficients a1,a2,a3")->delimiter(',');
  field->add_option("--at", field_at, "Bloch point x,y,z")->delimiter(',');
  field->add_option("--chart", field_chart, "cartesian | spherical components")->capture_default_str();
  Output field_out;
  field_out.add(field);

  // bracket
  auto* bracket = app.add_subcommand("bracket", "numeric Lie bracket [V, W] at a point");
  SpecArgs bracket_spec;
  bracket_spec.add(bracket);
  std::string v_kind = "gradient", w_kind = "gradient";
  std::vector<double> v_obs{1, 0, 0}, w_obs{0, 1, 0}, bracket_at{0.3, 0.2, 0.1};
  double bracket_h = 1e-4;
  bracket->add_option("--v", v_kind, "kind of V")->capture_default_str();
  bracket->add_option("--va", v_obs, "observable of V")->delimiter(',');
  bracket->add_option("--w", w_kind, "kind of W")->capture_default_str();
  bracket->add_option("--wa", w_obs, "observable of W")->delimiter(',');
  bracket->add_option("--at", bracket_at, "Bloch point x,y,z")->delimiter(',');
  bracket->add_option("--step", bracket_h, "finite-difference step")->capture_default_str();
  Output bracket_out;
  bracket_out.add(bracket);

  // ode
  auto* ode = app.add_subcommand("ode", "the classifying equation F(r) = A");
  ode->require_subcommand(1);
  auto* ode_classify = ode->add_subcommand("classify", "compute F on a grid and classify");
  SpecArgs ode_spec;
  ode_spec.add(ode_classify);
  double grid_min = 0.05, grid_max = 0.95, ode_tol = 1e-6;
  int grid_steps = 20;
  ode_classify->add_option("--grid-min", grid_min)->capture_default_str();
  ode_classify->add_option("--grid-max", grid_max)->capture_default_str();
  ode_classify->add_option("--grid-steps", grid_steps)->capture_default_str();
  ode_classify->add_option("--tol", ode_tol)->capture_default_str();
  Output classify_out;
  classify_out.add(ode_classify);
  auto* ode_solve = ode->add_subcommand("solve", "branch solution for a given A");
  double solve_A = 1.0, solve_c = 0.0;
  int solve_poles = 5;
  ode_solve->add_option("--A", solve_A)->required();
  ode_solve->add_option("--c", solve_c, "offset for the A < 0 branch")->capture_default_str();
  ode_solve->add_option("-n,--poles", solve_poles, "poles listed for A < 0")->capture_default_str();
  Output solve_out;
  solve_out.add(ode_solve);
  auto* ode_poles = ode->add_subcommand("poles", "tangent poles of f_B in (0, 1]");
  double poles_B = 1.0, poles_c = 0.0;
  int poles_n = 5;
  ode_poles->add_option("--B", poles_B)->capture_default_str();
  ode_poles->add_option("--c", poles_c)->capture_default_str();
  ode_poles->add_option("-n,--count", poles_n)->capture_default_str();
  Output poles_out;
  poles_out.add(ode_poles);

  // act
  auto* act = app.add_subcommand("act", "apply a group element to a state");
  std::string act_family = "bh", g_json, state_json;
  double act_A = 0.0;
  act->add_option("--family", act_family, "bh | wy | alphaA | bkm")->capture_default_str();
  act->add_option("--A", act_A);
  act->add_option("--g-json", g_json, "group element JSON (inline or @file)")->required();
  act->add_option("--state-json", state_json, "state JSON (inline or @file)")->required();
  Output act_out;
  act_out.add(act);

  // verify
  auto* verify = app.add_subcommand("verify", "run verification suites");
  verify->require_subcommand(1);
  RunConfig cfg;
  std::string config_path;
  std::vector<std::string> only_suites;
  double all_tol = 0.0;
  std::uint64_t seed = 0, samples = 0;
  for (const char* name : {"all", "commutators", "actions", "monotone", "flows"}) {
    auto* sub = verify->add_subcommand(name, std::string("suite group: ") + name);
    sub->add_option("--config", config_path, "key = value config file");
    sub->add_option("--seed", seed, "run seed");
    sub->add_option("--tolerance", all_tol, "override every tolerance");
    sub->add_option("--samples", samples, "monotonicity samples per size / action samples");
    sub->add_option("--spec", cfg.spec, "commutators: check this metric only");
    sub->add_option("--A", cfg.A, "FamilyA parameter for --spec familyA");
    sub->add_option("--suite", only_suites, "restrict to these suites");
    sub->add_option("-o,--output", cfg.output, "write the report to a file");
  }

  // flow
  auto* flow = app.add_subcommand("flow", "integrate a vector field");
  SpecArgs flow_spec;
  flow_spec.add(flow);
  std::string flow_kind = "gradient", flow_format = "csv";
  std::vector<double> flow_obs{0, 0, 1}, flow_from{0.1, 0.2, 0.0};
  double t_end = 1.0;
  int steps = 1000;
  bool adaptive = false;
  flow->add_option("--kind", flow_kind, "fundamental | gradient | rescaled")->capture_default_str();
  flow->add_option("--a", flow_obs, "observable a1,a2,a3")->delimiter(',');
  flow->add_option("--from", flow_from, "start x,y,z")->delimiter(',');
  flow->add_option("--t-end", t_end)->capture_default_str();
  flow->add_option("--steps", steps)->capture_default_str();
  flow->add_flag("--adaptive", adaptive, "step-doubling RK4 instead of fixed steps");
  flow->add_option("--format", flow_format, "csv | json")->capture_default_str();
  Output flow_out;
  flow_out.add(flow);
  auto* compare = flow->add_subcommand("compare", "gradient flow against the exact group orbit");
  std::string compare_family = "alphaA";
  double compare_A = 1.0, compare_scale = 1.0;
  compare->add_option("--family", compare_family, "bh | wy | alphaA | bkm")->capture_default_str();
  compare->add_option("--A", compare_A)->capture_default_str();
  compare->add_option("--scale", compare_scale, "orbit time scale")->capture_default_str();

  // export
  auto* exp = app.add_subcommand("export", "plot-ready CSV");
  std::string what;
  std::vector<double> exp_As{0.25, 1.0, 4.0};
  std::vector<std::string> exp_specs{"bkm", "bh", "wy", "rld"};
  int exp_points = 200;
  double exp_A = 1.0, exp_t_end = 1.0;
  int exp_steps = 1000;
  std::vector<double> exp_obs{0.3, -0.5, 0.8}, exp_from{0.2, -0.3, 0.1};
  exp->add_option("what", what, "f-curves | F-curves | flow | orbit")->required();
  exp->add_option("--As", exp_As, "FamilyA parameters for f-curves")->delimiter(',');
  exp->add_option("--specs", exp_specs, "specs for F-curves")->delimiter(',');
  exp->add_option("--points", exp_points)->capture_default_str();
  exp->add_option("--A", exp_A, "FamilyA parameter for flow/orbit")->capture_default_str();
  exp->add_option("--a", exp_obs)->delimiter(',');
  exp->add_option("--from", exp_from)->delimiter(',');
  exp->add_option("--t-end", exp_t_end)->capture_default_str();
  exp->add_option("--steps", exp_steps)->capture_default_str();
  Output exp_out;
  exp_out.add(exp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << Json{{"error", "InvalidInput"}, {"message", e.what()}}.dump() << "\n";
    return kExitInput;
  }
  apply_threads(threads);

  if (metric->parsed()) {
    const auto spec = metric_spec.spec();
    MetricAtPoint m;
    if (chart == "spherical") {
      m = metric_spherical(spec, SphericalPoint::make(r, theta, phi));
    } else if (chart == "cartesian") {
      state_from_bloch(x, y, z);  // boundary check
      m = metric_cartesian(spec, Vec3(x, y, z));
    } else {
      throw Error(ErrorCode::InvalidInput, "chart must be spherical or cartesian");
    }
    Json j = to_json(m);
    j["spec"] = spec.name();
    if (inverse) j["inverse"] = to_json(inverse_metric(m).components);
    metric_out.write(j);
    return kExitOk;
  }

  if (field->parsed()) {
    const auto a = TracelessObservable(vec3_arg(field_obs, "--a"));
    const Vec3 p = state_from_bloch(vec3_arg(field_at, "--at")).bloch();
    const auto f = make_field(field_kind, a, field_spec);
    TangentVector v = f.at(p);
    if (field_chart == "spherical") v = to_spherical(v);
    else if (field_chart != "cartesian") throw Error(ErrorCode::InvalidInput, "chart must be cartesian or spherical");
    field_out.write(Json{{"field", f.descriptor().describe()}, {"vector", to_json(v)}});
    return kExitOk;
  }

  if (bracket->parsed()) {
    const Vec3 p = state_from_bloch(vec3_arg(bracket_at, "--at")).bloch();
    const auto V = make_field(v_kind, TracelessObservable(vec3_arg(v_obs, "--va")), bracket_spec);
    const auto W = make_field(w_kind, TracelessObservable(vec3_arg(w_obs, "--wa")), bracket_spec);
    const auto b = lie_bracket_numeric(V, W, p, bracket_h);
    bracket_out.write(Json{{"V", V.descriptor().describe()},
                           {"W", W.descriptor().describe()},
                           {"h", bracket_h},
                           {"convention", "[V,W] = DW.V - DV.W"},
                           {"bracket", to_json(b)}});
    return kExitOk;
  }

  if (ode_classify->parsed()) {
    const auto cls = classify(ode_spec.spec(), linear_grid(grid_min, grid_max, grid_steps), ode_tol);
    classify_out.write(to_json(cls));
    return kExitOk;
  }
  if (ode_solve->parsed()) {
    const auto sol = solve_branch(solve_A, solve_c, solve_poles);
    if (const auto* spec = std::get_if<MonotoneFunctionSpec>(&sol)) {
      solve_out.write(Json{{"A", solve_A}, {"solution", spec->name()}, {"petz", spec->is_petz_class()}});
    } else {
      solve_out.write(Json{{"A", solve_A}, {"exclusion", to_json(std::get<Exclusion>(sol))}});
    }
    return kExitOk;
  }
  if (ode_poles->parsed()) {
    poles_out.write(to_json(singularities(poles_B, poles_c, poles_n)));
    return kExitOk;
  }

  if (act->parsed()) {
    const auto action = action_from_family(act_family, act_A);
    const auto g = parse_json_text(read_text_arg(g_json));
    const auto rho = state_from_json(parse_json_text(read_text_arg(state_json)));
    const QubitState out = action.family == ActionFamily::BKM ? action_bkm(cotangent_element_from_json(g), rho)
                                                              : action_alpha_A(action.A, sl_element_from_json(g), rho);
    Json j = to_json(out);
    j["action"] = action.name();
    j["matrix"] = to_json(out.matrix());
    act_out.write(j);
    return kExitOk;
  }

  if (verify->parsed()) {
    CLI::App* sub = verify->get_subcommands().front();
    if (!config_path.empty()) apply_config_file(cfg, config_path);
    if (sub->count("--seed")) cfg.seed = seed;
    if (sub->count("--tolerance")) set_all_tolerances(cfg, all_tol);
    if (sub->count("--samples")) {
      cfg.monotone_samples = samples;
      cfg.action_samples = samples;
    }
    if (cfg.threads > 0) apply_threads(threads > 0 ? std::min(threads, cfg.threads) : cfg.threads);
    std::vector<std::string> names;
    const std::string group = sub->get_name();
    if (!only_suites.empty()) names = only_suites;
    else if (group == "all") names = suite_names();
    else if (group == "actions") names = {"actions", "generators"};
    else names = {group};
    if (!cfg.spec.empty() && group == "all" && only_suites.empty()) names = {"commutators"};
    const auto report = run_suites(names, cfg);
    const std::string text = report_json(report, cfg).dump(2) + "\n";
    Output{cfg.output}.write(text);
    if (!cfg.output.empty()) {
      std::cout << Json{{"passed", report.passed()}, {"failed", report.failed()}, {"report", cfg.output}}.dump()
                << "\n";
    }
    return report.passed() ? kExitOk : kExitVerify;
  }

  if (flow->parsed()) {
    const auto a = TracelessObservable(vec3_arg(flow_obs, "--a"));
    const auto start = state_from_bloch(vec3_arg(flow_from, "--from"));
    if (compare->parsed()) {
      const auto action = action_from_family(compare_family, compare_A);
      const auto c = compare_flow_to_orbit(orbit_field(action, a), action, a, {}, start, t_end, steps, compare_scale);
      flow_out.write(Json{{"action", action.name()},
                          {"field", c.flow.descriptor},
                          {"t_end", t_end},
                          {"steps", steps},
                          {"scale", compare_scale},
                          {"max_deviation", c.max_deviation}});
      return kExitOk;
    }
    const auto f = make_field(flow_kind, a, flow_spec);
    IntegratorOptions opts;
    opts.adaptive = adaptive;
    const auto traj = integrate_flow(f, start, t_end, steps, opts);
    if (flow_format == "csv") {
      flow_out.write(trajectory_csv(traj, a));
    } else if (flow_format == "json") {
      Json pts = Json::array();
      for (const auto& p : traj.points) pts.push_back(to_json(p));
      flow_out.write(Json{{"field", traj.descriptor},
                          {"integrator", traj.integrator},
                          {"step", traj.step},
                          {"times", traj.times},
                          {"points", pts}});
    } else {
      throw Error(ErrorCode::InvalidInput, "format must be csv or json");
    }
    return kExitOk;
  }

  if (exp->parsed()) {
    std::ostringstream os;
    os.precision(17);
    if (what == "f-curves") {
      if (exp_points < 2) throw Error(ErrorCode::InvalidInput, "--points must be >= 2");
      std::vector<MonotoneFunctionSpec> specs;
      for (double A : exp_As) specs.push_back(MonotoneFunctionSpec::family_a(A));
      os << "t";
      for (const auto& s : specs) os << ",f_" << s.name();
      os << "\n";
      for (const double t : linear_grid(1.0 / exp_points, 1.0, exp_points)) {
        os << t;
        for (const auto& s : specs) os << "," << f_eval(s, t);
        os << "\n";
      }
    } else if (what == "F-curves") {
      std::vector<MonotoneFunctionSpec> specs;
      for (const auto& n : exp_specs) specs.push_back(spec_from_name(n, exp_A));
      os << "r";
      for (const auto& s : specs) os << ",F_" << s.name();
      os << "\n";
      for (const double rr : linear_grid(0.01, 0.99, exp_points)) {
        os << rr;
        for (const auto& s : specs) os << "," << big_f(s, rr);
        os << "\n";
      }
    } else if (what == "flow" || what == "orbit") {
      const auto a = TracelessObservable(vec3_arg(exp_obs, "--a"));
      const auto start = state_from_bloch(vec3_arg(exp_from, "--from"));
      const auto action = ActionSpec::alpha(exp_A);
      if (what == "orbit") {
        os << trajectory_csv(orbit_curve(action, a, {}, start, exp_t_end, exp_steps), a);
      } else {
        const auto c =
            compare_flow_to_orbit(rescaled_gradient_field(a, exp_A), action, a, {}, start, exp_t_end, exp_steps);
        os << "t,flow_x,flow_y,flow_z,orbit_x,orbit_y,orbit_z,gap\n";
        for (std::size_t k = 0; k < c.flow.times.size(); ++k) {
          const Vec3& p = c.flow.points[k];
          const Vec3& q = c.orbit.points[k];
          os << c.flow.times[k] << "," << p.x() << "," << p.y() << "," << p.z() << "," << q.x() << "," << q.y()
             << "," << q.z() << "," << (p - q).norm() << "\n";
        }
      }
    } else {
      throw Error(ErrorCode::InvalidInput, "export target must be f-curves, F-curves, flow or orbit");
    }
    exp_out.write(os.str());
    return kExitOk;
  }
  return kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const qig::Error& e) {
    std::cout << qig::Json{{"error", qig::to_string(e.code())}, {"message", e.what()}}.dump() << "\n";
    return qig::is_input_error(e.code()) ? kExitInput : kExitNumeric;
  } catch (const std::exception& e) {
    std::cout << qig::Json{{"error", "InvalidInput"}, {"message", e.what()}}.dump() << "\n";
    return kExitInput;
  }
}
