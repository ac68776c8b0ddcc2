#include "doctest.h"

#include <cstring>
#include <random>

#include "qig/verify.hpp"

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

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

std::uint64_t fnv1a_ref(const std::string& s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::vector<Vec3> points(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  std::vector<Vec3> out;
  for (int i = 0; i < n; ++i) out.push_back(sample_ball_point(rng, 0.1, 0.8, 0.1));
  return out;
}

// A cheap config for repeated full runs.
RunConfig small_config() {
  RunConfig cfg;
  cfg.monotone_samples = 300;
  cfg.action_samples = 40;
  cfg.commutator_points = 8;
  cfg.gradient_points = 60;
  cfg.flow_steps = 1000;
  return cfg;
}

}  // namespace

TEST_CASE("parallel map keeps index order and rethrows the first failure") {
  for (int threads : {1, 2, 4}) {
    set_max_threads(threads);
    const auto v = map_indices<std::size_t>(Execution::Parallel, 1000, [](std::size_t i) { return i * i; });
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == i * i);
    try {
      map_indices<int>(Execution::Parallel, 100, [](std::size_t i) -> int {
        if (i == 17 || i == 80) throw Error(ErrorCode::InvalidInput, "at " + std::to_string(i));
        return 0;
      });
      FAIL("no throw");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("at 17") != std::string::npos);
    }
  }
  set_max_threads(1);
}

TEST_CASE("serial and parallel sweeps agree bit for bit") {
  for (int threads : {2, 3}) {
    set_max_threads(threads);
    ScanOptions so;
    so.samples = 500;
    so.seed = 9;
    const auto f4 = MonotoneFunctionSpec::family_a(4.0);
    so.execution = Execution::Serial;
    const auto s = scan_monotonicity(f4, so);
    so.execution = Execution::Parallel;
    const auto p = scan_monotonicity(f4, so);
    CHECK(same_bits(s.min_eigenvalue, p.min_eigenvalue));
    REQUIRE(s.counterexample.has_value());
    REQUIRE(p.counterexample.has_value());
    CHECK(s.counterexample->spectrum_lower == p.counterexample->spectrum_lower);

    const auto pts = points(4, 12);
    const auto wy = MonotoneFunctionSpec::wigner_yanase();
    const auto cs = verify_commutator_relations(wy, pts, 1e-4, 1e-6, Execution::Serial);
    const auto cp = verify_commutator_relations(wy, pts, 1e-4, 1e-6, Execution::Parallel);
    CHECK(same_bits(cs.max_error, cp.max_error));
    CHECK(same_bits(cs.fitted_constant, cp.fitted_constant));

    const auto gs = cross_validate_gradient(wy, pts, 3, Execution::Serial);
    const auto gp = cross_validate_gradient(wy, pts, 3, Execution::Parallel);
    CHECK(same_bits(gs.max_error(), gp.max_error()));

    AxiomOptions ao;
    ao.samples = 60;
    ao.execution = Execution::Serial;
    const auto as = verify_left_action_alpha(0.5, ao);
    const auto abs = verify_left_action_bkm(ao);
    ao.execution = Execution::Parallel;
    const auto ap = verify_left_action_alpha(0.5, ao);
    const auto abp = verify_left_action_bkm(ao);
    CHECK(same_bits(as.max_compatibility_deviation, ap.max_compatibility_deviation));
    CHECK(same_bits(abs.max_compatibility_deviation, abp.max_compatibility_deviation));
    CHECK(same_bits(transitivity_probe(50, 2, Execution::Serial), transitivity_probe(50, 2, Execution::Parallel)));

    std::vector<FlowCase> cases;
    for (const auto& v : points(5, 4))
      cases.push_back({rescaled_gradient_field(TracelessObservable(0.3, -0.2, 0.5), 1.0), ActionSpec::alpha(1.0),
                       TracelessObservable(0.3, -0.2, 0.5), TracelessObservable(), v, 1.0, 200});
    const auto fs = compare_batch(cases, Execution::Serial);
    const auto fp = compare_batch(cases, Execution::Parallel);
    REQUIRE(fs.size() == fp.size());
    for (std::size_t i = 0; i < fs.size(); ++i) CHECK(same_bits(fs[i], fp[i]));
  }
  set_max_threads(1);
}

TEST_CASE("suite seeds") {
  CHECK(suite_seed(1, "su2") == mix_seed(1 ^ fnv1a_ref("su2")));
  CHECK(suite_seed(1, "su2") != suite_seed(1, "ode"));
  CHECK(suite_seed(1, "su2") != suite_seed(2, "su2"));
  CHECK(suite_names().size() == 10);
  CHECK(suite_names().front() == "su2");
}

TEST_CASE("config text") {
  RunConfig cfg;
  apply_config_text(cfg, R"(# comment
seed = 42
spec = "wy"
steps = 500
[tolerances]
flows = 1e-7   # tighter
)");
  CHECK(cfg.seed == 42);
  CHECK(cfg.spec == "wy");
  CHECK(cfg.flow_steps == 500);
  CHECK(cfg.tol("flows") == 1e-7);
  CHECK(cfg.tol("su2") == 1e-13);

  RunConfig all;
  apply_config_text(all, "tolerance = 1e-3\n");
  CHECK(all.tol("su2") == 1e-3);
  CHECK(all.tol("flows_radius") == 1e-3);

  RunConfig bad;
  CHECK(code_of([&] { apply_config_text(bad, "nonsense = 1\n"); }) == ErrorCode::InvalidInput);
  CHECK(code_of([&] { apply_config_text(bad, "[tolerances]\nfoo = 1\n"); }) == ErrorCode::InvalidInput);
  CHECK(code_of([&] { apply_config_text(bad, "seed = -3\n"); }) == ErrorCode::InvalidInput);
  CHECK(code_of([&] { apply_config_text(bad, "[other]\n"); }) == ErrorCode::InvalidInput);
  CHECK(code_of([&] { apply_config_text(bad, "seed 3\n"); }) == ErrorCode::InvalidInput);
  CHECK(code_of([&] { bad.tol("missing"); }) == ErrorCode::InvalidInput);
}

TEST_CASE("unknown suites are input errors") {
  CHECK(code_of([] { run_suite("nope", RunConfig{}); }) == ErrorCode::InvalidInput);
}

TEST_CASE("reports are deterministic and thread-count independent") {
  const auto cfg = small_config();
  set_max_threads(1);
  const auto one = report_json(run_suites(suite_names(), cfg), cfg).dump(2);
  set_max_threads(3);
  const auto three = report_json(run_suites(suite_names(), cfg), cfg).dump(2);
  set_max_threads(1);
  CHECK(one == three);
  CHECK(one.find("\"passed\": true") != std::string::npos);
}

TEST_CASE("seed changes the samples but not the verdict") {
  auto cfg = small_config();
  const auto a = run_suites({"actions"}, cfg);
  cfg.seed = 2;
  const auto b = run_suites({"actions"}, cfg);
  CHECK(a.passed());
  CHECK(b.passed());
  CHECK_FALSE(same_bits(a.suites[0].max_deviation, b.suites[0].max_deviation));
}

TEST_CASE("tight tolerance fails and the rld control fails") {
  auto cfg = small_config();
  set_all_tolerances(cfg, 1e-15);
  const auto r = run_suites({"commutators"}, cfg);
  CHECK_FALSE(r.passed());
  CHECK(r.failed() == std::vector<std::string>{"commutators"});

  auto rld = small_config();
  rld.spec = "rld";
  CHECK_FALSE(run_suites({"commutators"}, rld).passed());
}

TEST_CASE("json round trips") {
  const auto rho = state_from_bloch(0.1, -0.2, 0.3);
  CHECK((state_from_json(to_json(rho)).bloch() - rho.bloch()).norm() == 0.0);
  CHECK((state_from_json(Json::parse("[0.1, -0.2, 0.3]")).bloch() - rho.bloch()).norm() == 0.0);
  const TracelessObservable a(1, 2, 3);
  CHECK(observable_from_json(to_json(a)).coeffs() == a.coeffs());
  Mat2 m;
  m << Complex(1, 2), Complex(3, 4), Complex(5, 6), Complex(7, 8);
  CHECK(mat2_from_json(to_json(m)) == m);
  CHECK(code_of([] { parse_json_text("{bad"); }) == ErrorCode::InvalidInput);
  CHECK(code_of([] { state_from_json(Json::parse("[0.9, 0.9, 0]")); }) == ErrorCode::BoundaryViolation);
  const auto g = sl_element_from_json(Json::parse(R"({"a": [0, 0, 0], "b": [0, 0, 1]})"));
  CHECK(std::abs(g.matrix()(0, 0) - std::exp(Complex(0, -0.5))) < 1e-14);
  const auto h = cotangent_element_from_json(Json::parse(R"({"a": [0, 0, 1], "b": [0, 0, 0]})"));
  CHECK(h.a.coeffs() == Vec3(0, 0, 1));
}
