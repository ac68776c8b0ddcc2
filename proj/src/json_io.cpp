#include "qig/json_io.hpp"

namespace qig {

namespace {

Json doubles(const std::vector<double>& v) {
  Json j = Json::array();
  for (double x : v) j.push_back(x);
  return j;
}

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw Error(ErrorCode::InvalidInput, std::string("missing key '") + key + "'");
  return j.at(key);
}

double number(const Json& j) {
  if (!j.is_number()) throw Error(ErrorCode::InvalidInput, "expected a number");
  return j.get<double>();
}

Complex complex_entry(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::InvalidInput, "complex entry must be [re, im]");
  return {number(j[0]), number(j[1])};
}

}  // namespace

// Adding 0.0 folds -0.0 into 0.0.
Json to_json(const Vec3& v) { return Json::array({v.x() + 0.0, v.y() + 0.0, v.z() + 0.0}); }

Json to_json(const Mat3& m) {
  Json j = Json::array();
  for (int i = 0; i < 3; ++i) j.push_back(Json::array({m(i, 0), m(i, 1), m(i, 2)}));
  return j;
}

Json to_json(const Mat2& m) {
  Json j = Json::array();
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) j.push_back(Json::array({m(i, k).real(), m(i, k).imag()}));
  return j;
}

Json to_json(const QubitState& rho) { return {{"bloch", to_json(rho.bloch())}}; }

Json to_json(const TracelessObservable& a) { return {{"pauli", to_json(a.coeffs())}}; }

Json to_json(const TangentVector& v) {
  return {{"chart", to_string(v.chart)}, {"components", to_json(v.components)}, {"base", to_json(v.base)}};
}

Json to_json(const MetricAtPoint& m) {
  return {{"chart", to_string(m.chart)}, {"point", to_json(m.point)}, {"components", to_json(m.components)}};
}

Json to_json(const PetzSymmetryReport& r) {
  return {{"spec", r.spec},
          {"max_symmetry_deviation", r.max_symmetry_deviation},
          {"unit_deviation", r.unit_deviation},
          {"tolerance", r.tolerance},
          {"passed", r.passed}};
}

Json to_json(const MonotonicityReport& r) {
  Json per = Json::array();
  for (const auto& s : r.per_size)
    per.push_back({{"size", s.size}, {"min_eigenvalue", s.min_eigenvalue}, {"violations", s.violations}});
  Json j = {{"spec", r.spec},
            {"sizes", r.sizes},
            {"samples_per_size", r.samples_per_size},
            {"seed", r.seed},
            {"tolerance", r.tolerance},
            {"min_eigenvalue", r.min_eigenvalue},
            {"per_size", per},
            {"monotone_on_samples", r.monotone_on_samples()}};
  if (r.counterexample) {
    const auto& c = *r.counterexample;
    j["counterexample"] = {{"size", c.size},
                           {"sample", c.sample},
                           {"min_eigenvalue", c.min_eigenvalue},
                           {"spectrum_lower", doubles(c.spectrum_lower)},
                           {"spectrum_upper", doubles(c.spectrum_upper)}};
  } else {
    j["counterexample"] = nullptr;
  }
  return j;
}

Json to_json(const OdeClassification& c) {
  double max_dev = 0.0;
  if (c.constant)
    for (double F : c.F) max_dev = std::max(max_dev, std::abs(F - c.A));
  Json verdict = c.constant ? Json{{"kind", "Constant"}, {"A", c.A}}
                            : Json{{"kind", "NonConstant"}, {"range_width", c.range_width}};
  return {{"spec", c.spec},
          {"grid", doubles(c.grid)},
          {"values", doubles(c.F)},
          {"max_dev", c.constant ? max_dev : c.range_width},
          {"tolerance", c.tolerance},
          {"verdict", verdict},
          {"branch", to_string(c.branch)}};
}

Json to_json(const SingularityList& s) {
  return {{"B", s.B}, {"c", s.c}, {"k", s.k}, {"t", doubles(s.t)}, {"r", doubles(s.r)}};
}

Json to_json(const Exclusion& e) {
  return {{"A", e.A}, {"candidate", e.candidate.name()}, {"poles", to_json(e.poles)}, {"reason", e.reason}};
}

Json to_json(const CommutatorReport& r) {
  Json pts = Json::array();
  for (const auto& p : r.points)
    pts.push_back({{"point", to_json(p.point)},
                   {"F", p.F},
                   {"coefficients", to_json(p.coefficients)},
                   {"error", p.pointwise_error},
                   {"closure_error", p.closure_error}});
  return {{"spec", r.spec},
          {"h", r.h},
          {"tolerance", r.tolerance},
          {"convention_sign", r.convention_sign},
          {"mixed_sign", r.mixed_sign},
          {"fitted_constant", r.fitted_constant},
          {"max_error", r.max_error},
          {"max_constant_error", r.max_constant_error},
          {"max_closure_error", r.max_closure_error},
          {"passed", r.passed},
          {"points", pts}};
}

Json to_json(const GradientCrossCheck& r) {
  return {{"spec", r.spec},
          {"points", r.points},
          {"max_spherical_error", r.max_spherical_error},
          {"max_cartesian_error", r.max_cartesian_error}};
}

Json to_json(const ActionAxiomReport& r) {
  return {{"action", r.action},
          {"law", r.law},
          {"samples", r.samples},
          {"max_identity_deviation", r.max_identity_deviation},
          {"max_compatibility_deviation", r.max_compatibility_deviation},
          {"tolerance", r.tolerance},
          {"passed", r.passed}};
}

Json to_json(const GeneratorReport& r) {
  return {{"action", r.action},
          {"samples", r.samples},
          {"unitary_sign", r.unitary_sign},
          {"measured_scale", r.measured_scale},
          {"max_fundamental_error", r.max_fundamental_error},
          {"max_gradient_error", r.max_gradient_error},
          {"tolerance", r.tolerance},
          {"passed", r.passed}};
}

Json to_json(const GradientAscentCheck& r) {
  return {{"max_rate_error", r.max_rate_error},
          {"min_increment", r.min_increment},
          {"min_metric_norm", r.min_metric_norm}};
}

Vec3 vec3_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw Error(ErrorCode::InvalidInput, "expected an array of 3 numbers");
  return {number(j[0]), number(j[1]), number(j[2])};
}

QubitState state_from_json(const Json& j) {
  if (j.is_object()) return state_from_bloch(vec3_from_json(require(j, "bloch")));
  return state_from_bloch(vec3_from_json(j));
}

TracelessObservable observable_from_json(const Json& j) {
  if (j.is_object()) return TracelessObservable(vec3_from_json(require(j, "pauli")));
  return TracelessObservable(vec3_from_json(j));
}

Mat2 mat2_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::InvalidInput, "matrix must be an array");
  Mat2 m;
  if (j.size() == 4) {
    for (int i = 0; i < 4; ++i) m(i / 2, i % 2) = complex_entry(j[static_cast<std::size_t>(i)]);
    return m;
  }
  if (j.size() == 2 && j[0].is_array() && j[0].size() == 2 && j[0][0].is_array()) {
    for (int i = 0; i < 2; ++i) {
      const auto& row = j[static_cast<std::size_t>(i)];
      if (!row.is_array() || row.size() != 2) throw Error(ErrorCode::InvalidInput, "matrix rows must have 2 entries");
      for (int k = 0; k < 2; ++k) m(i, k) = complex_entry(row[static_cast<std::size_t>(k)]);
    }
    return m;
  }
  throw Error(ErrorCode::InvalidInput, "matrix must hold 4 complex entries");
}

SLGroupElement sl_element_from_json(const Json& j) {
  if (j.is_object() && j.contains("matrix")) return SLGroupElement(mat2_from_json(j.at("matrix")));
  if (j.is_object() && (j.contains("a") || j.contains("b"))) {
    const TracelessObservable a = j.contains("a") ? observable_from_json(j.at("a")) : TracelessObservable();
    const TracelessObservable b = j.contains("b") ? observable_from_json(j.at("b")) : TracelessObservable();
    return sl_from_generators(a, b);
  }
  return SLGroupElement(mat2_from_json(j));
}

CotangentGroupElement cotangent_element_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidInput, "cotangent element must be an object");
  const TracelessObservable a = j.contains("a") ? observable_from_json(j.at("a")) : TracelessObservable();
  if (j.contains("U")) return CotangentGroupElement::make(mat2_from_json(j.at("U")), a);
  const TracelessObservable b = j.contains("b") ? observable_from_json(j.at("b")) : TracelessObservable();
  return CotangentGroupElement::from_generators(a, b);
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::InvalidInput, std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace qig
