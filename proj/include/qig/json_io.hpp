#pragma once

// JSON encodings of states, observables, matrices and verification reports.

#include <string>

#include "json.hpp"

#include "qig/flow_engine.hpp"
#include "qig/monotonicity.hpp"
#include "qig/ode_classifier.hpp"

namespace qig {

using Json = nlohmann::ordered_json;

Json to_json(const Vec3& v);
Json to_json(const Mat3& m);
/// Complex matrix as [[re, im], ...] in row-major order.
Json to_json(const Mat2& m);
Json to_json(const QubitState& rho);            // {"bloch": [x, y, z]}
Json to_json(const TracelessObservable& a);     // {"pauli": [a1, a2, a3]}
Json to_json(const TangentVector& v);
Json to_json(const MetricAtPoint& m);
Json to_json(const PetzSymmetryReport& r);
Json to_json(const MonotonicityReport& r);
Json to_json(const OdeClassification& c);
Json to_json(const SingularityList& s);
Json to_json(const Exclusion& e);
Json to_json(const CommutatorReport& r);
Json to_json(const GradientCrossCheck& r);
Json to_json(const ActionAxiomReport& r);
Json to_json(const GeneratorReport& r);
Json to_json(const GradientAscentCheck& r);

Vec3 vec3_from_json(const Json& j);
/// Accepts {"bloch": [...]} or a bare [x, y, z].
QubitState state_from_json(const Json& j);
/// Accepts {"pauli": [...]} or a bare [a1, a2, a3].
TracelessObservable observable_from_json(const Json& j);
/// [[re, im], [re, im], [re, im], [re, im]] or [[[re, im], [re, im]], [...]].
Mat2 mat2_from_json(const Json& j);

/// Group element from JSON: {"matrix": ...} for SL(2,C), {"a": ..., "b": ...}
/// for exp((a - i b)/2), or {"U": ..., "a": ...} / {"a": ..., "b": ...} for
/// the cotangent group.
SLGroupElement sl_element_from_json(const Json& j);
CotangentGroupElement cotangent_element_from_json(const Json& j);

/// Parses text, mapping parse failures to InvalidInput.
Json parse_json_text(const std::string& text);

}  // namespace qig
