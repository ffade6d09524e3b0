#pragma once

#include <json.hpp>

#include "lcw/extremal.hpp"
#include "lcw/typespace.hpp"

namespace lcw {

using ojson = nlohmann::ordered_json;

/// "p/q" for exact values, a JSON number otherwise.
ojson to_json(const Value& v);
ojson to_json(const Vec& v);

ojson fragment_json(const Fragment& F);
ojson functional_json(const Functional& f);
ojson verdict_json(const FaceVerdict& v);
ojson suite_json(const SuiteReport& r);
ojson violations_json(const std::vector<Violation>& vs);

/// Type vector for display: the constant-1 coordinate is suppressed.
ojson type_vector_json(const Fragment& F, const TypeVector& v);

/// Report envelope with the stable key order: command, inputs, fragment,
/// results, certificates, counterexamples, timing_ms.
ojson report_envelope(const std::string& command, ojson inputs,
                      ojson fragment, ojson results, ojson certificates,
                      ojson counterexamples, double timing_ms);

}  // namespace lcw
