#include "lcw/report.hpp"

namespace lcw {

ojson to_json(const Value& v) {
  if (v.exact()) return v.str();
  return v.to_double();
}

ojson to_json(const Vec& v) {
  ojson out = ojson::array();
  for (auto& x : v) out.push_back(to_json(x));
  return out;
}

ojson fragment_json(const Fragment& F) {
  ojson out;
  out["contexts"] = F.max_context();
  out["dims"] = F.dims();
  out["saturated"] = F.saturated();
  return out;
}

ojson functional_json(const Functional& f) {
  ojson out;
  out["kind"] = "supporting-functional";
  out["coeffs"] = to_json(f.coeffs);
  out["level"] = to_json(f.level);
  return out;
}

ojson verdict_json(const FaceVerdict& v) {
  ojson out;
  switch (v.status) {
    case FaceVerdict::Empty: out["status"] = "empty"; break;
    case FaceVerdict::Face: out["status"] = "face"; break;
    case FaceVerdict::NotFace: out["status"] = "not-face"; break;
  }
  out["vertex_set"] = v.vertex_set;
  if (v.status == FaceVerdict::NotFace) {
    out["violating_vertex"] = v.violating_vertex;
    out["violating_point"] = to_json(v.violating_point);
    out["violating_coeffs"] = to_json(v.violating_coeffs);
  }
  return out;
}

ojson suite_json(const SuiteReport& r) {
  ojson out;
  out["suite"] = r.name;
  out["cases"] = r.cases;
  out["skipped_unsaturated"] = r.skipped_unsaturated;
  ojson cexs = ojson::array();
  for (auto& c : r.counterexamples) {
    ojson e;
    e["case_index"] = c.case_index;
    e["case_name"] = c.case_name;
    e["seed"] = c.seed;
    e["detail"] = c.detail;
    cexs.push_back(std::move(e));
  }
  out["counterexamples"] = std::move(cexs);
  out["passed"] = r.passed();
  return out;
}

ojson violations_json(const std::vector<Violation>& vs) {
  ojson out = ojson::array();
  for (auto& v : vs) {
    ojson e;
    e["axiom"] = v.axiom;
    e["witness"] = v.witness;
    e["detail"] = v.detail;
    out.push_back(std::move(e));
  }
  return out;
}

ojson type_vector_json(const Fragment& F, const TypeVector& v) {
  ojson out;
  Vec shown(v.coords.begin() + 1, v.coords.end());
  out["coords"] = to_json(shown);
  ojson reals = ojson::array();
  for (auto& t : v.realizers) {
    ojson labels = ojson::array();
    for (int p : t) labels.push_back(F.structure().label(p));
    reals.push_back(std::move(labels));
  }
  out["realizers"] = std::move(reals);
  return out;
}

ojson report_envelope(const std::string& command, ojson inputs,
                      ojson fragment, ojson results, ojson certificates,
                      ojson counterexamples, double timing_ms) {
  ojson out;
  out["command"] = command;
  out["inputs"] = std::move(inputs);
  out["fragment"] = std::move(fragment);
  out["results"] = std::move(results);
  out["certificates"] =
      certificates.is_null() ? ojson::array() : std::move(certificates);
  out["counterexamples"] =
      counterexamples.is_null() ? ojson::array() : std::move(counterexamples);
  out["timing_ms"] = timing_ms;
  return out;
}

}  // namespace lcw
