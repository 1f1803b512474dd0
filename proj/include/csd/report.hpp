#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "csd/density.hpp"
#include "csd/formulas.hpp"
#include "csd/rational.hpp"
#include "csd/spectra.hpp"

namespace csd {

/// Field order in emitted JSON is fixed, so documents are byte-reproducible.
using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Degrees travel as exact decimal strings, never as floats.
inline Json degree_to_json(const Rational& r) {
  return Json{{"num", numerator(r).str()}, {"den", denominator(r).str()}};
}

inline Rational degree_from_json(const Json& j) {
  return Rational(BigInt(j.at("num").get<std::string>()), BigInt(j.at("den").get<std::string>()));
}

/// Top-level document every command emits:
///   {schema_version, command, specs, results, timing}
struct ReportDocument {
  std::string command;
  std::vector<std::string> specs;
  Json results = Json::object();
  long long elapsed_ms = 0;

  Json to_json(bool with_timing = true) const {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    j["specs"] = specs;
    j["results"] = results;
    if (with_timing) j["timing"] = Json{{"elapsed_ms", elapsed_ms}};
    return j;
  }
};

inline Json spectrum_to_json(const DegreeSpectrum& s) {
  Json values = Json::array();
  for (const Degree& d : s.distinct_values) values.push_back(degree_to_json(d));
  Json rows = Json::array();
  for (const SpectrumRow& r : s.rows) {
    rows.push_back(Json{{"class", r.class_id},
                        {"rep_order", r.rep_order},
                        {"rep_cyclic", r.rep_cyclic},
                        {"rep_normal", r.rep_normal},
                        {"class_size", r.class_size},
                        {"value", degree_to_json(r.value)}});
  }
  return Json{{"distinct_values", values}, {"classes", rows}};
}

inline Json audit_report_to_json(const FormulaAuditReport& r) {
  Json j;
  j["family"] = r.family;
  j["point"] = r.point;
  j["name"] = r.name;
  j["formula"] = degree_to_json(r.formula_value);
  if (r.oracle_value) j["oracle"] = degree_to_json(*r.oracle_value);
  j["verdict"] = r.verdict == FormulaAuditReport::Verdict::Match      ? "match"
                 : r.verdict == FormulaAuditReport::Verdict::Mismatch ? "mismatch"
                                                                      : "skipped";
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline Json witness_to_json(const ApproachWitness& w) {
  Json j;
  j["kind"] = w.kind == ApproachWitness::Kind::Product         ? "product"
              : w.kind == ApproachWitness::Kind::QuaternionTail ? "quaternion_tail"
                                                                : "constant";
  j["a"] = std::to_string(w.a);
  j["b"] = std::to_string(w.b);
  j["target"] = degree_to_json(w.target);
  j["tolerance"] = degree_to_json(w.tolerance);
  Json terms = Json::array();
  for (const WitnessTerm& t : w.terms) {
    terms.push_back(Json{{"q", std::to_string(t.q)},
                         {"n", std::to_string(t.n)},
                         {"p", std::to_string(t.p)},
                         {"k", std::to_string(t.k)},
                         {"value", degree_to_json(t.value)},
                         {"limit", degree_to_json(t.limit)}});
  }
  j["terms"] = terms;
  if (w.kind == ApproachWitness::Kind::QuaternionTail) j["tail_n"] = std::to_string(w.tail_n);
  j["value"] = degree_to_json(w.value);
  j["error"] = degree_to_json(w.error);
  return j;
}

inline Json scan_entry_to_json(const ScanEntry& e) {
  Json j;
  j["spec"] = e.spec;
  j["order"] = e.order;
  j["im_f1"] = e.im_f1;
  if (e.im_f) j["im_f"] = *e.im_f;
  j["iwasawa"] = e.iwasawa;
  j["gamma"] = e.gamma;
  return j;
}

inline Json scan_to_json(const ScanOutcome& s) {
  Json census = Json::array(), findings = Json::array(), errors = Json::array();
  for (const ScanEntry& e : s.census) census.push_back(scan_entry_to_json(e));
  for (const ScanEntry& e : s.findings) findings.push_back(scan_entry_to_json(e));
  for (const auto& [spec, msg] : s.errors) errors.push_back(Json{{"spec", spec}, {"error", msg}});
  return Json{{"census", census}, {"findings", findings}, {"errors", errors}};
}

/// "41/49 (≈ 0.836735)" for human tables; the approximation is marked and
/// never appears in machine output.
inline std::string degree_human(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return fraction_string(r) + " (≈ " + decimal_approx(r) + ")";
}

}  // namespace csd
