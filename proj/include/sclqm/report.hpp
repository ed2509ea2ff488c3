#pragma once

// Structured serialization. Rationals are {"num": p, "den": q} objects;
// words use their text forms. Nothing here is floating point.

#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "sclqm/amalgam.hpp"
#include "sclqm/brooks.hpp"
#include "sclqm/rational.hpp"
#include "sclqm/scl.hpp"

namespace sclqm {

using Json = nlohmann::ordered_json;

inline Json rational_json(const Rational& r) {
  return Json{{"num", r.numerator()}, {"den", r.denominator()}};
}

inline Json interval_json(const RationalInterval& i) {
  return Json{{"lower", rational_json(i.lower)}, {"upper", rational_json(i.upper)}};
}

inline Json descriptor_json(const QmDescriptor& d) {
  Json excluded = Json::array();
  for (const auto& e : d.excluded) excluded.push_back(to_string(e));
  return Json{
      {"pattern", to_string(d.pattern.word())},
      {"weight", d.pattern.weight()},
      {"pattern_power", d.pattern_power},
      {"scale", rational_json(d.scale)},
      {"defect_upper", rational_json(d.defect_upper)},
      {"defect_upper_conservative", rational_json(d.defect_upper_conservative)},
      {"base_element", d.base_element ? Json(to_string(*d.base_element)) : Json(nullptr)},
      {"excluded", excluded},
  };
}

inline Json expression_json(const CommutatorExpression& e) {
  Json pairs = Json::array();
  for (const auto& [b, c] : e.pairs) pairs.push_back(Json::array({to_string(b), to_string(c)}));
  return Json{{"target", to_string(e.target)}, {"exponent", e.exponent}, {"pairs", pairs},
              {"verified", verify_expression(e)}};
}

inline Json double_coset_json(const DoubleCosetResult& r) {
  Json out{{"holds", r.holds}, {"comparisons", r.comparisons}};
  if (r.witness) {
    out["witness"] = Json{{"c", r.witness->left},
                          {"c_prime", r.witness->right},
                          {"rotation", r.witness->rotation},
                          {"cyclic_conjugate_of_inverse", to_string(r.witness->conjugate_of_inverse)}};
  }
  return out;
}

inline Json mirror_json(const MirrorWitness& m) {
  return Json{{"power", m.power}, {"conjugator", to_string(m.conjugator)}};
}

inline Json certificate_json(const AmalgamCertificate& c) {
  return Json{
      {"word", to_string(c.word)},
      {"double_coset", double_coset_json(c.double_coset)},
      {"power_values", c.power_values},
      {"homogeneous_bracket", interval_json(c.homogeneous)},
      {"n_max", c.n_max},
      {"defect_bound", c.defect_bound},
      {"homogenized_defect_bound", c.homogenized_defect_bound},
      {"normalized_value", rational_json(c.normalized_value)},
      {"scl_lower", rational_json(c.scl_lower)},
  };
}

inline Json report_json(const SclReport& r) {
  Json lower = Json::array();
  for (const auto& b : r.lower_bounds) {
    Json item{{"value", rational_json(b.value)}, {"source", b.source}};
    if (b.descriptor) item["descriptor"] = descriptor_json(*b.descriptor);
    if (b.amalgam) item["certificate"] = certificate_json(*b.amalgam);
    lower.push_back(std::move(item));
  }
  Json upper = Json::array();
  for (const auto& b : r.upper_bounds) {
    Json item{{"value", rational_json(b.value)}, {"source", b.source}};
    if (b.expression) item["expression"] = expression_json(*b.expression);
    upper.push_back(std::move(item));
  }
  Json out{
      {"element", r.element},
      {"group", r.group},
      {"infinite", r.infinite},
      {"mirror_flag", r.mirror_flag},
      {"lower_bounds", lower},
      {"upper_bounds", upper},
      {"patterns_tried", r.patterns_tried},
  };
  if (r.mirror_witness) out["mirror_witness"] = mirror_json(*r.mirror_witness);
  const auto lo = r.best_lower();
  const auto hi = r.best_upper();
  out["best_lower"] = lo ? rational_json(*lo) : Json(nullptr);
  out["best_upper"] = hi ? rational_json(*hi) : Json(nullptr);
  if (!r.note.empty()) out["note"] = r.note;
  return out;
}

inline std::string csv_header() {
  return "element,group,status,lower_num,lower_den,upper_num,upper_den,mirror,lower_source,pattern";
}

// One row per element. Empty cells where a bound is absent.
inline std::string csv_row(const SclReport& r) {
  std::ostringstream out;
  const auto lo = r.best_lower();
  const auto hi = r.best_upper();
  std::string status = r.infinite ? "infinite" : (r.mirror_flag ? "zero" : "bounded");
  std::string source;
  std::string pattern;
  for (const auto& b : r.lower_bounds) {
    if (lo && b.value == *lo) {
      source = b.source;
      if (b.descriptor) pattern = to_string(b.descriptor->pattern.word());
      break;
    }
  }
  out << '"' << r.element << "\"," << r.group << ',' << status << ',';
  if (lo) out << lo->numerator() << ',' << lo->denominator();
  else out << ',';
  out << ',';
  if (hi) out << hi->numerator() << ',' << hi->denominator();
  else out << ',';
  out << ',' << (r.mirror_flag ? "true" : "false") << ',' << source << ',' << pattern;
  return out.str();
}

}  // namespace sclqm
