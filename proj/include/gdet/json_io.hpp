#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gdet/error.hpp"
#include "gdet/lemma_lab.hpp"
#include "gdet/mat_operator.hpp"
#include "gdet/matrix.hpp"
#include "gdet/scalar.hpp"
#include "gdet/stab_engine.hpp"

namespace gdet::json {

using Json = nlohmann::ordered_json;

[[noreturn]] inline void fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

inline Json field_to_json(Field f) {
  if (f.is_rational()) return "Q";
  return Json{{"p", f.modulus()}};
}

inline Field field_from_json(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() != "Q") fail("field must be \"Q\" or {\"p\": <odd prime>}");
    return Field::rationals();
  }
  if (!j.is_object() || !j.contains("p") || !j["p"].is_number_unsigned()) fail("field must be \"Q\" or {\"p\": <odd prime>}");
  return Field::prime(j["p"].get<std::uint64_t>());
}

/// Rationals travel as canonical strings ("-3", "2/5"); residues as integers.
inline Json scalar_to_json(const Scalar& s) {
  if (s.field().is_rational()) return s.to_string();
  return s.residue();
}

inline Scalar scalar_from_json(Field field, const Json& j) {
  if (field.is_rational()) {
    if (j.is_number_integer()) return Scalar(field, j.get<long long>());
    if (!j.is_string()) fail("rational entries are strings \"num/den\" or integer strings");
    const auto text = j.get<std::string>();
    const Scalar s = Scalar::parse(field, text);
    if (s.to_string() != text) fail("rational '" + text + "' is not in reduced form");
    return s;
  }
  if (!j.is_number_unsigned()) fail("prime-field entries are integers in [0, p)");
  const auto v = j.get<std::uint64_t>();
  if (v >= field.modulus()) fail("prime-field entry " + std::to_string(v) + " outside [0, p)");
  return Scalar(field, static_cast<long long>(v));
}

inline Json matrix_to_json(const DenseMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return Json{{"field", field_to_json(m.field())}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

inline DenseMatrix matrix_from_json(const Json& j) {
  if (!j.is_object()) fail("matrix must be an object");
  for (const char* key : {"field", "rows", "cols", "entries"}) {
    if (!j.contains(key)) fail(std::string("matrix is missing \"") + key + "\"");
  }
  const Field field = field_from_json(j["field"]);
  if (!j["rows"].is_number_unsigned() || !j["cols"].is_number_unsigned()) fail("rows/cols must be counts");
  const auto rows = j["rows"].get<std::size_t>();
  const auto cols = j["cols"].get<std::size_t>();
  const Json& entries = j["entries"];
  if (!entries.is_array() || entries.size() != rows) fail("entries must have `rows` rows");
  std::vector<Scalar> flat;
  flat.reserve(rows * cols);
  for (const auto& row : entries) {
    if (!row.is_array() || row.size() != cols) fail("each entries row must have `cols` values");
    for (const auto& e : row) flat.push_back(scalar_from_json(field, e));
  }
  return DenseMatrix(field, rows, cols, std::move(flat));
}

inline Json operator_to_json(const LinearOperator& t) {
  return Json{{"n", t.n()}, {"matrix", matrix_to_json(t.matrix())}, {"vec", "row-major"}};
}

inline LinearOperator operator_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("matrix")) fail("operator needs \"n\" and \"matrix\"");
  if (j.contains("vec") && j["vec"] != "row-major") fail("only row-major vectorization is supported");
  if (!j["n"].is_number_unsigned()) fail("operator n must be a count");
  return LinearOperator(j["n"].get<std::size_t>(), matrix_from_json(j["matrix"]));
}

inline Json spec_to_json(const MonomialSpec& s) {
  Json l = Json::array(), r = Json::array();
  for (const auto& v : s.l) l.push_back(scalar_to_json(v));
  for (const auto& v : s.r) r.push_back(scalar_to_json(v));
  return Json{{"transpose", s.transpose}, {"sigma", s.sigma.one_based()}, {"tau", s.tau.one_based()}, {"l", l}, {"r", r}};
}

inline MonomialSpec spec_from_json(Field field, const Json& j) {
  if (!j.is_object()) fail("monomial spec must be an object");
  for (const char* key : {"transpose", "sigma", "tau", "l", "r"}) {
    if (!j.contains(key)) fail(std::string("monomial spec is missing \"") + key + "\"");
  }
  MonomialSpec s;
  if (!j["transpose"].is_boolean()) fail("transpose must be a boolean");
  s.transpose = j["transpose"].get<bool>();
  try {
    s.sigma = Permutation::from_one_based(j["sigma"].get<std::vector<std::size_t>>());
    s.tau = Permutation::from_one_based(j["tau"].get<std::vector<std::size_t>>());
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("sigma/tau must be arrays of 1-based images: ") + e.what());
  }
  if (!j["l"].is_array() || !j["r"].is_array()) fail("l and r must be arrays");
  for (const auto& v : j["l"]) s.l.push_back(scalar_from_json(field, v));
  for (const auto& v : j["r"]) s.r.push_back(scalar_from_json(field, v));
  s.validate();
  return s;
}

inline Json violation_to_json(const Violation& v) {
  Json out{{"violation", std::string(to_string(v.code))}, {"detail", v.detail}};
  if (v.witness) {
    out["witness"] = Json{{"i", v.witness->i + 1}, {"j", v.witness->j + 1}, {"nonzeros", v.witness->nonzeros}};
  }
  return out;
}

inline Json extraction_to_json(const ExtractionResult& r) {
  if (const auto* e = std::get_if<CanonicalStabElement>(&r)) return spec_to_json(e->spec());
  return violation_to_json(std::get<Violation>(r));
}

/// {"member", "evidence", "witness", "canonical"}; canonical is null when no
/// extraction was attempted.
inline Json verdict_to_json(const MembershipVerdict& v, const std::optional<ExtractionResult>& canonical = std::nullopt) {
  Json evidence = "symbolic";
  if (v.randomized) {
    evidence = Json{{"randomized", {{"trials", v.randomized->trials}, {"error_bound", v.randomized->error_bound}}}};
  }
  return Json{{"member", v.member},
              {"evidence", evidence},
              {"witness", v.witness ? matrix_to_json(*v.witness) : Json(nullptr)},
              {"canonical", canonical ? extraction_to_json(*canonical) : Json(nullptr)}};
}

inline Json report_to_json(const LabReport& r) {
  return Json{{"lemma", r.lemma},           {"space", r.space},           {"checked", r.checked},
              {"hypothesis_hits", r.hypothesis_hits}, {"violations", r.violations}, {"ms", r.ms},
              {"notes", r.notes},           {"pass", r.passed()}};
}

}  // namespace gdet::json
