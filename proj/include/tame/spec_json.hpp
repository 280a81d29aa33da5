#pragma once

// Group-spec JSON: {name, rank, roots, coroots, simple, frobenius_matrix,
// inertia_matrix, p, q, e}. Field order is preserved so that a spec written
// by to_json re-serializes byte for byte.

#include <fstream>
#include <string>

#include "json.hpp"
#include "tame/root_datum.hpp"

namespace tame {

using Json = nlohmann::ordered_json;

inline Json to_json(const IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_i64(x));
  return a;
}

inline Json to_json(const IntMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

inline IntVector int_vector_from_json(const Json& j) {
  if (!j.is_array()) fail(ErrorKind::BadParams, "expected an integer array");
  IntVector v;
  for (const auto& x : j) {
    if (!x.is_number_integer()) fail(ErrorKind::BadParams, "expected an integer, got " + x.dump());
    v.emplace_back(x.get<std::int64_t>());
  }
  return v;
}

inline IntMatrix matrix_from_json(const Json& j, std::size_t cols) {
  if (!j.is_array()) fail(ErrorKind::BadParams, "expected a matrix (array of rows)");
  std::vector<IntVector> rows;
  for (const auto& r : j) rows.push_back(int_vector_from_json(r));
  return IntMatrix::from_rows(rows, cols);
}

inline Json to_json(const TameGroupSpec& s) {
  Json j;
  j["name"] = s.name;
  j["rank"] = s.datum.rank;
  j["roots"] = Json::array();
  for (const auto& r : s.datum.roots) j["roots"].push_back(to_json(r));
  j["coroots"] = Json::array();
  for (const auto& r : s.datum.coroots) j["coroots"].push_back(to_json(r));
  j["simple"] = s.datum.simple;
  j["frobenius_matrix"] = to_json(s.frobenius.matrix);
  j["inertia_matrix"] = to_json(s.inertia.matrix);
  j["p"] = to_i64(s.p);
  j["q"] = to_i64(s.q);
  j["e"] = s.e;
  return j;
}

/// Parses without validating; run validate() on the result.
inline TameGroupSpec spec_from_json(const Json& j) {
  for (const char* key : {"name", "rank", "roots", "coroots", "simple", "frobenius_matrix", "inertia_matrix", "p", "q", "e"})
    if (!j.contains(key)) fail(ErrorKind::BadParams, std::string("group spec is missing field '") + key + "'");
  TameGroupSpec s;
  try {
    s.name = j.at("name").get<std::string>();
    s.datum.rank = j.at("rank").get<std::size_t>();
    for (const auto& r : j.at("roots")) s.datum.roots.push_back(int_vector_from_json(r));
    for (const auto& r : j.at("coroots")) s.datum.coroots.push_back(int_vector_from_json(r));
    s.datum.simple = j.at("simple").get<std::vector<std::size_t>>();
    s.frobenius.matrix = matrix_from_json(j.at("frobenius_matrix"), s.datum.rank);
    s.inertia.matrix = matrix_from_json(j.at("inertia_matrix"), s.datum.rank);
    s.p = j.at("p").get<std::int64_t>();
    s.q = j.at("q").get<std::int64_t>();
    s.e = j.at("e").get<unsigned>();
  } catch (const nlohmann::json::exception& ex) {
    fail(ErrorKind::BadParams, std::string("malformed group spec: ") + ex.what());
  }
  if (auto a = try_pin(s.datum, s.frobenius.matrix)) s.frobenius = *a;
  if (auto a = try_pin(s.datum, s.inertia.matrix)) s.inertia = *a;
  return s;
}

inline TameGroupSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::BadParams, "cannot open spec file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& ex) {
    fail(ErrorKind::BadParams, std::string("spec file is not JSON: ") + ex.what());
  }
  return spec_from_json(j);
}

}  // namespace tame
