#pragma once

// JSON encodings of classes, presentations, weights and recipes, plus the
// verification report envelope {config, results[], mismatches[], elapsed_ms}.

#include <chrono>
#include <string>
#include <vector>

#include "tame/serre_weights.hpp"
#include "tame/spec_json.hpp"

namespace tame {

inline Json to_json(const TorsionVector& v) {
  Json a = Json::array();
  for (const auto& c : v.coords()) a.push_back(to_string(c));
  return a;
}

inline TorsionVector torsion_vector_from_json(const Json& j, const Int& p) {
  if (!j.is_array()) fail(ErrorKind::BadParams, "expected an array of fractions");
  RationalVector coords;
  for (const auto& x : j) {
    if (x.is_number_integer())
      coords.emplace_back(x.get<std::int64_t>());
    else if (x.is_string())
      coords.push_back(parse_rational(x.get<std::string>()));
    else
      fail(ErrorKind::BadParams, "expected a fraction, got " + x.dump());
  }
  return TorsionVector(std::move(coords), p);
}

inline Json to_json(const TwistedClass& c) {
  Json j;
  j["rep"] = to_json(c.rep);
  j["level"] = to_i64(c.level);
  return j;
}

inline Json to_json(const InertialFrame& fr, const TameInertialType& t) {
  Json j = to_json(t.cls);
  Json w = Json::array();
  for (std::size_t i : t.rational_witnesses) w.push_back(word_string(fr.omega_theta.word(i)));
  j["witnesses"] = w;
  return j;
}

inline Json to_json(const InertialFrame& fr, const HerzigPresentation& hp) {
  Json j;
  j["w"] = word_string(fr.omega_theta.word(hp.w));
  j["mu"] = to_json(hp.mu);
  return j;
}

inline HerzigPresentation presentation_from_json(const InertialFrame& fr, const Json& j) {
  if (!j.contains("w") || !j.contains("mu")) fail(ErrorKind::BadParams, "presentation needs 'w' and 'mu'");
  return {weyl_index(fr, parse_word(j.at("w").get<std::string>())), int_vector_from_json(j.at("mu"))};
}

inline Json to_json(const InertialFrame& fr, const DLPacket& packet) {
  Json j;
  j["type"] = to_json(fr, packet.type);
  Json list = Json::array();
  for (const auto& hp : packet.presentations) list.push_back(to_json(fr, hp));
  j["presentations"] = list;
  return j;
}

inline Json to_json(const SerreWeight& w) {
  Json j;
  j["lambda"] = to_json(w.lambda);
  j["r"] = w.r;
  j["regular"] = w.regular;
  return j;
}

inline SerreWeight serre_weight_from_json(const Json& j) {
  return {int_vector_from_json(j.at("lambda")), j.at("r").get<unsigned>(), j.at("regular").get<bool>()};
}

inline Json to_json(const InertialFrame& fr, const RecipeExpression& r) {
  Json j;
  j["dl_part"] = to_json(fr, r.dl_part);
  j["twist_weight"] = to_json(r.twist_weight);
  j["jh_hook"] = r.jh_hook;
  j["tags"] = r.tags;
  return j;
}

/// Verification report. A run with a non-empty mismatch list is a failure.
struct Report {
  Json config = Json::object();
  std::vector<Json> results;
  std::vector<Json> mismatches;
  double elapsed_ms = 0;

  bool ok() const { return mismatches.empty(); }

  Json to_json() const {
    Json j;
    j["config"] = config;
    j["results"] = Json(results);
    j["mismatches"] = Json(mismatches);
    j["elapsed_ms"] = elapsed_ms;
    return j;
  }

  void merge(const Report& other, const std::string& suite) {
    for (Json r : other.results) {
      r["suite"] = suite;
      results.push_back(std::move(r));
    }
    for (Json m : other.mismatches) {
      m["suite"] = suite;
      mismatches.push_back(std::move(m));
    }
    elapsed_ms += other.elapsed_ms;
  }
};

class Stopwatch {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace tame
