#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "scenecloud/ca.hpp"
#include "scenecloud/errors.hpp"
#include "scenecloud/pertinence.hpp"
#include "scenecloud/script.hpp"
#include "scenecloud/term_matrix.hpp"

namespace scenecloud {

inline constexpr int kSchemaVersion = 1;

namespace detail {

inline const char* setting_name(Setting s) {
  switch (s) {
    case Setting::interior: return "interior";
    case Setting::exterior: return "exterior";
    default: return "unknown";
  }
}

inline Setting setting_from_name(const std::string& s) {
  if (s == "interior") return Setting::interior;
  if (s == "exterior") return Setting::exterior;
  return Setting::unknown;
}

inline const char* time_name(TimeOfDay t) {
  switch (t) {
    case TimeOfDay::day: return "day";
    case TimeOfDay::night: return "night";
    default: return "unknown";
  }
}

inline TimeOfDay time_from_name(const std::string& s) {
  if (s == "day") return TimeOfDay::day;
  if (s == "night") return TimeOfDay::night;
  return TimeOfDay::unknown;
}

inline void require_kind(const nlohmann::json& j, const char* kind) {
  if (!j.is_object() || j.value("kind", "") != kind) {
    throw IoError(std::string("expected a \"") + kind + "\" JSON document");
  }
}

inline nlohmann::json matrix_to_rows(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Eigen::MatrixXd rows_to_matrix(const nlohmann::json& rows, Eigen::Index cols_hint = 0) {
  Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  Eigen::Index m = n > 0 ? static_cast<Eigen::Index>(rows[0].size()) : cols_hint;
  Eigen::MatrixXd out(n, m);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < m; ++j) out(i, j) = rows[i][j].get<double>();
  return out;
}

inline nlohmann::json vector_to_json(const Eigen::VectorXd& v) {
  nlohmann::json a = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

inline Eigen::VectorXd json_to_vector(const nlohmann::json& a) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(a.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = a[i].get<double>();
  return v;
}

}  // namespace detail

inline nlohmann::json to_json(const Script& script) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "script";
  j["title"] = script.title;
  j["scenes"] = nlohmann::json::array();
  for (const auto& s : script.scenes) {
    nlohmann::json js;
    js["index"] = s.index;
    js["header"] = {{"raw_text", s.header.raw_text},
                    {"setting", detail::setting_name(s.header.setting)},
                    {"location", s.header.location},
                    {"time_of_day", detail::time_name(s.header.time_of_day)}};
    js["speakers"] = s.speakers;
    js["tokens"] = s.tokens;
    j["scenes"].push_back(std::move(js));
  }
  j["vocabulary"] = script.vocabulary;
  return j;
}

inline Script script_from_json(const nlohmann::json& j) {
  detail::require_kind(j, "script");
  Script script;
  script.title = j.value("title", "");
  for (const auto& js : j.at("scenes")) {
    Scene s;
    s.index = js.at("index").get<int>();
    const auto& h = js.at("header");
    s.header.raw_text = h.at("raw_text").get<std::string>();
    s.header.setting = detail::setting_from_name(h.at("setting").get<std::string>());
    s.header.location = h.at("location").get<std::string>();
    s.header.time_of_day = detail::time_from_name(h.at("time_of_day").get<std::string>());
    s.speakers = js.at("speakers").get<std::vector<std::string>>();
    s.tokens = js.at("tokens").get<std::vector<std::string>>();
    script.scenes.push_back(std::move(s));
  }
  script.vocabulary = j.at("vocabulary").get<std::vector<std::string>>();
  return script;
}

inline nlohmann::json to_json(const TermMatrix& m) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "term_matrix";
  j["row_labels"] = m.row_labels;
  j["col_labels"] = m.col_labels;
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t jx = 0; jx < m.cols(); ++jx) row.push_back(m.at(i, jx));
    rows.push_back(std::move(row));
  }
  j["counts"] = std::move(rows);
  return j;
}

inline TermMatrix term_matrix_from_json(const nlohmann::json& j) {
  detail::require_kind(j, "term_matrix");
  TermMatrix m;
  m.row_labels = j.at("row_labels").get<std::vector<int>>();
  m.col_labels = j.at("col_labels").get<std::vector<std::string>>();
  m.counts.reserve(m.rows() * m.cols());
  for (const auto& row : j.at("counts"))
    for (const auto& c : row) m.counts.push_back(c.get<std::int64_t>());
  return m;
}

inline nlohmann::json to_json(const CaModel& model) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "ca_model";
  j["eigenvalues"] = detail::vector_to_json(model.eigenvalues);
  j["percent_inertia"] = detail::vector_to_json(model.percent_inertia);
  j["total_inertia"] = model.total_inertia;
  j["row_labels"] = model.row_labels;
  j["col_labels"] = model.col_labels;
  j["row_mass"] = detail::vector_to_json(model.row_mass);
  j["col_mass"] = detail::vector_to_json(model.col_mass);
  j["row_coords"] = detail::matrix_to_rows(model.row_coords);
  j["col_coords"] = detail::matrix_to_rows(model.col_coords);
  return j;
}

inline CaModel ca_model_from_json(const nlohmann::json& j) {
  detail::require_kind(j, "ca_model");
  CaModel model;
  model.eigenvalues = detail::json_to_vector(j.at("eigenvalues"));
  model.percent_inertia = detail::json_to_vector(j.at("percent_inertia"));
  model.total_inertia = j.at("total_inertia").get<double>();
  model.row_labels = j.at("row_labels").get<std::vector<int>>();
  model.col_labels = j.at("col_labels").get<std::vector<std::string>>();
  model.row_mass = detail::json_to_vector(j.at("row_mass"));
  model.col_mass = detail::json_to_vector(j.at("col_mass"));
  model.row_coords = detail::rows_to_matrix(j.at("row_coords"), model.factor_count());
  model.col_coords = detail::rows_to_matrix(j.at("col_coords"), model.factor_count());
  return model;
}

inline nlohmann::json to_json(const PertinenceMap& map) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "pertinence";
  j["band_count"] = map.band_count;
  j["candidate_set"] = map.candidate_set;
  j["entries"] = nlohmann::json::array();
  for (const auto& e : map.entries) {
    j["entries"].push_back({{"scene", e.scene_index},
                            {"word", e.word},
                            {"distance", e.distance},
                            {"band", e.band}});
  }
  return j;
}

inline PertinenceMap pertinence_from_json(const nlohmann::json& j) {
  detail::require_kind(j, "pertinence");
  PertinenceMap map;
  map.band_count = j.at("band_count").get<int>();
  map.candidate_set = j.at("candidate_set").get<std::vector<std::string>>();
  for (const auto& je : j.at("entries")) {
    PertinenceEntry e;
    e.scene_index = je.at("scene").get<int>();
    e.word = je.at("word").get<std::string>();
    e.distance = je.at("distance").get<double>();
    e.band = je.at("band").get<int>();
    map.entries.push_back(std::move(e));
  }
  return map;
}

inline nlohmann::json to_json(const ScriptStats& st) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "stats";
  j["scenes"] = st.scene_count;
  j["unique_words"] = st.unique_words;
  j["total_words"] = st.total_words;
  j["top"] = nlohmann::json::array();
  for (const auto& [word, count] : st.top) j["top"].push_back({{"word", word}, {"count", count}});
  return j;
}

}  // namespace scenecloud
