#include <catch2/catch_amalgamated.hpp>

#include "scenecloud/json_io.hpp"
#include "test_support.hpp"

using namespace scenecloud;

TEST_CASE("script JSON round-trips bit-exactly") {
  auto script = parse_script(testsupport::read_fixture("story.txt"));
  script.title = "story";
  auto j = to_json(script);
  auto back = script_from_json(j);
  REQUIRE(back == script);
  // serialized form of the reparsed object is byte-identical
  REQUIRE(to_json(back).dump() == j.dump());
  CHECK(j["schema_version"] == 1);
  CHECK(j["kind"] == "script");
}

TEST_CASE("term matrix JSON round-trips") {
  auto m = build_matrix(parse_script(testsupport::read_fixture("story.txt")));
  auto j = to_json(m);
  auto back = term_matrix_from_json(j);
  REQUIRE(back == m);
  CHECK(j["counts"].size() == m.rows());
  CHECK(j["counts"][0].size() == m.cols());
}

TEST_CASE("model JSON carries eigenvalues, masses and coordinates") {
  auto ft = to_frequencies(build_matrix(parse_script(testsupport::read_fixture("story.txt"))));
  auto model = fit_ca(ft);
  auto j = to_json(model);
  CHECK(j["kind"] == "ca_model");
  CHECK(j["eigenvalues"].size() == static_cast<std::size_t>(model.factor_count()));
  auto back = ca_model_from_json(j);
  REQUIRE(back.factor_count() == model.factor_count());
  REQUIRE((back.row_coords.array() == model.row_coords.array()).all());
  REQUIRE((back.col_coords.array() == model.col_coords.array()).all());
  REQUIRE(back.total_inertia == model.total_inertia);
  REQUIRE(back.col_labels == model.col_labels);
  // a reloaded model serves distance queries identically
  for (Eigen::Index i = 0; i < model.row_coords.rows(); ++i) {
    REQUIRE(row_word_distance(back, i, 0) == row_word_distance(model, i, 0));
  }
}

TEST_CASE("pertinence JSON round-trips") {
  PertinenceMap map;
  map.band_count = 4;
  map.candidate_set = {"aa", "bb"};
  map.entries = {{1, "aa", 0.125, 4}, {2, "bb", 2.5, 1}};
  auto back = pertinence_from_json(to_json(map));
  REQUIRE(back == map);
}

TEST_CASE("wrong document kinds are rejected") {
  auto m = build_matrix(parse_script(testsupport::read_fixture("story.txt")));
  REQUIRE_THROWS_AS(script_from_json(to_json(m)), IoError);
  REQUIRE_THROWS_AS(ca_model_from_json(nlohmann::json::object()), IoError);
}

TEST_CASE("stats JSON lists scenes, words and top counts") {
  auto script = parse_script(testsupport::read_fixture("story.txt"));
  auto j = to_json(stats(script, 3));
  CHECK(j["scenes"] == 6);
  CHECK(j["unique_words"] == 40);
  CHECK(j["total_words"] == 90);
  REQUIRE(j["top"].size() == 3);
  CHECK(j["top"][0]["word"] == "the");
}
