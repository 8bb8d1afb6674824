#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "scenecloud/script.hpp"
#include "test_support.hpp"

using namespace scenecloud;

namespace {
bool has_token(const Scene& s, const std::string& t) {
  return std::find(s.tokens.begin(), s.tokens.end(), t) != s.tokens.end();
}
}  // namespace

TEST_CASE("scene 25 excerpt parses header, speaker and tokens") {
  auto text = testsupport::read_fixture("excerpt_scene25.txt");
  auto script = parse_script(text);
  REQUIRE(script.scenes.size() == 1);
  const Scene& s = script.scenes[0];
  CHECK(s.header.setting == Setting::interior);
  CHECK(s.header.location == "CSI - EVIDENCE ROOM");
  CHECK(s.header.time_of_day == TimeOfDay::night);
  REQUIRE(s.speakers == std::vector<std::string>{"WARRICK BROWN"});
  CHECK(has_token(s, "rattle"));
  CHECK(has_token(s, "damned"));
  CHECK(has_token(s, "toe"));
  // speaker names enter the token stream too
  CHECK(has_token(s, "warrick"));
  CHECK(has_token(s, "brown"));
  // apostrophe handling inside dialog
  CHECK(has_token(s, "ll"));
  CHECK_FALSE(has_token(s, "i"));
}

TEST_CASE("segmentation yields one scene per header in textual order") {
  const std::string text =
      "[INT. KITCHEN -- DAY]\nfirst words here\n"
      "[EXT. YARD -- NIGHT]\nsecond words there\n";
  auto script = parse_script(text);
  REQUIRE(script.scenes.size() == 2);
  CHECK(script.scenes[0].index == 1);
  CHECK(script.scenes[1].index == 2);
  CHECK(script.scenes[0].header.location == "KITCHEN");
  CHECK(script.scenes[1].header.setting == Setting::exterior);
  CHECK(script.scenes[1].header.time_of_day == TimeOfDay::night);
}

TEST_CASE("unbracketed headers match the default patterns") {
  const std::string text = "INT. DINER - DAY\nsome dialog lines\nEXT. PARKING LOT - NIGHT\nmore\n";
  auto script = parse_script(text);
  REQUIRE(script.scenes.size() == 2);
  CHECK(script.scenes[0].header.location == "DINER");
  CHECK(script.scenes[0].header.time_of_day == TimeOfDay::day);
  CHECK(script.scenes[1].header.location == "PARKING LOT");
}

TEST_CASE("header without markers leaves fields unknown") {
  auto h = parse_header("[INT. BACKSTAGE]");
  CHECK(h.setting == Setting::interior);
  CHECK(h.time_of_day == TimeOfDay::unknown);
  CHECK(h.location == "BACKSTAGE");

  auto h2 = parse_header("SCENE TWELVE");
  CHECK(h2.setting == Setting::unknown);
  CHECK(h2.time_of_day == TimeOfDay::unknown);
}

TEST_CASE("DAY and NIGHT only match as standalone trailing words") {
  CHECK(parse_header("[INT. OFFICE -- FRIDAY]").time_of_day == TimeOfDay::unknown);
  CHECK(parse_header("[INT. MIDNIGHT CLUB]").time_of_day == TimeOfDay::unknown);
  CHECK(parse_header("[EXT. DOCKS - DAY]").time_of_day == TimeOfDay::day);
}

TEST_CASE("frontpiece is discarded by default and kept on request") {
  const std::string text =
      "SHOW TITLE\ncredits and storyline preamble\n"
      "[INT. STAGE -- DAY]\nactual scene words\n";
  auto script = parse_script(text);
  REQUIRE(script.scenes.size() == 1);
  CHECK_FALSE(has_token(script.scenes[0], "credits"));

  ParserConfig cfg;
  cfg.keep_frontpiece = true;
  auto kept = parse_script(text, cfg);
  REQUIRE(kept.scenes.size() == 2);
  CHECK(kept.scenes[0].header.raw_text == "(frontpiece)");
  CHECK(has_token(kept.scenes[0], "credits"));
  CHECK(kept.scenes[1].index == 2);
}

TEST_CASE("header tokens are excluded by default, included with count_headers") {
  const std::string text = "[INT. EVIDENCE ROOM -- NIGHT]\nplain words\n";
  auto script = parse_script(text);
  CHECK_FALSE(has_token(script.scenes[0], "evidence"));
  CHECK_FALSE(has_token(script.scenes[0], "night"));

  ParserConfig cfg;
  cfg.count_headers = true;
  auto counted = parse_script(text, cfg);
  CHECK(has_token(counted.scenes[0], "evidence"));
  CHECK(has_token(counted.scenes[0], "night"));
}

TEST_CASE("speaker lines register once, in order, as written") {
  const std::string text =
      "[INT. ROOM -- DAY]\n"
      "JANE DOE: first line spoken\n"
      "RICK: reply text\n"
      "JANE DOE: again later\n"
      "(note: lowercase prefix is not a speaker)\n"
      "X: too short to be a name\n";
  auto script = parse_script(text);
  REQUIRE(script.scenes[0].speakers == std::vector<std::string>({"JANE DOE", "RICK"}));
}

TEST_CASE("empty scenes are dropped with a warning and scenes renumbered") {
  const std::string text =
      "[INT. FULL -- DAY]\nwords exist here\n"
      "[INT. BARE -- DAY]\n...\n"
      "[INT. LAST -- DAY]\nclosing words\n";
  std::vector<std::string> warnings;
  auto script = parse_script(text, {}, &warnings);
  REQUIRE(script.scenes.size() == 2);
  CHECK(script.scenes[0].index == 1);
  CHECK(script.scenes[1].index == 2);
  CHECK(script.scenes[1].header.location == "LAST");
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("BARE") != std::string::npos);
}

TEST_CASE("no matching header raises NoScenesFound") {
  REQUIRE_THROWS_AS(parse_script("just prose\nno headers anywhere\n"), NoScenesFound);
}

TEST_CASE("script whose scenes all tokenize to nothing is rejected") {
  REQUIRE_THROWS_AS(parse_script("[INT. A -- DAY]\n...\n[EXT. B -- DAY]\n!!\n"), NoScenesFound);
}

TEST_CASE("custom header patterns replace the defaults") {
  ParserConfig cfg;
  cfg.header_patterns = {R"(^SCENE \d+$)"};
  const std::string text = "SCENE 1\nalpha beta\nSCENE 2\ngamma delta\n";
  auto script = parse_script(text, cfg);
  REQUIRE(script.scenes.size() == 2);
  CHECK(script.scenes[0].header.setting == Setting::unknown);
  // default patterns do not match this source at all
  REQUIRE_THROWS_AS(parse_script(text), NoScenesFound);
}

TEST_CASE("vocabulary is the sorted union of scene tokens") {
  auto text = testsupport::read_fixture("story.txt");
  auto script = parse_script(text);
  REQUIRE(script.scenes.size() == 6);
  REQUIRE(script.vocabulary.size() == 40);
  CHECK(std::is_sorted(script.vocabulary.begin(), script.vocabulary.end()));
  std::size_t total = 0;
  for (const auto& s : script.scenes) total += s.tokens.size();
  CHECK(total == 90);
}

TEST_CASE("stats reports counts with lexicographic tie-breaks") {
  auto script = testsupport::make_script({{"aa", "aa", "bb"}, {"bb"}});
  auto st = stats(script, 10);
  CHECK(st.scene_count == 2);
  CHECK(st.unique_words == 2);
  CHECK(st.total_words == 4);
  REQUIRE(st.top.size() == 2);
  CHECK(st.top[0] == std::pair<std::string, std::size_t>{"aa", 2});
  CHECK(st.top[1] == std::pair<std::string, std::size_t>{"bb", 2});
}
