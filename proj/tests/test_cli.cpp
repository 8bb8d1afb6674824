#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include "test_support.hpp"

namespace fs = std::filesystem;

namespace {

struct CmdResult {
  int code = -1;
  std::string output;  // stdout + stderr
};

CmdResult run_tool(const std::string& args) {
  std::string cmd = std::string("\"") + SCENECLOUD_TOOL + "\" " + args + " 2>&1";
  CmdResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.output.append(buf, n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

// Per-test scratch directory, removed on destruction.
struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("scenecloud_" + tag + "_" + std::to_string(getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str() const { return path.string(); }
};

std::string q(const std::string& s) { return "\"" + s + "\""; }

}  // namespace

TEST_CASE("stats reports the fixture counts and writes JSON") {
  TempDir tmp("stats");
  auto r = run_tool("stats " + q(testsupport::fixture_path("story.txt")) + " --out-dir " +
                    tmp.str());
  CHECK(r.code == 0);
  CHECK(r.output.find("scenes: 6, unique words: 40") != std::string::npos);
  CHECK(r.output.find("total words: 90") != std::string::npos);
  auto j = nlohmann::json::parse(testsupport::read_file((tmp.path / "story.stats.json").string()));
  CHECK(j["scenes"] == 6);
  CHECK(j["unique_words"] == 40);
  CHECK(j["schema_version"] == 1);
}

TEST_CASE("missing input exits 2 with an error message") {
  TempDir tmp("missing");
  auto r = run_tool("stats /no/such/file.txt --out-dir " + tmp.str());
  CHECK(r.code == 2);
  CHECK(r.output.find("error:") != std::string::npos);
}

TEST_CASE("unparseable input exits 2 naming the offending line") {
  TempDir tmp("prose");
  auto bad = tmp.path / "prose.txt";
  std::ofstream(bad) << "just a paragraph of prose\nwithout any scene headers\n";
  auto r = run_tool("stats " + q(bad.string()) + " --out-dir " + tmp.str());
  CHECK(r.code == 2);
  CHECK(r.output.find("just a paragraph of prose") != std::string::npos);
}

TEST_CASE("analyze persists script, matrix and model JSON") {
  TempDir tmp("analyze");
  auto r = run_tool("analyze " + q(testsupport::fixture_path("story.txt")) + " --out-dir " +
                    tmp.str());
  REQUIRE(r.code == 0);
  CHECK(fs::exists(tmp.path / "story.script.json"));
  CHECK(fs::exists(tmp.path / "story.matrix.json"));
  CHECK(fs::exists(tmp.path / "story.model.json"));
  auto j = nlohmann::json::parse(testsupport::read_file((tmp.path / "story.model.json").string()));
  CHECK(j["kind"] == "ca_model");
  // 6 scenes x 40 words: at most 5 factors
  CHECK(j["eigenvalues"].size() <= 5);
  CHECK(j["eigenvalues"].size() >= 2);
  CHECK(r.output.find("factors: ") != std::string::npos);
}

TEST_CASE("analyze warns when nothing is retained") {
  TempDir tmp("uniform");
  auto r = run_tool("analyze " + q(testsupport::fixture_path("uniform.txt")) + " --out-dir " +
                    tmp.str());
  CHECK(r.code == 0);
  CHECK(r.output.find("0 retained factors") != std::string::npos);
}

TEST_CASE("cloud emits one tag per scene, deterministically") {
  TempDir tmp("cloud");
  auto args = "cloud " + q(testsupport::fixture_path("story.txt")) + " --out-dir " + tmp.str();
  REQUIRE(run_tool(args).code == 0);
  auto svg1 = testsupport::read_file((tmp.path / "story.cloud.svg").string());
  auto html1 = testsupport::read_file((tmp.path / "story.cloud.html").string());
  REQUIRE(run_tool(args).code == 0);
  auto svg2 = testsupport::read_file((tmp.path / "story.cloud.svg").string());
  CHECK(svg1 == svg2);

  std::size_t tags = 0, pos = 0;
  while ((pos = svg1.find("<text ", pos)) != std::string::npos) {
    ++tags;
    ++pos;
  }
  CHECK(tags == 6);
  CHECK(html1.find("<span ") != std::string::npos);
  auto pj = nlohmann::json::parse(
      testsupport::read_file((tmp.path / "story.pertinence.json").string()));
  CHECK(pj["entries"].size() == 6);
}

TEST_CASE("cloud --bands 1 renders a uniform-size cloud") {
  TempDir tmp("bands1");
  REQUIRE(run_tool("cloud " + q(testsupport::fixture_path("story.txt")) + " --bands 1 --out-dir " +
                   tmp.str())
              .code == 0);
  auto svg = testsupport::read_file((tmp.path / "story.cloud.svg").string());
  CHECK(svg.find("font-size=\"18\"") != std::string::npos);
  CHECK(svg.find("font-size=\"31\"") == std::string::npos);
  CHECK(svg.find("font-size=\"10\"") == std::string::npos);
}

TEST_CASE("cloud --baseline adds the frequency comparison cloud") {
  TempDir tmp("baseline");
  auto r = run_tool("cloud " + q(testsupport::fixture_path("story.txt")) +
                    " --baseline --top-k 50 --out-dir " + tmp.str());
  REQUIRE(r.code == 0);
  auto html = testsupport::read_file((tmp.path / "story.freq.html").string());
  // top-k larger than the vocabulary shows all 40 words
  std::size_t spans = 0, pos = 0;
  while ((pos = html.find("<span ", pos)) != std::string::npos) {
    ++spans;
    ++pos;
  }
  CHECK(spans == 40);
}

TEST_CASE("characters tracks a closed candidate set") {
  TempDir tmp("chars");
  auto r = run_tool("characters " + q(testsupport::fixture_path("story.txt")) +
                    " --characters alice,bob --out-dir " + tmp.str());
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(
      testsupport::read_file((tmp.path / "story.characters.json").string()));
  REQUIRE(j["entries"].size() == 6);
  for (const auto& e : j["entries"]) {
    std::string w = e["word"];
    CHECK((w == "alice" || w == "bob"));
  }
}

TEST_CASE("characters accepts a names file") {
  TempDir tmp("charfile");
  auto list = tmp.path / "names.txt";
  std::ofstream(list) << "alice\nbob\n";
  auto r = run_tool("characters " + q(testsupport::fixture_path("story.txt")) +
                    " --characters " + q(list.string()) + " --out-dir " + tmp.str());
  CHECK(r.code == 0);
}

TEST_CASE("a character absent from the vocabulary exits 4 with its name") {
  TempDir tmp("badchar");
  auto r = run_tool("characters " + q(testsupport::fixture_path("story.txt")) +
                    " --characters alice,charlie --out-dir " + tmp.str());
  CHECK(r.code == 4);
  CHECK(r.output.find("charlie") != std::string::npos);
}

TEST_CASE("map renders the requested factor plane") {
  TempDir tmp("map");
  auto r = run_tool("map " + q(testsupport::fixture_path("story.txt")) + " --out-dir " + tmp.str());
  REQUIRE(r.code == 0);
  auto svg = testsupport::read_file((tmp.path / "story.map.svg").string());
  std::size_t markers = 0, pos = 0;
  while ((pos = svg.find("<path ", pos)) != std::string::npos) {
    ++markers;
    ++pos;
  }
  CHECK(markers == 6);
  CHECK(svg.find("Factor 1 (") != std::string::npos);

  auto r23 = run_tool("map " + q(testsupport::fixture_path("story.txt")) +
                      " --axes 2,3 --out-dir " + tmp.str());
  REQUIRE(r23.code == 0);
  auto svg23 = testsupport::read_file((tmp.path / "story.map.svg").string());
  CHECK(svg23.find("Factor 2 (") != std::string::npos);
  CHECK(svg23.find("Factor 3 (") != std::string::npos);
}

TEST_CASE("map on a one-factor table exits 5") {
  TempDir tmp("map1");
  auto r = run_tool("map " + q(testsupport::fixture_path("tiny.txt")) + " --out-dir " + tmp.str());
  CHECK(r.code == 5);
}

TEST_CASE("multiple inputs are processed and reported per stem") {
  TempDir tmp("multi");
  auto r = run_tool("stats " + q(testsupport::fixture_path("story.txt")) + " " +
                    q(testsupport::fixture_path("disjoint.txt")) + " --out-dir " + tmp.str());
  REQUIRE(r.code == 0);
  CHECK(r.output.find("== ") != std::string::npos);
  CHECK(fs::exists(tmp.path / "story.stats.json"));
  CHECK(fs::exists(tmp.path / "disjoint.stats.json"));
  // the first failure determines the exit code, later inputs still run
  auto rfail = run_tool("stats /no/such.txt " + q(testsupport::fixture_path("story.txt")) +
                        " --out-dir " + tmp.str());
  CHECK(rfail.code == 2);
  CHECK(rfail.output.find("scenes: 6") != std::string::npos);
}

TEST_CASE("config file supplies defaults, flags win") {
  TempDir tmp("config");
  auto ini = tmp.path / "scenecloud.ini";
  std::ofstream(ini) << "[stats]\ntop-k=2\nout-dir=" << tmp.str() << "\n";
  auto r = run_tool("stats " + q(testsupport::fixture_path("story.txt")) + " --config " +
                    q(ini.string()));
  REQUIRE(r.code == 0);
  // top words line carries exactly two entries (one separator)
  auto pos = r.output.find("top words: ");
  REQUIRE(pos != std::string::npos);
  auto line = r.output.substr(pos, r.output.find('\n', pos) - pos);
  CHECK(line.find(';') != std::string::npos);
  CHECK(line.find(';') == line.rfind(';'));

  auto r2 = run_tool("stats " + q(testsupport::fixture_path("story.txt")) + " --config " +
                     q(ini.string()) + " --top-k 3");
  auto pos2 = r2.output.find("top words: ");
  auto line2 = r2.output.substr(pos2, r2.output.find('\n', pos2) - pos2);
  CHECK(std::count(line2.begin(), line2.end(), ';') == 2);
}

TEST_CASE("model JSON can be reused by cloud") {
  TempDir tmp("reuse");
  REQUIRE(run_tool("analyze " + q(testsupport::fixture_path("story.txt")) + " --out-dir " +
                   tmp.str())
              .code == 0);
  auto r = run_tool("cloud " + q(testsupport::fixture_path("story.txt")) + " --model " +
                    q((tmp.path / "story.model.json").string()) + " --out-dir " + tmp.str());
  CHECK(r.code == 0);
  CHECK(fs::exists(tmp.path / "story.cloud.svg"));
}
