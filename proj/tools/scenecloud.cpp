// scenecloud: parse filmscripts, embed scenes and words with
// Correspondence Analysis, pick the most pertinent word per scene, and
// render scene-ordered tag clouds and factor maps.
//
// Subcommands: stats, analyze, cloud, characters, map.
// Exit codes: 0 ok, 2 I/O or parse, 3 numeric, 4 candidate, 5 dimensionality.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "scenecloud/ca.hpp"
#include "scenecloud/errors.hpp"
#include "scenecloud/json_io.hpp"
#include "scenecloud/pertinence.hpp"
#include "scenecloud/render.hpp"
#include "scenecloud/script.hpp"
#include "scenecloud/term_matrix.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunConfig {
  std::vector<std::string> inputs;
  std::string out_dir = "out";
  std::vector<std::string> header_patterns;  // empty: built-in defaults
  std::size_t min_word_len = 2;
  bool keep_frontpiece = false;
  bool count_headers = false;
  int bands = 6;
  std::string characters = "grissom,warrick,nick,catherine,brass,sara";
  std::size_t top_k = 20;
  bool baseline = false;
  std::string axes = "1,2";
  bool label = false;
  bool color_by_band = false;
  std::string layout = "flow";
  std::string model_path;  // reuse a persisted model instead of refitting
};

int exit_code_for(scenecloud::errc code) {
  switch (code) {
    case scenecloud::errc::io_error:
    case scenecloud::errc::no_scenes_found:
      return 2;
    case scenecloud::errc::degenerate_matrix:
    case scenecloud::errc::zero_marginal:
    case scenecloud::errc::decomposition_failure:
      return 3;
    case scenecloud::errc::unknown_candidate:
      return 4;
    case scenecloud::errc::insufficient_factors:
      return 5;
  }
  return 1;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw scenecloud::IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw scenecloud::IoError("cannot write " + path.string());
  out << content;
}

void write_json(const fs::path& path, const json& j) { write_file(path, j.dump(2) + "\n"); }

scenecloud::ParserConfig parser_config(const RunConfig& cfg, const std::string& input) {
  scenecloud::ParserConfig pc;
  if (!cfg.header_patterns.empty()) pc.header_patterns = cfg.header_patterns;
  pc.min_word_len = cfg.min_word_len;
  pc.keep_frontpiece = cfg.keep_frontpiece;
  pc.count_headers = cfg.count_headers;
  pc.title = fs::path(input).stem().string();
  return pc;
}

struct Pipeline {
  scenecloud::Script script;
  scenecloud::TermMatrix matrix;
  scenecloud::FrequencyTable freq;
  scenecloud::CaModel model;
};

Pipeline run_pipeline(const RunConfig& cfg, const std::string& input, std::ostream& warn) {
  Pipeline pipe;
  std::vector<std::string> warnings;
  pipe.script = scenecloud::parse_script(read_file(input), parser_config(cfg, input), &warnings);
  for (const auto& w : warnings) warn << "warning: " << w << "\n";
  pipe.matrix = scenecloud::build_matrix(pipe.script);
  pipe.freq = scenecloud::to_frequencies(pipe.matrix);
  if (!cfg.model_path.empty()) {
    pipe.model = scenecloud::ca_model_from_json(json::parse(read_file(cfg.model_path)));
  } else {
    pipe.model = scenecloud::fit_ca(pipe.freq);
  }
  return pipe;
}

std::vector<std::string> character_list(const std::string& value) {
  std::string raw = value;
  std::error_code ec;
  if (fs::exists(value, ec)) raw = read_file(value);
  // names are matched against the tokenized lowercase form
  return scenecloud::tokenize(raw, 1);
}

std::pair<int, int> parse_axes(const std::string& value) {
  auto comma = value.find(',');
  if (comma == std::string::npos) {
    throw scenecloud::InsufficientFactors("--axes expects \"a,b\", got \"" + value + "\"");
  }
  try {
    return {std::stoi(value.substr(0, comma)), std::stoi(value.substr(comma + 1))};
  } catch (const std::exception&) {
    throw scenecloud::InsufficientFactors("--axes expects \"a,b\", got \"" + value + "\"");
  }
}

scenecloud::CloudOptions cloud_options(const RunConfig& cfg, const std::string& title) {
  scenecloud::CloudOptions opt;
  opt.title = title;
  opt.layout = (cfg.layout == "grid") ? scenecloud::CloudLayout::grid
                                      : scenecloud::CloudLayout::flow;
  opt.color_by_band = cfg.color_by_band;
  return opt;
}

void cmd_stats(const RunConfig& cfg, const std::string& input, const fs::path& out_dir,
               std::ostream& out, std::ostream& warn) {
  scenecloud::Script script;
  std::vector<std::string> warnings;
  script = scenecloud::parse_script(read_file(input), parser_config(cfg, input), &warnings);
  for (const auto& w : warnings) warn << "warning: " << w << "\n";
  auto st = scenecloud::stats(script, cfg.top_k);
  out << "scenes: " << st.scene_count << ", unique words: " << st.unique_words << "\n";
  out << "total words: " << st.total_words << "\n";
  out << "top words: ";
  for (std::size_t i = 0; i < st.top.size(); ++i) {
    if (i) out << "; ";
    out << st.top[i].first << " " << st.top[i].second;
  }
  out << "\n";
  auto path = out_dir / (script.title + ".stats.json");
  write_json(path, scenecloud::to_json(st));
  out << "wrote " << path.string() << "\n";
}

void cmd_analyze(const RunConfig& cfg, const std::string& input, const fs::path& out_dir,
                 std::ostream& out, std::ostream& warn) {
  auto pipe = run_pipeline(cfg, input, warn);
  const auto& stem = pipe.script.title;
  write_json(out_dir / (stem + ".script.json"), scenecloud::to_json(pipe.script));
  write_json(out_dir / (stem + ".matrix.json"), scenecloud::to_json(pipe.matrix));
  write_json(out_dir / (stem + ".model.json"), scenecloud::to_json(pipe.model));
  if (pipe.model.factor_count() == 0) warn << "warning: 0 retained factors\n";
  out << "factors: " << pipe.model.factor_count()
      << ", total inertia: " << scenecloud::detail::fmt_general(pipe.model.total_inertia, 6)
      << "\n";
  out << "wrote " << (out_dir / (stem + ".script.json")).string() << ", "
      << (out_dir / (stem + ".matrix.json")).string() << ", "
      << (out_dir / (stem + ".model.json")).string() << "\n";
}

void cmd_cloud(const RunConfig& cfg, const std::string& input, const fs::path& out_dir,
               std::ostream& out, std::ostream& warn) {
  auto pipe = run_pipeline(cfg, input, warn);
  const auto& stem = pipe.script.title;
  auto map = scenecloud::nearest_word_per_scene(pipe.model, cfg.bands);
  write_json(out_dir / (stem + ".pertinence.json"), scenecloud::to_json(map));
  auto rendered = scenecloud::render_cloud(map, cloud_options(cfg, stem + ": semantic tag cloud"));
  write_file(out_dir / (stem + ".cloud.svg"), rendered.svg);
  write_file(out_dir / (stem + ".cloud.html"), rendered.html);
  out << "wrote " << (out_dir / (stem + ".cloud.svg")).string() << ", "
      << (out_dir / (stem + ".cloud.html")).string() << ", "
      << (out_dir / (stem + ".pertinence.json")).string() << "\n";
  auto duplicates = scenecloud::uniqueness_report(map);
  for (const auto& [word, scenes] : duplicates) {
    std::string list;
    for (std::size_t i = 0; i < scenes.size(); ++i) {
      if (i) list += ", ";
      list += std::to_string(scenes[i]);
    }
    warn << "note: \"" << word << "\" characterizes scenes " << list << "\n";
  }
  if (cfg.baseline) {
    auto html = scenecloud::render_frequency_cloud(pipe.matrix, cfg.top_k,
                                                   stem + ": frequency cloud");
    write_file(out_dir / (stem + ".freq.html"), html);
    out << "wrote " << (out_dir / (stem + ".freq.html")).string() << "\n";
  }
}

void cmd_characters(const RunConfig& cfg, const std::string& input, const fs::path& out_dir,
                    std::ostream& out, std::ostream& warn) {
  auto pipe = run_pipeline(cfg, input, warn);
  const auto& stem = pipe.script.title;
  auto names = character_list(cfg.characters);
  auto map = scenecloud::nearest_word_per_scene(pipe.model, names, cfg.bands);
  write_json(out_dir / (stem + ".characters.json"), scenecloud::to_json(map));
  auto rendered =
      scenecloud::render_cloud(map, cloud_options(cfg, stem + ": character track"));
  write_file(out_dir / (stem + ".characters.svg"), rendered.svg);
  write_file(out_dir / (stem + ".characters.html"), rendered.html);
  out << "wrote " << (out_dir / (stem + ".characters.svg")).string() << ", "
      << (out_dir / (stem + ".characters.html")).string() << ", "
      << (out_dir / (stem + ".characters.json")).string() << "\n";
}

void cmd_map(const RunConfig& cfg, const std::string& input, const fs::path& out_dir,
             std::ostream& out, std::ostream& warn) {
  auto pipe = run_pipeline(cfg, input, warn);
  const auto& stem = pipe.script.title;
  auto [a, b] = parse_axes(cfg.axes);
  scenecloud::FactorMapSpec spec;
  spec.axis_a = a;
  spec.axis_b = b;
  spec.label_points = cfg.label;
  spec.title = stem + ": factor map";
  write_file(out_dir / (stem + ".map.svg"), scenecloud::render_factor_map(pipe.model, spec));
  out << "wrote " << (out_dir / (stem + ".map.svg")).string() << "\n";
}

using CommandFn = void (*)(const RunConfig&, const std::string&, const fs::path&, std::ostream&,
                           std::ostream&);

struct InputResult {
  std::string out;
  std::string err;
  int code = 0;
};

InputResult run_one(CommandFn fn, const RunConfig& cfg, const std::string& input,
                    const fs::path& out_dir) {
  InputResult r;
  std::ostringstream out, err;
  try {
    fn(cfg, input, out_dir, out, err);
  } catch (const scenecloud::Error& e) {
    err << "error: " << e.what() << "\n";
    r.code = exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    r.code = 1;
  }
  r.out = out.str();
  r.err = err.str();
  return r;
}

// Inputs are independent pipelines; run them in parallel and report in
// input order.  The first failing input's code becomes the exit code.
int run_command(CommandFn fn, const RunConfig& cfg) {
  fs::path out_dir(cfg.out_dir);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    std::cerr << "error: cannot create output directory " << out_dir.string() << "\n";
    return 2;
  }
  std::vector<std::future<InputResult>> futures;
  futures.reserve(cfg.inputs.size());
  for (const auto& input : cfg.inputs) {
    futures.push_back(std::async(std::launch::async, run_one, fn, std::cref(cfg),
                                 std::cref(input), std::cref(out_dir)));
  }
  int code = 0;
  for (std::size_t i = 0; i < futures.size(); ++i) {
    auto r = futures[i].get();
    if (cfg.inputs.size() > 1) std::cout << "== " << cfg.inputs[i] << "\n";
    std::cout << r.out;
    std::cerr << r.err;
    if (code == 0 && r.code != 0) code = r.code;
  }
  return code;
}

void add_common_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("input", cfg.inputs, "script file(s), UTF-8 plain text")->required();
  sub->add_option("--out-dir", cfg.out_dir, "output directory (created if missing)")
      ->capture_default_str();
  sub->add_option("--header-pattern", cfg.header_patterns,
                  "scene header regex (repeatable; replaces the built-in INT/EXT patterns)");
  sub->add_option("--min-word-len", cfg.min_word_len, "minimum token length in characters")
      ->capture_default_str();
  sub->add_flag("--keep-frontpiece", cfg.keep_frontpiece,
                "keep text before the first header as a pseudo-scene");
  sub->add_flag("--count-headers", cfg.count_headers,
                "tokenize header lines into their scenes");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semantic tag clouds and factor maps for filmscripts"};
  app.require_subcommand(1);
  app.fallthrough();  // lets --config appear after the subcommand
  app.set_config("--config", "", "INI configuration file; command-line flags win");

  RunConfig cfg;

  auto* stats = app.add_subcommand("stats", "scene count, vocabulary size, top words");
  add_common_options(stats, cfg);
  stats->add_option("--top-k", cfg.top_k, "how many top words to report")->capture_default_str();

  auto* analyze = app.add_subcommand(
      "analyze", "fit the scene/word embedding and persist script, matrix and model JSON");
  add_common_options(analyze, cfg);

  auto* cloud = app.add_subcommand("cloud", "scene-ordered semantic tag cloud (SVG and HTML)");
  add_common_options(cloud, cfg);
  cloud->add_option("--bands", cfg.bands, "number of font-size bands")->capture_default_str();
  cloud->add_option("--model", cfg.model_path, "reuse a persisted model JSON instead of refitting");
  cloud->add_flag("--baseline", cfg.baseline, "also emit an alphabetical frequency cloud");
  cloud->add_option("--top-k", cfg.top_k, "tag count for the frequency baseline")
      ->capture_default_str();
  cloud->add_option("--layout", cfg.layout, "flow or grid")->capture_default_str();
  cloud->add_flag("--color-by-band", cfg.color_by_band, "tint tags by band");

  auto* characters =
      app.add_subcommand("characters", "track the principal character closest to each scene");
  add_common_options(characters, cfg);
  characters->add_option("--characters", cfg.characters, "comma list or file of character names")
      ->capture_default_str();
  characters->add_option("--bands", cfg.bands, "number of font-size bands")->capture_default_str();
  characters->add_option("--model", cfg.model_path, "reuse a persisted model JSON");
  characters->add_option("--layout", cfg.layout, "flow or grid")->capture_default_str();
  characters->add_flag("--color-by-band", cfg.color_by_band, "tint tags by band");

  auto* map = app.add_subcommand("map", "planar factor map of scenes and words (SVG)");
  add_common_options(map, cfg);
  map->add_option("--axes", cfg.axes, "factor pair to plot, e.g. 1,2")->capture_default_str();
  map->add_flag("--label", cfg.label, "label points (off by default)");
  map->add_option("--model", cfg.model_path, "reuse a persisted model JSON");

  CLI11_PARSE(app, argc, argv);

  if (stats->parsed()) return run_command(cmd_stats, cfg);
  if (analyze->parsed()) return run_command(cmd_analyze, cfg);
  if (cloud->parsed()) return run_command(cmd_cloud, cfg);
  if (characters->parsed()) return run_command(cmd_characters, cfg);
  if (map->parsed()) return run_command(cmd_map, cfg);
  return 0;
}
