#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <regex>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "scenecloud/errors.hpp"

namespace scenecloud {

enum class Setting { interior, exterior, unknown };
enum class TimeOfDay { day, night, unknown };

struct SceneHeader {
  std::string raw_text;
  Setting setting = Setting::unknown;
  std::string location;
  TimeOfDay time_of_day = TimeOfDay::unknown;

  bool operator==(const SceneHeader&) const = default;
};

struct Scene {
  int index = 0;  // 1-based position in the script
  SceneHeader header;
  std::vector<std::string> speakers;  // first-appearance order, as written
  std::vector<std::string> tokens;    // lowercase, punctuation-free, length >= min word length

  bool operator==(const Scene&) const = default;
};

struct Script {
  std::string title;
  std::vector<Scene> scenes;
  std::vector<std::string> vocabulary;  // sorted union of scene tokens

  bool operator==(const Script&) const = default;
};

namespace detail {

// Decodes the UTF-8 code point at pos, advancing pos.  Malformed bytes
// decode as U+FFFD one byte at a time so they act as delimiters.
inline char32_t next_code_point(std::string_view s, std::size_t& pos) {
  const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(s[i]); };
  unsigned char b0 = byte(pos);
  if (b0 < 0x80) {
    ++pos;
    return b0;
  }
  int len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++pos;
    return 0xFFFD;
  }
  if (pos + len > s.size()) {
    ++pos;
    return 0xFFFD;
  }
  for (int i = 1; i < len; ++i) {
    unsigned char bi = byte(pos + i);
    if ((bi & 0xC0) != 0x80) {
      ++pos;
      return 0xFFFD;
    }
    cp = (cp << 6) | (bi & 0x3F);
  }
  pos += len;
  return cp;
}

// Token characters are letters and digits; everything else is a delimiter.
// Input is expected in composed (NFC) form; beyond ASCII only the Latin-1
// letter block is classified as letters.
inline bool is_token_char(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= '0' && cp <= '9') || (cp >= 'A' && cp <= 'Z') || (cp >= 'a' && cp <= 'z');
  }
  return (cp >= 0xC0 && cp <= 0xFF) && cp != 0xD7 && cp != 0xF7;
}

inline char32_t to_lower(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  return cp;
}

inline void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

inline std::string_view trim(std::string_view s, std::string_view cut = " \t\r\n") {
  auto b = s.find_first_not_of(cut);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(cut);
  return s.substr(b, e - b + 1);
}

}  // namespace detail

// Splits text into lowercase word tokens.  Every character that is not a
// letter or digit acts as a delimiter (apostrophes included, so "doesn't"
// yields "doesn"); fragments shorter than min_word_len code points are
// dropped; digits are kept inside tokens.
inline std::vector<std::string> tokenize(std::string_view text, std::size_t min_word_len = 2) {
  std::vector<std::string> out;
  std::string cur;
  std::size_t cur_len = 0;  // code points
  const auto flush = [&] {
    if (cur_len >= min_word_len) out.push_back(cur);
    cur.clear();
    cur_len = 0;
  };
  std::size_t pos = 0;
  while (pos < text.size()) {
    char32_t cp = detail::next_code_point(text, pos);
    if (detail::is_token_char(cp)) {
      detail::append_utf8(cur, detail::to_lower(cp));
      ++cur_len;
    } else {
      flush();
    }
  }
  flush();
  return out;
}

struct ParserConfig {
  // Lines matching any of these (ECMAScript regexes) start a new scene.
  std::vector<std::string> header_patterns = default_header_patterns();
  std::size_t min_word_len = 2;
  bool keep_frontpiece = false;  // keep text before the first header as a pseudo-scene
  bool count_headers = false;    // tokenize header lines into the scene as well
  std::string title;

  static std::vector<std::string> default_header_patterns() {
    return {
        R"(^\s*\[\s*(?:INT|EXT)[\.: ].*\]\s*$)",  // TWIZ-style "[INT. ... -- NIGHT]"
        R"(^\s*(?:INT|EXT)\.\s*\S.*$)",           // plain "INT. LOCATION - DAY"
    };
  }
};

// Extracts setting / location / time-of-day from a header line.  The
// trailing DAY or NIGHT marker is recognized as a standalone uppercase
// word; the hyphen-delimited location between the markers is kept as
// written (interior hyphens survive, only edge separators are trimmed).
inline SceneHeader parse_header(std::string_view line) {
  SceneHeader h;
  h.raw_text = std::string(detail::trim(line, "\r\n"));
  std::string work(detail::trim(line));
  if (work.size() >= 2 && work.front() == '[' && work.back() == ']') {
    work = std::string(detail::trim(std::string_view(work).substr(1, work.size() - 2)));
  }
  static const std::regex setting_re(R"(^(INT|EXT)([^A-Za-z]|$))");
  std::smatch m;
  if (std::regex_search(work, m, setting_re)) {
    h.setting = (m[1] == "INT") ? Setting::interior : Setting::exterior;
    work.erase(0, m[1].length());
  }
  static const std::regex time_re(R"((^|[^A-Z])(DAY|NIGHT)\s*$)");
  if (std::regex_search(work, m, time_re)) {
    h.time_of_day = (m[2] == "DAY") ? TimeOfDay::day : TimeOfDay::night;
    work.erase(m.position(2));
  }
  h.location = std::string(detail::trim(work, " \t\r\n-.:,"));
  return h;
}

namespace detail {

// A speaker line starts with an all-uppercase name (letters and spaces,
// at least two letters) directly followed by a colon.
inline bool extract_speaker(std::string_view line, std::string& name) {
  std::string_view t = trim(line);
  auto colon = t.find(':');
  if (colon == std::string_view::npos) return false;
  std::string_view prefix = trim(t.substr(0, colon));
  if (prefix.size() < 2) return false;
  int letters = 0;
  for (char c : prefix) {
    if (c >= 'A' && c <= 'Z') {
      ++letters;
    } else if (c != ' ') {
      return false;
    }
  }
  if (letters < 2) return false;
  name.assign(prefix);
  return true;
}

}  // namespace detail

// Segments raw filmscript text at scene-header lines and tokenizes each
// scene body (dialog, action parentheticals and speaker names all enter
// the token stream).  Text before the first header is discarded unless
// config.keep_frontpiece is set.  Scenes that end up with zero tokens are
// dropped with a warning; remaining scenes are numbered 1..n in textual
// order.  Throws NoScenesFound when no header line matches.
inline Script parse_script(std::string_view text, const ParserConfig& config = {},
                           std::vector<std::string>* warnings = nullptr) {
  std::vector<std::regex> patterns;
  patterns.reserve(config.header_patterns.size());
  for (const auto& p : config.header_patterns) patterns.emplace_back(p);

  struct RawScene {
    SceneHeader header;
    std::vector<std::string> speakers;
    std::vector<std::string> tokens;
  };
  std::vector<RawScene> raw;
  bool seen_header = false;

  if (config.keep_frontpiece) {
    RawScene front;
    front.header.raw_text = "(frontpiece)";
    raw.push_back(std::move(front));
  }

  std::size_t pos = 0;
  std::size_t line_no = 0;
  std::string first_line;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos
                                                                          : nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++line_no;
    std::string sline(line);
    if (line_no == 1) first_line = std::string(detail::trim(line));

    bool is_header = false;
    for (const auto& re : patterns) {
      if (std::regex_match(sline, re)) {
        is_header = true;
        break;
      }
    }
    if (is_header) {
      seen_header = true;
      RawScene s;
      s.header = parse_header(line);
      if (config.count_headers) s.tokens = tokenize(line, config.min_word_len);
      raw.push_back(std::move(s));
      continue;
    }
    if (raw.empty()) continue;  // frontpiece, discarded
    RawScene& cur = raw.back();
    std::string speaker;
    if (detail::extract_speaker(line, speaker)) {
      if (std::find(cur.speakers.begin(), cur.speakers.end(), speaker) == cur.speakers.end()) {
        cur.speakers.push_back(speaker);
      }
    }
    auto toks = tokenize(line, config.min_word_len);
    cur.tokens.insert(cur.tokens.end(), toks.begin(), toks.end());
  }

  if (!seen_header) {
    throw NoScenesFound("no scene header matched in " + std::to_string(line_no) +
                        " lines (first line: \"" + first_line + "\")");
  }

  Script script;
  script.title = config.title;
  std::set<std::string> vocab;
  for (auto& s : raw) {
    if (s.tokens.empty()) {
      if (warnings) {
        warnings->push_back("empty scene dropped: " + s.header.raw_text);
      }
      continue;
    }
    Scene scene;
    scene.index = static_cast<int>(script.scenes.size()) + 1;
    scene.header = std::move(s.header);
    scene.speakers = std::move(s.speakers);
    scene.tokens = std::move(s.tokens);
    vocab.insert(scene.tokens.begin(), scene.tokens.end());
    script.scenes.push_back(std::move(scene));
  }
  if (script.scenes.empty()) {
    throw NoScenesFound("every scene tokenized to nothing (first line: \"" + first_line + "\")");
  }
  script.vocabulary.assign(vocab.begin(), vocab.end());
  return script;
}

struct ScriptStats {
  std::size_t scene_count = 0;
  std::size_t unique_words = 0;
  std::size_t total_words = 0;
  std::vector<std::pair<std::string, std::size_t>> top;  // count desc, ties lexicographic
};

inline ScriptStats stats(const Script& script, std::size_t top_k = 20) {
  ScriptStats st;
  st.scene_count = script.scenes.size();
  st.unique_words = script.vocabulary.size();
  std::map<std::string, std::size_t> freq;
  for (const auto& scene : script.scenes) {
    st.total_words += scene.tokens.size();
    for (const auto& t : scene.tokens) ++freq[t];
  }
  std::vector<std::pair<std::string, std::size_t>> items(freq.begin(), freq.end());
  std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (items.size() > top_k) items.resize(top_k);
  st.top = std::move(items);
  return st;
}

}  // namespace scenecloud
