#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "scenecloud/errors.hpp"
#include "scenecloud/script.hpp"

namespace scenecloud {

// Scenes x words occurrence counts.  Rows follow scene order; columns
// follow the script vocabulary (sorted).  Construction guarantees no
// zero rows or columns.
struct TermMatrix {
  std::vector<int> row_labels;          // scene ordinals
  std::vector<std::string> col_labels;  // vocabulary words
  std::vector<std::int64_t> counts;     // row-major, rows() x cols()

  std::size_t rows() const { return row_labels.size(); }
  std::size_t cols() const { return col_labels.size(); }
  std::int64_t& at(std::size_t i, std::size_t j) { return counts[i * cols() + j]; }
  std::int64_t at(std::size_t i, std::size_t j) const { return counts[i * cols() + j]; }

  std::int64_t total() const {
    std::int64_t t = 0;
    for (auto c : counts) t += c;
    return t;
  }

  bool operator==(const TermMatrix&) const = default;
};

// Counts occurrences of every vocabulary word per scene.  No stopword
// removal, no stemming.  Throws DegenerateMatrix when fewer than two
// scenes or two vocabulary words are available.
inline TermMatrix build_matrix(const Script& script) {
  if (script.scenes.size() < 2 || script.vocabulary.size() < 2) {
    throw DegenerateMatrix("need at least 2 scenes and 2 words, got " +
                           std::to_string(script.scenes.size()) + " scene(s) and " +
                           std::to_string(script.vocabulary.size()) + " word(s)");
  }
  TermMatrix m;
  m.col_labels = script.vocabulary;
  std::unordered_map<std::string_view, std::size_t> col_of;
  col_of.reserve(m.col_labels.size());
  for (std::size_t j = 0; j < m.col_labels.size(); ++j) col_of.emplace(m.col_labels[j], j);

  m.row_labels.reserve(script.scenes.size());
  m.counts.assign(script.scenes.size() * m.col_labels.size(), 0);
  for (std::size_t i = 0; i < script.scenes.size(); ++i) {
    m.row_labels.push_back(script.scenes[i].index);
    for (const auto& tok : script.scenes[i].tokens) {
      auto it = col_of.find(tok);
      if (it != col_of.end()) ++m.counts[i * m.col_labels.size() + it->second];
    }
  }
  return m;
}

}  // namespace scenecloud
