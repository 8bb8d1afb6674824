#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "scenecloud/ca.hpp"
#include "scenecloud/errors.hpp"

namespace scenecloud {

struct PertinenceEntry {
  int scene_index = 0;
  std::string word;
  double distance = 0.0;  // full-dimensional Euclidean scene-word distance
  int band = 1;           // 1..band_count, band_count = closest fit (largest font)

  bool operator==(const PertinenceEntry&) const = default;
};

struct PertinenceMap {
  std::vector<PertinenceEntry> entries;     // one per scene, in scene order
  std::vector<std::string> candidate_set;   // word subset searched, sorted
  int band_count = 6;

  bool operator==(const PertinenceMap&) const = default;
};

// Maps distances to display bands via log10 of the squared distance: the
// value range is split into band_count equal-width intervals, the lowest
// interval getting band band_count (largest font) down to band 1.  A
// value exactly on a boundary joins the higher interval, except the
// maximum which stays in the top one.  Coincident points (d = 0) always
// land in band band_count.
inline std::vector<int> assign_bands(const std::vector<double>& distances, int band_count) {
  if (distances.empty()) throw std::invalid_argument("assign_bands: no distances");
  if (band_count < 1) throw std::invalid_argument("assign_bands: band count must be >= 1");
  std::vector<double> v(distances.size());
  for (std::size_t e = 0; e < distances.size(); ++e) {
    v[e] = std::log10(std::max(distances[e] * distances[e], 1e-300));
  }
  const auto [mn_it, mx_it] = std::minmax_element(v.begin(), v.end());
  const double vmin = *mn_it, vmax = *mx_it;
  std::vector<int> bands(distances.size(), band_count);
  if (vmax == vmin) return bands;  // degenerate range: everything fits best
  for (std::size_t e = 0; e < distances.size(); ++e) {
    if (distances[e] == 0.0) continue;  // stays band_count
    double t = (v[e] - vmin) / (vmax - vmin);
    int idx = static_cast<int>(std::floor(t * band_count));
    if (idx >= band_count) idx = band_count - 1;
    bands[e] = band_count - idx;
  }
  return bands;
}

// For each scene, the candidate word minimizing the full-dimensional
// Euclidean distance to the scene point; ties go to the lexicographically
// smaller word.  Throws UnknownCandidate when a requested word is absent
// from the model's vocabulary.
inline PertinenceMap nearest_word_per_scene(const CaModel& model,
                                            const std::vector<std::string>& candidates,
                                            int band_count = 6) {
  if (candidates.empty()) throw UnknownCandidate("empty candidate set");
  std::map<std::string, Eigen::Index> col_of;
  for (std::size_t j = 0; j < model.col_labels.size(); ++j)
    col_of.emplace(model.col_labels[j], static_cast<Eigen::Index>(j));

  // Sorted candidate list; scanning in lexicographic order makes a strict
  // "<" comparison implement the tie rule.
  std::vector<std::pair<std::string, Eigen::Index>> cand;
  cand.reserve(candidates.size());
  for (const auto& w : candidates) {
    auto it = col_of.find(w);
    if (it == col_of.end()) throw UnknownCandidate("candidate \"" + w + "\" not in vocabulary");
    cand.emplace_back(w, it->second);
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  PertinenceMap map;
  map.band_count = band_count;
  map.candidate_set.reserve(cand.size());
  for (const auto& [w, j] : cand) map.candidate_set.push_back(w);

  const Eigen::Index n = model.row_coords.rows();
  std::vector<double> distances(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto* best = &cand.front();
    double best_d = row_word_distance(model, i, cand.front().second);
    for (std::size_t c = 1; c < cand.size(); ++c) {
      double d = row_word_distance(model, i, cand[c].second);
      if (d < best_d) {
        best_d = d;
        best = &cand[c];
      }
    }
    PertinenceEntry e;
    e.scene_index = model.row_labels[i];
    e.word = best->first;
    e.distance = best_d;
    map.entries.push_back(std::move(e));
    distances[i] = best_d;
  }
  auto bands = assign_bands(distances, band_count);
  for (Eigen::Index i = 0; i < n; ++i) map.entries[i].band = bands[i];
  return map;
}

// Full-vocabulary overload.
inline PertinenceMap nearest_word_per_scene(const CaModel& model, int band_count = 6) {
  return nearest_word_per_scene(model, model.col_labels, band_count);
}

// Words chosen by more than one scene, with the scenes using them.
// Empty when every scene's word is distinct.  Sorted by word.
inline std::vector<std::pair<std::string, std::vector<int>>> uniqueness_report(
    const PertinenceMap& map) {
  std::map<std::string, std::vector<int>> scenes_of;
  for (const auto& e : map.entries) scenes_of[e.word].push_back(e.scene_index);
  std::vector<std::pair<std::string, std::vector<int>>> out;
  for (auto& [word, scenes] : scenes_of) {
    if (scenes.size() > 1) out.emplace_back(word, scenes);
  }
  return out;
}

}  // namespace scenecloud
