#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "scenecloud/ca.hpp"
#include "scenecloud/errors.hpp"
#include "scenecloud/pertinence.hpp"
#include "scenecloud/term_matrix.hpp"

namespace scenecloud {

enum class CloudLayout { flow, grid };

struct CloudItem {
  std::string word;
  int band = 1;
  int scene_index = 0;
  double distance = 0.0;
};

struct CloudDocument {
  std::string title;
  std::vector<CloudItem> items;  // scene order
  int band_count = 6;
  CloudLayout layout = CloudLayout::flow;
};

struct CloudOptions {
  std::string title = "semantic tag cloud";
  CloudLayout layout = CloudLayout::flow;
  bool color_by_band = false;
};

namespace detail {

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[v & 0xF];
    v >>= 4;
  }
  return out;
}

// Locale-independent fixed-point formatting.
inline std::string fmt_fixed(double v, int precision = 2) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, precision);
  return std::string(buf, res.ptr);
}

inline std::string fmt_general(double v, int precision = 6) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, precision);
  return std::string(buf, res.ptr);
}

inline std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

inline std::string cloud_digest(const CloudDocument& doc) {
  std::string canon = doc.title;
  for (const auto& it : doc.items) {
    canon += '|';
    canon += it.word;
    canon += ';';
    canon += std::to_string(it.scene_index);
    canon += ';';
    canon += std::to_string(it.band);
    canon += ';';
    canon += fmt_general(it.distance, 17);
  }
  return hex64(fnv1a64(canon));
}

inline std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s;
}

inline const char* band_color(int band, int band_count, bool color_by_band) {
  if (!color_by_band) return "#222222";
  static const char* palette[] = {"#9e9e9e", "#7f8fa6", "#5c7cfa", "#3b5bdb", "#364fc7", "#1a237e"};
  int n = static_cast<int>(sizeof(palette) / sizeof(palette[0]));
  int idx = (band_count <= 1) ? n - 1 : (band - 1) * (n - 1) / (band_count - 1);
  return palette[std::clamp(idx, 0, n - 1)];
}

}  // namespace detail

// Font sizes (px) per band, band 1 smallest.  The six-band ramp is the
// documented default; other band counts interpolate geometrically over
// the same 10..31 px span.
inline std::vector<int> font_ramp(int band_count) {
  if (band_count == 6) return {10, 13, 16, 20, 25, 31};
  if (band_count == 1) return {18};
  std::vector<int> ramp(band_count);
  for (int b = 0; b < band_count; ++b) {
    double t = static_cast<double>(b) / (band_count - 1);
    ramp[b] = static_cast<int>(std::lround(10.0 * std::pow(31.0 / 10.0, t)));
  }
  return ramp;
}

inline CloudDocument make_cloud_document(const PertinenceMap& map,
                                         const CloudOptions& options = {}) {
  CloudDocument doc;
  doc.title = options.title;
  doc.band_count = map.band_count;
  doc.layout = options.layout;
  doc.items.reserve(map.entries.size());
  for (const auto& e : map.entries) {
    doc.items.push_back({e.word, e.band, e.scene_index, e.distance});
  }
  return doc;
}

// Scene-ordered tag cloud as standalone SVG.  One text element per scene,
// font size from the band ramp; output is byte-deterministic for
// identical inputs.
inline std::string render_cloud_svg(const CloudDocument& doc, bool color_by_band = false) {
  const auto ramp = font_ramp(doc.band_count);
  const double width = 960.0;
  const double margin = 20.0;
  const double word_gap = 14.0;
  const double line_height = ramp.back() + 12.0;

  struct Placed {
    double x, y;
    const CloudItem* item;
  };
  std::vector<Placed> placed;
  placed.reserve(doc.items.size());

  double x = margin;
  double y = margin + line_height;
  if (doc.layout == CloudLayout::flow) {
    for (const auto& it : doc.items) {
      int size = ramp[it.band - 1];
      double w = 0.62 * size * static_cast<double>(it.word.size());
      if (x > margin && x + w > width - margin) {
        x = margin;
        y += line_height;
      }
      placed.push_back({x, y, &it});
      x += w + word_gap;
    }
  } else {
    const int columns = 8;
    const double cell_w = (width - 2 * margin) / columns;
    for (std::size_t k = 0; k < doc.items.size(); ++k) {
      double cx = margin + static_cast<double>(k % columns) * cell_w;
      double cy = margin + line_height * (1.0 + static_cast<double>(k / columns));
      placed.push_back({cx, cy, &doc.items[k]});
    }
  }
  double height = y + margin;
  if (doc.layout == CloudLayout::grid && !placed.empty()) {
    height = placed.back().y + margin;
  }

  std::string ramp_s;
  for (std::size_t i = 0; i < ramp.size(); ++i) {
    if (i) ramp_s += ",";
    ramp_s += std::to_string(ramp[i]);
  }

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<!-- scenecloud tag cloud; input fnv1a:" + detail::cloud_digest(doc) +
         "; font ramp px: " + ramp_s + " (band 1 .. band " + std::to_string(doc.band_count) +
         ") -->\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::fmt_fixed(width, 0) +
         "\" height=\"" + detail::fmt_fixed(height, 0) + "\" viewBox=\"0 0 " +
         detail::fmt_fixed(width, 0) + " " + detail::fmt_fixed(height, 0) + "\">\n";
  svg += "<title>" + detail::xml_escape(doc.title) + "</title>\n";
  for (const auto& p : placed) {
    const auto& it = *p.item;
    int size = ramp[it.band - 1];
    svg += "<text x=\"" + detail::fmt_fixed(p.x, 1) + "\" y=\"" + detail::fmt_fixed(p.y, 1) +
           "\" font-size=\"" + std::to_string(size) +
           "\" font-family=\"Helvetica,Arial,sans-serif\" fill=\"" +
           detail::band_color(it.band, doc.band_count, color_by_band) + "\">";
    svg += "<title>scene " + std::to_string(it.scene_index) + ", distance " +
           detail::fmt_general(it.distance, 6) + "</title>";
    svg += detail::xml_escape(it.word);
    svg += "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

// Same cloud as a self-contained HTML page (inline styles only).
inline std::string render_cloud_html(const CloudDocument& doc, bool color_by_band = false) {
  const auto ramp = font_ramp(doc.band_count);
  std::string html;
  html += "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n<title>" +
          detail::xml_escape(doc.title) + "</title>\n";
  html += "<!-- scenecloud tag cloud; input fnv1a:" + detail::cloud_digest(doc) + " -->\n";
  html += "<style>\nbody{font-family:Helvetica,Arial,sans-serif;margin:2em;}\n"
          ".cloud{max-width:60em;line-height:2.2;}\n.cloud span{margin-right:0.45em;}\n";
  for (int b = 1; b <= doc.band_count; ++b) {
    html += ".b" + std::to_string(b) + "{font-size:" + std::to_string(ramp[b - 1]) + "px;color:" +
            detail::band_color(b, doc.band_count, color_by_band) + ";}\n";
  }
  html += "</style>\n</head>\n<body>\n<h1>" + detail::xml_escape(doc.title) + "</h1>\n";
  html += "<div class=\"cloud\">\n";
  for (const auto& it : doc.items) {
    html += "<span class=\"b" + std::to_string(it.band) + "\" title=\"scene " +
            std::to_string(it.scene_index) + ", distance " + detail::fmt_general(it.distance, 6) +
            "\">" + detail::xml_escape(it.word) + "</span>\n";
  }
  html += "</div>\n</body>\n</html>\n";
  return html;
}

struct CloudOutput {
  std::string svg;
  std::string html;
};

inline CloudOutput render_cloud(const PertinenceMap& map, const CloudOptions& options = {}) {
  CloudDocument doc = make_cloud_document(map, options);
  return {render_cloud_svg(doc, options.color_by_band),
          render_cloud_html(doc, options.color_by_band)};
}

// Frequency-only comparison cloud: the top_k most frequent words shown
// alphabetically, font size scaled linearly with raw frequency.
inline std::string render_frequency_cloud(const TermMatrix& m, std::size_t top_k,
                                          const std::string& title = "frequency cloud") {
  if (top_k < 1) throw std::invalid_argument("render_frequency_cloud: top_k must be >= 1");
  std::vector<std::pair<std::string, std::int64_t>> freq;
  freq.reserve(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    std::int64_t c = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) c += m.at(i, j);
    freq.emplace_back(m.col_labels[j], c);
  }
  std::sort(freq.begin(), freq.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (freq.size() > top_k) freq.resize(top_k);
  std::sort(freq.begin(), freq.end());  // alphabetical display order

  std::int64_t fmin = freq.front().second, fmax = freq.front().second;
  for (const auto& [w, c] : freq) {
    fmin = std::min(fmin, c);
    fmax = std::max(fmax, c);
  }
  const auto size_of = [&](std::int64_t c) {
    if (fmax == fmin) return 20;
    return 10 + static_cast<int>(std::lround(21.0 * static_cast<double>(c - fmin) /
                                             static_cast<double>(fmax - fmin)));
  };

  std::string canon = title;
  for (const auto& [w, c] : freq) canon += "|" + w + ";" + std::to_string(c);

  std::string html;
  html += "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n<title>" +
          detail::xml_escape(title) + "</title>\n";
  html += "<!-- scenecloud frequency cloud; input fnv1a:" + detail::hex64(detail::fnv1a64(canon)) +
          " -->\n";
  html += "<style>\nbody{font-family:Helvetica,Arial,sans-serif;margin:2em;}\n"
          ".cloud{max-width:60em;line-height:2.2;}\n.cloud span{margin-right:0.45em;}\n</style>\n"
          "</head>\n<body>\n<h1>" + detail::xml_escape(title) + "</h1>\n<div class=\"cloud\">\n";
  for (const auto& [w, c] : freq) {
    html += "<span style=\"font-size:" + std::to_string(size_of(c)) + "px\" title=\"count " +
            std::to_string(c) + "\">" + detail::xml_escape(w) + "</span>\n";
  }
  html += "</div>\n</body>\n</html>\n";
  return html;
}

struct FactorMapSpec {
  int axis_a = 1;  // 1-based factor indices
  int axis_b = 2;
  bool label_points = false;
  std::string title = "factor map";
};

// Planar projection of both clouds: scenes as x markers, words as dots,
// axes labeled with factor number and percent inertia.
inline std::string render_factor_map(const CaModel& model, const FactorMapSpec& spec = {}) {
  const int hi = std::max(spec.axis_a, spec.axis_b);
  if (model.factor_count() < 2 || hi > model.factor_count()) {
    throw InsufficientFactors("factor pair (" + std::to_string(spec.axis_a) + "," +
                              std::to_string(spec.axis_b) + ") needs " + std::to_string(hi) +
                              " retained factors, model has " +
                              std::to_string(model.factor_count()));
  }
  if (spec.axis_a < 1 || spec.axis_b < 1 || spec.axis_a == spec.axis_b) {
    throw InsufficientFactors("invalid factor pair (" + std::to_string(spec.axis_a) + "," +
                              std::to_string(spec.axis_b) + ")");
  }
  const Eigen::Index a = spec.axis_a - 1;
  const Eigen::Index b = spec.axis_b - 1;

  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;  // origin always shown
  const auto widen = [&](double vx, double vy) {
    xmin = std::min(xmin, vx);
    xmax = std::max(xmax, vx);
    ymin = std::min(ymin, vy);
    ymax = std::max(ymax, vy);
  };
  for (Eigen::Index i = 0; i < model.row_coords.rows(); ++i)
    widen(model.row_coords(i, a), model.row_coords(i, b));
  for (Eigen::Index j = 0; j < model.col_coords.rows(); ++j)
    widen(model.col_coords(j, a), model.col_coords(j, b));
  double spanx = xmax - xmin, spany = ymax - ymin;
  if (spanx <= 0.0) spanx = 1.0;
  if (spany <= 0.0) spany = 1.0;
  xmin -= 0.05 * spanx;
  xmax += 0.05 * spanx;
  ymin -= 0.05 * spany;
  ymax += 0.05 * spany;

  const double width = 800.0, height = 800.0, margin = 60.0;
  const auto sx = [&](double v) {
    return margin + (v - xmin) / (xmax - xmin) * (width - 2 * margin);
  };
  const auto sy = [&](double v) {
    return height - margin - (v - ymin) / (ymax - ymin) * (height - 2 * margin);
  };

  std::string canon = spec.title + "|" + std::to_string(spec.axis_a) + "," +
                      std::to_string(spec.axis_b);
  for (Eigen::Index i = 0; i < model.row_coords.rows(); ++i)
    canon += ";" + detail::fmt_general(model.row_coords(i, a), 17) + "," +
             detail::fmt_general(model.row_coords(i, b), 17);
  for (Eigen::Index j = 0; j < model.col_coords.rows(); ++j)
    canon += ";" + detail::fmt_general(model.col_coords(j, a), 17) + "," +
             detail::fmt_general(model.col_coords(j, b), 17);

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<!-- scenecloud factor map; input fnv1a:" + detail::hex64(detail::fnv1a64(canon)) +
         " -->\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
         "viewBox=\"0 0 800 800\">\n";
  svg += "<title>" + detail::xml_escape(spec.title) + "</title>\n";
  // centroid axes
  svg += "<line x1=\"" + detail::fmt_fixed(sx(0.0), 1) + "\" y1=\"" +
         detail::fmt_fixed(height - margin, 1) + "\" x2=\"" + detail::fmt_fixed(sx(0.0), 1) +
         "\" y2=\"" + detail::fmt_fixed(margin, 1) + "\" stroke=\"#cccccc\"/>\n";
  svg += "<line x1=\"" + detail::fmt_fixed(margin, 1) + "\" y1=\"" +
         detail::fmt_fixed(sy(0.0), 1) + "\" x2=\"" + detail::fmt_fixed(width - margin, 1) +
         "\" y2=\"" + detail::fmt_fixed(sy(0.0), 1) + "\" stroke=\"#cccccc\"/>\n";

  for (Eigen::Index j = 0; j < model.col_coords.rows(); ++j) {
    double cx = sx(model.col_coords(j, a)), cy = sy(model.col_coords(j, b));
    svg += "<circle cx=\"" + detail::fmt_fixed(cx, 1) + "\" cy=\"" + detail::fmt_fixed(cy, 1) +
           "\" r=\"2\" fill=\"#555555\"/>\n";
    if (spec.label_points) {
      svg += "<text x=\"" + detail::fmt_fixed(cx + 4, 1) + "\" y=\"" +
             detail::fmt_fixed(cy - 3, 1) + "\" font-size=\"9\" fill=\"#555555\">" +
             detail::xml_escape(model.col_labels[j]) + "</text>\n";
    }
  }
  for (Eigen::Index i = 0; i < model.row_coords.rows(); ++i) {
    double cx = sx(model.row_coords(i, a)), cy = sy(model.row_coords(i, b));
    svg += "<path d=\"M " + detail::fmt_fixed(cx - 4, 1) + " " + detail::fmt_fixed(cy - 4, 1) +
           " L " + detail::fmt_fixed(cx + 4, 1) + " " + detail::fmt_fixed(cy + 4, 1) + " M " +
           detail::fmt_fixed(cx - 4, 1) + " " + detail::fmt_fixed(cy + 4, 1) + " L " +
           detail::fmt_fixed(cx + 4, 1) + " " + detail::fmt_fixed(cy - 4, 1) +
           "\" stroke=\"#c0392b\" stroke-width=\"1.5\" fill=\"none\"/>\n";
    if (spec.label_points) {
      svg += "<text x=\"" + detail::fmt_fixed(cx + 5, 1) + "\" y=\"" +
             detail::fmt_fixed(cy + 4, 1) + "\" font-size=\"10\" fill=\"#c0392b\">s" +
             std::to_string(model.row_labels[i]) + "</text>\n";
    }
  }
  svg += "<text x=\"" + detail::fmt_fixed(width / 2, 1) + "\" y=\"" +
         detail::fmt_fixed(height - margin / 3, 1) +
         "\" font-size=\"14\" text-anchor=\"middle\" fill=\"#222222\">Factor " +
         std::to_string(spec.axis_a) + " (" +
         detail::fmt_fixed(model.percent_inertia(a), 1) + "%)</text>\n";
  svg += "<text x=\"" + detail::fmt_fixed(margin / 3, 1) + "\" y=\"" +
         detail::fmt_fixed(height / 2, 1) +
         "\" font-size=\"14\" text-anchor=\"middle\" fill=\"#222222\" transform=\"rotate(-90 " +
         detail::fmt_fixed(margin / 3, 1) + " " + detail::fmt_fixed(height / 2, 1) +
         ")\">Factor " + std::to_string(spec.axis_b) + " (" +
         detail::fmt_fixed(model.percent_inertia(b), 1) + "%)</text>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace scenecloud
