// Copyright 2026 The cornerlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "cornerlab/io.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cornerlab/errors.hpp"

#ifndef CORNERLAB_VERSION
#define CORNERLAB_VERSION "unknown"
#endif

namespace cornerlab {

const char* version() noexcept { return CORNERLAB_VERSION; }

Json envelope(const std::string& kind, std::uint64_t seed) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["version"] = version();
  j["kind"] = kind;
  j["seed"] = seed;
  return j;
}

namespace {

Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json number_map(const std::map<std::string, double>& m) {
  Json j = Json::object();
  for (const auto& [k, v] : m) j[k] = number(v);
  return j;
}

}  // namespace

Json to_json(const Cycle& c) {
  Json pts = Json::array();
  for (const Vertex& v : c.vertices) pts.push_back({v.x, v.y});
  return Json{{"length", c.length()},
              {"diameter", c.diameter()},
              {"level", c.level},
              {"direction", to_string(c.direction)},
              {"height", c.height},
              {"rect", {{"a", c.rect.a}, {"c", c.rect.c}, {"b", c.rect.b}, {"d", c.rect.d}}},
              {"passage_columns", c.passage_columns},
              {"passage_rows", c.passage_rows},
              {"vertices", pts}};
}

Json to_json(const MCReport& r) {
  Json j = envelope("estimate", r.seed);
  j["name"] = r.name;
  j["params"] = number_map(r.params);
  j["samples"] = r.samples;
  j["estimate"] = number(r.estimate);
  j["stderr"] = number(r.stderr_);
  j["ci95"] = {number(r.ci_lo), number(r.ci_hi)};
  j["censored"] = r.censored;
  j["violations"] = r.violations;
  j["extra"] = number_map(r.extra);
  j["wall_seconds"] = r.wall_seconds;
  return j;
}

Json to_json(const FitReport& r) {
  Json j = envelope("fit", r.seed);
  j["name"] = r.name;
  j["params"] = number_map(r.params);
  j["samples"] = r.samples;
  Json pts = Json::array();
  for (const auto& p : r.points)
    pts.push_back({{"x", p.x}, {"y", p.y}, {"se", p.se}, {"count", p.count}, {"used", p.used}});
  j["points"] = pts;
  j["exponent"] = number(r.exponent);
  j["exponent_se"] = number(r.exponent_se);
  j["ci95"] = {number(r.ci_lo), number(r.ci_hi)};
  j["target"] = number(r.target);
  j["target_label"] = r.target_label;
  j["censored"] = r.censored;
  j["violations"] = r.violations;
  j["extra"] = number_map(r.extra);
  j["warnings"] = r.warnings;
  j["wall_seconds"] = r.wall_seconds;
  return j;
}

Json to_json(const VariantReport& r) {
  Json j = envelope("variant", r.gamma.seed);
  j["variant"] = to_string(r.kind);
  j["size"] = r.size;
  j["gamma"] = to_json(r.gamma);
  j["delta"] = to_json(r.delta);
  j["band_gamma"] = {r.band_gamma_lo, r.band_gamma_hi};
  j["band_delta"] = {r.band_delta_lo, r.band_delta_hi};
  j["constraint_violations"] = r.constraint_violations;
  j["centre_touch_fraction"] = r.centre_touch_fraction;
  Json sh = Json::array(), bh = Json::array();
  for (const auto& [k, v] : r.size_histogram) sh.push_back({k, v});
  for (const auto& [k, v] : r.boundary_histogram) bh.push_back({k, v});
  j["size_histogram"] = sh;
  j["boundary_histogram"] = bh;
  return j;
}

Json to_json(const WindowSpec& s) {
  return Json{{"seed", s.seed},        {"bias_xi", s.bias_xi}, {"bias_eta", s.bias_eta},
              {"x_lo", s.x_lo},        {"x_hi", s.x_hi},       {"y_lo", s.y_lo},
              {"y_hi", s.y_hi},        {"mode", s.mode == BiasMode::Walk ? "walk" : "signs"}};
}

Json to_json(const ExactSeries& s, const ExponentFit& fit) {
  Json j = envelope("exact-l", 0);
  j.erase("seed");
  j["h_max"] = s.h_max;
  j["exact_cutoff"] = s.exact_cutoff;
  j["max_exact_float_rel"] = static_cast<double>(s.max_exact_float_rel);
  Json rows = Json::array();
  for (Index h = 1; h <= s.h_max; ++h) {
    Json row{{"h", h}, {"L", static_cast<double>(s.L[static_cast<std::size_t>(h)])}, {"K", static_cast<double>(s.K(h))},
             {"slope", h >= 2 ? number(local_slope(s, h)) : Json(nullptr)}};
    if (h <= s.exact_cutoff) {
      std::ostringstream os;
      os << s.L_exact[static_cast<std::size_t>(h)];
      row["L_exact"] = os.str();
    }
    rows.push_back(row);
  }
  j["rows"] = rows;
  Json f{{"h", fit.h}, {"slope", fit.slope}, {"extrapolated", number(fit.extrapolated)},
         {"a", number(fit.a)}, {"b", number(fit.b)}, {"correction_exponent", number(fit.correction_exponent)},
         {"monotone", fit.monotone}, {"target", fit.target}};
  j["fit"] = f;
  return j;
}

namespace {

std::string fmt(double x) {
  if (!std::isfinite(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt_ld(long double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.19Lg", x);
  return buf;
}

}  // namespace

std::string exact_csv(const ExactSeries& s) {
  std::string out = "h,L,K,slope\n";
  for (Index h = 1; h <= s.h_max; ++h)
    out += std::to_string(h) + "," + fmt_ld(s.L[static_cast<std::size_t>(h)]) + "," + fmt_ld(s.K(h)) + "," +
           (h >= 2 ? fmt(local_slope(s, h)) : std::string()) + "\n";
  return out;
}

std::string fit_csv(const FitReport& r) {
  std::string out = "x,y,se,count,used\n";
  for (const auto& p : r.points)
    out += fmt(p.x) + "," + fmt(p.y) + "," + fmt(p.se) + "," + std::to_string(p.count) + "," + (p.used ? "1" : "0") + "\n";
  return out;
}

std::string report_csv(const std::vector<MCReport>& rs) {
  std::string out = "name,seed,samples,estimate,stderr,ci_lo,ci_hi,censored,violations\n";
  for (const auto& r : rs)
    out += r.name + "," + std::to_string(r.seed) + "," + std::to_string(r.samples) + "," + fmt(r.estimate) + "," +
           fmt(r.stderr_) + "," + fmt(r.ci_lo) + "," + fmt(r.ci_hi) + "," + std::to_string(r.censored) + "," +
           std::to_string(r.violation_total()) + "\n";
  return out;
}

std::string cycles_csv(const std::vector<Cycle>& cs) {
  std::string out = "index,length,level,direction,height,rect_a,rect_c,rect_b,rect_d\n";
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const Cycle& c = cs[i];
    out += std::to_string(i) + "," + std::to_string(c.length()) + "," + std::to_string(c.level) + "," +
           to_string(c.direction) + "," + std::to_string(c.height) + "," + std::to_string(c.rect.a) + "," +
           std::to_string(c.rect.c) + "," + std::to_string(c.rect.b) + "," + std::to_string(c.rect.d) + "\n";
  }
  return out;
}

std::string rle_encode(const std::vector<std::uint8_t>& bits, Index width) {
  if (width < 1 || bits.size() % static_cast<std::size_t>(width)) throw std::invalid_argument("bad grid width");
  std::string out;
  for (std::size_t row = 0; row * static_cast<std::size_t>(width) < bits.size(); ++row) {
    if (row) out += ';';
    std::uint8_t cur = 0;
    Index run = 0;
    bool first = true;
    for (Index k = 0; k < width; ++k) {
      const std::uint8_t b = bits[row * static_cast<std::size_t>(width) + static_cast<std::size_t>(k)] ? 1 : 0;
      if (b != cur) {
        out += (first ? "" : ",") + std::to_string(run);
        first = false;
        cur = b;
        run = 0;
      }
      ++run;
    }
    out += (first ? "" : ",") + std::to_string(run);
  }
  return out;
}

std::vector<std::uint8_t> rle_decode(const std::string& text, Index width) {
  std::vector<std::uint8_t> out;
  std::istringstream rows(text);
  std::string row;
  while (std::getline(rows, row, ';')) {
    std::istringstream runs(row);
    std::string run;
    std::uint8_t cur = 0;
    Index total = 0;
    while (std::getline(runs, run, ',')) {
      const Index n = std::stoll(run);
      if (n < 0) throw std::invalid_argument("negative run");
      out.insert(out.end(), static_cast<std::size_t>(n), cur);
      total += n;
      cur ^= 1;
    }
    if (total != width) throw std::invalid_argument("row length does not match width");
  }
  return out;
}

std::vector<Cycle> closed_cycles(const LatticeWindow& w) {
  std::set<Vertex> seen;
  std::vector<Cycle> out;
  for (Index x = w.x_lo(); x <= w.x_hi(); ++x)
    for (Index y = w.y_lo(); y <= w.y_hi(); ++y) {
      const Vertex v{x, y};
      if (seen.count(v)) continue;
      bool closed = false;
      auto path = trace_path(w, v, closed);
      seen.insert(path.begin(), path.end());
      if (closed) out.push_back(*trace_cycle(w, v));
    }
  return out;
}

namespace {

struct Canvas {
  Index x_lo, y_hi, scale, margin;
  [[nodiscard]] Index px(Index x) const { return margin + (x - x_lo) * scale; }
  [[nodiscard]] Index py(Index y) const { return margin + (y_hi - y) * scale; }
};

void check_budget(Index width, Index height, const SvgOptions& o) {
  if (o.scale < 1) throw std::invalid_argument("scale must be positive");
  const long long px = static_cast<long long>(width) * static_cast<long long>(height);
  if (px > o.max_pixels) {
    const double s = std::floor(static_cast<double>(o.scale) * std::sqrt(static_cast<double>(o.max_pixels) / px));
    throw RenderRefused("render needs " + std::to_string(px) + " pixels, budget " + std::to_string(o.max_pixels) +
                        (s >= 1 ? "; try scale " + std::to_string(static_cast<long long>(s)) : "; use a smaller window"));
  }
}

std::string header(Index width, Index height) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(width) + "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) +
         " " + std::to_string(height) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

std::string polyline(const Cycle& c, const Canvas& cv) {
  std::string pts;
  for (std::size_t k = 0; k <= c.vertices.size(); ++k) {
    const Vertex& v = c.vertices[k % c.vertices.size()];
    if (k) pts += ' ';
    pts += std::to_string(cv.px(v.x)) + "," + std::to_string(cv.py(v.y));
  }
  return "<polyline class=\"cycle\" points=\"" + pts + "\"/>\n";
}

}  // namespace

std::string render_window_svg(const LatticeWindow& w, const SvgOptions& o) {
  const Index width = 2 * o.margin + (w.x_hi() - w.x_lo()) * o.scale;
  const Index height = 2 * o.margin + (w.y_hi() - w.y_lo()) * o.scale;
  check_budget(width, height, o);
  const Canvas cv{w.x_lo(), w.y_hi(), o.scale, o.margin};
  std::string out = header(width, height);
  out += "<g stroke=\"#888\" stroke-width=\"1\">\n";
  for (Index y = w.y_lo(); y <= w.y_hi(); ++y)
    for (Index x = w.x_lo(); x <= w.x_hi(); ++x) {
      const Vertex v{x, y};
      for (Vertex u : {w.horizontal_neighbor(v), w.vertical_neighbor(v)})
        if (w.contains(u) && v < u)
          out += "<line x1=\"" + std::to_string(cv.px(v.x)) + "\" y1=\"" + std::to_string(cv.py(v.y)) + "\" x2=\"" +
                 std::to_string(cv.px(u.x)) + "\" y2=\"" + std::to_string(cv.py(u.y)) + "\"/>\n";
    }
  out += "</g>\n<g fill=\"none\" stroke=\"#c03\" stroke-width=\"2\">\n";
  for (const Cycle& c : closed_cycles(w)) out += polyline(c, cv);
  out += "</g>\n</svg>\n";
  return out;
}

std::string render_cycle_svg(const Cycle& c, const SvgOptions& o) {
  if (c.vertices.empty()) throw std::invalid_argument("empty cycle");
  const Rect r = bounding_rect(c.vertices);
  const Index width = 2 * o.margin + (r.c - r.a - 1) * o.scale;
  const Index height = 2 * o.margin + (r.d - r.b - 1) * o.scale;
  check_budget(width, height, o);
  const Canvas cv{r.a + 1, r.d, o.scale, o.margin};
  return header(width, height) + "<g fill=\"none\" stroke=\"#c03\" stroke-width=\"2\">\n" + polyline(c, cv) +
         "</g>\n</svg>\n";
}

std::string height_colour(Index h, Index lo, Index hi) {
  const Index span = std::max<Index>(1, hi - lo);
  const Index hue = (h - lo) * 300 / span;
  const int light = is_even(h) ? 45 : 75;
  return "hsl(" + std::to_string(hue) + ",65%," + std::to_string(light) + "%)";
}

std::string render_height_svg(const LatticeWindow& w, const SvgOptions& o) {
  if (w.x_hi() <= w.x_lo() || w.y_hi() <= w.y_lo()) throw std::invalid_argument("window has no faces");
  const Index grid_w = (w.x_hi() - w.x_lo()) * o.scale, grid_h = (w.y_hi() - w.y_lo()) * o.scale;
  Index lo = 0, hi = 0;
  bool any = false;
  for (Index m = w.y_lo(); m < w.y_hi(); ++m)
    for (Index n = w.x_lo(); n < w.x_hi(); ++n) {
      const Index h = height(w, {n, m});
      lo = any ? std::min(lo, h) : h;
      hi = any ? std::max(hi, h) : h;
      any = true;
    }
  const Index legend_rows = hi - lo + 1;
  const Index width = 3 * o.margin + grid_w + 80;
  const Index height_px = 2 * o.margin + std::max(grid_h, 16 * legend_rows);
  check_budget(width, height_px, o);
  const Canvas cv{w.x_lo(), w.y_hi(), o.scale, o.margin};
  std::string out = header(width, height_px) + "<g stroke=\"none\">\n";
  for (Index m = w.y_lo(); m < w.y_hi(); ++m)
    for (Index n = w.x_lo(); n < w.x_hi(); ++n)
      out += "<rect x=\"" + std::to_string(cv.px(n)) + "\" y=\"" + std::to_string(cv.py(m + 1)) + "\" width=\"" +
             std::to_string(o.scale) + "\" height=\"" + std::to_string(o.scale) + "\" fill=\"" +
             height_colour(height(w, {n, m}), lo, hi) + "\"/>\n";
  out += "</g>\n<g class=\"legend\" font-family=\"monospace\" font-size=\"12\">\n";
  const Index lx = 2 * o.margin + grid_w;
  for (Index h = hi; h >= lo; --h) {
    const Index y = o.margin + (hi - h) * 16;
    out += "<rect x=\"" + std::to_string(lx) + "\" y=\"" + std::to_string(y) + "\" width=\"12\" height=\"12\" fill=\"" +
           height_colour(h, lo, hi) + "\"/><text x=\"" + std::to_string(lx + 18) + "\" y=\"" + std::to_string(y + 11) +
           "\">H=" + std::to_string(h) + "</text>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace cornerlab
