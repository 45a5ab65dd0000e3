// Copyright 2026 The cornerlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <regex>
#include <string>
#include <vector>

#include "cornerlab/errors.hpp"
#include "cornerlab/io.hpp"
#include "doctest.h"

using namespace cornerlab;

namespace {

LatticeWindow all_plus(Index lo, Index hi) {
  std::vector<int> ones(static_cast<std::size_t>(hi - lo + 3), 1);
  return LatticeWindow(signs_from_values(Axis::Xi, lo - 1, ones), signs_from_values(Axis::Eta, lo - 1, ones), lo, hi,
                       lo, hi);
}

std::size_t count(const std::string& s, const std::string& what) {
  std::size_t n = 0;
  for (auto p = s.find(what); p != std::string::npos; p = s.find(what, p + 1)) ++n;
  return n;
}

// Fill colour of the face rect drawn at pixel (x, y).
std::string fill_at(const std::string& svg, Index x, Index y) {
  const std::string key = "<rect x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) + "\"";
  const auto p = svg.find(key);
  REQUIRE(p != std::string::npos);
  const auto f = svg.find("fill=\"", p) + 6;
  return svg.substr(f, svg.find('"', f) - f);
}

}  // namespace

TEST_CASE("all-plus 8x8 window draws 16 unit cycles") {
  auto w = all_plus(0, 7);
  auto cycles = closed_cycles(w);
  CHECK(cycles.size() == 16);
  for (const auto& c : cycles) CHECK(c.length() == 4);
  const std::string svg = render_window_svg(w);
  CHECK(count(svg, "<polyline") == 16);
  CHECK(count(svg, "<line") == 64);
  CHECK(svg.rfind("</svg>\n") == svg.size() - 7);
  CHECK(svg == render_window_svg(all_plus(0, 7)));
}

TEST_CASE("a single cycle renders as a closed four-segment polyline") {
  auto c = closed_cycles(all_plus(0, 7)).front();
  const std::string svg = render_cycle_svg(c);
  std::smatch m;
  REQUIRE(std::regex_search(svg, m, std::regex("points=\"([^\"]*)\"")));
  const std::string pts = m[1];
  CHECK(count(pts, " ") == 4);
  CHECK(pts.substr(0, pts.find(' ')) == pts.substr(pts.rfind(' ') + 1));
}

TEST_CASE("pixel budget refuses large renders") {
  LatticeWindow w(WindowSpec::centered(1, 200));
  SvgOptions o;
  o.max_pixels = 10000;
  CHECK_THROWS_AS(render_window_svg(w, o), RenderRefused);
  try {
    render_window_svg(w, o);
  } catch (const RenderRefused& e) {
    CHECK(std::string(e.what()).find("budget") != std::string::npos);
  }
}

TEST_CASE("height map colours change exactly across present edges") {
  for (std::uint64_t seed : {3u, 4u}) {
    LatticeWindow w(WindowSpec::centered(seed, 6));
    SvgOptions o;
    const std::string svg = render_height_svg(w, o);
    CHECK(svg == render_height_svg(w, o));
    auto px = [&](Index n) { return o.margin + (n - w.x_lo()) * o.scale; };
    auto py = [&](Index m) { return o.margin + (w.y_hi() - m - 1) * o.scale; };
    for (Index m = w.y_lo(); m < w.y_hi(); ++m)
      for (Index n = w.x_lo(); n < w.x_hi(); ++n) {
        const std::string here = fill_at(svg, px(n), py(m));
        if (n + 1 < w.x_hi()) {
          // Faces (n, m) and (n+1, m) share the vertical edge at x = n+1.
          const bool edge = w.vertical_neighbor({n + 1, m}) == Vertex{n + 1, m + 1};
          CHECK((here != fill_at(svg, px(n + 1), py(m))) == edge);
        }
        if (m + 1 < w.y_hi()) {
          const bool edge = w.horizontal_neighbor({n, m + 1}) == Vertex{n + 1, m + 1};
          CHECK((here != fill_at(svg, px(n), py(m + 1))) == edge);
        }
      }
    CHECK(count(svg, "H=") >= 1);
  }
}

TEST_CASE("run-length grids round-trip") {
  std::vector<std::uint8_t> g{1, 1, 0, 0, 0, 1, 0, 0, 0, 0, 1, 1};
  const std::string s = rle_encode(g, 6);
  CHECK(s == "0,2,3,1;4,2");
  CHECK(rle_decode(s, 6) == g);
  auto f = gen_trixor(20, 9);
  CHECK(rle_decode(rle_encode(f.state, 20), 20) == f.state);
  CHECK_THROWS_AS(rle_decode("1,2", 6), std::invalid_argument);
}

TEST_CASE("reports carry schema version and seed") {
  auto r = estimate_L_mc(1, 10, 42);
  Json j = to_json(r);
  CHECK(j["schema_version"] == kSchemaVersion);
  CHECK(j["seed"] == 42);
  CHECK(j["version"] == std::string(version()));
  CHECK(j["estimate"] == 4.0);
  Json again = to_json(estimate_L_mc(1, 10, 42));
  j.erase("wall_seconds");
  again.erase("wall_seconds");
  CHECK(j.dump() == again.dump());
  const std::string csv = report_csv({r});
  CHECK(csv.substr(0, csv.find('\n')) == "name,seed,samples,estimate,stderr,ci_lo,ci_hi,censored,violations");
}

TEST_CASE("exact csv starts at L(1) = 4") {
  auto s = L_sequence(8, 8);
  const std::string csv = exact_csv(s);
  CHECK(csv.substr(0, csv.find('\n')) == "h,L,K,slope");
  const auto second = csv.substr(csv.find('\n') + 1);
  CHECK(second.substr(0, 4) == "1,4,");
  auto j = to_json(s, fit_exponent(s, 1, 8));
  CHECK(j["rows"][1]["L_exact"] == "52/3");
}
