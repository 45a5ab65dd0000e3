// Copyright 2026 The cornerlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "cornerlab/contours.hpp"
#include "cornerlab/errors.hpp"
#include "doctest.h"

using namespace cornerlab;

namespace {

LatticeWindow all_plus(Index lo, Index hi) {
  std::vector<int> ones(static_cast<std::size_t>(hi - lo + 3), 1);
  return LatticeWindow(signs_from_values(Axis::Xi, lo - 1, ones), signs_from_values(Axis::Eta, lo - 1, ones), lo, hi,
                       lo, hi);
}

}  // namespace

TEST_CASE("all-plus origin cycle") {
  auto w = all_plus(-4, 4);
  auto c = trace_cycle(w, {0, 0});
  REQUIRE(c);
  CHECK(c->vertices == std::vector<Vertex>{{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  complete(w, *c);
  CHECK(c->length() == 4);
  CHECK(c->diameter() == 1);
  CHECK(c->direction == CycleDirection::Down);
  CHECK(c->level == 0);
  CHECK(c->height == 1);
  CHECK(c->rect == Rect{-1, 1, -1, 1});
  CHECK(c->passage_columns == std::vector<Index>{0});
  CHECK(c->passage_rows == std::vector<Index>{0});
  auto pair = marginals(w, *c);
  CHECK(pair.first.steps == std::vector<Index>{1, 0, 1});
  CHECK(pair.first.length == 2);
  CHECK(pair.second.height == 1);

  auto origin = cycle_of_origin(0, 1.0);
  CHECK(origin.cycle.length() == 4);
  CHECK(origin.cycle.diameter() == 1);
}

TEST_CASE("color flip reverses direction") {
  auto w = all_plus(-4, 4);
  auto c = trace_cycle(w, {0, 0});
  REQUIRE(c);
  CHECK(classify(w, *c).direction == CycleDirection::Down);
  CHECK(classify(w, *c, true).direction == CycleDirection::Up);
  int seen = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    LatticeWindow rw(WindowSpec::centered(seed, 24));
    for (const auto& cen : full_census(rw))
      for (const auto& cy : cen.cycles) {
        const auto flipped = classify(rw, cy, true).direction;
        CHECK(flipped != cy.direction);
        CHECK(flipped != CycleDirection::Unknown);
        ++seen;
      }
  }
  CHECK(seen > 100);
}

TEST_CASE("escape is signalled") {
  bool hit = false;
  for (std::uint64_t seed = 0; seed < 50 && !hit; ++seed) {
    LatticeWindow w(WindowSpec::centered(seed, 2));
    if (!trace_cycle(w, {0, 0})) hit = true;
  }
  CHECK(hit);
  CHECK_THROWS_AS(cycle_of_origin(3, 0.5, BiasMode::Walk, {4, 4}) , BudgetExceeded);
}

TEST_CASE("traced cycles satisfy the pair bijection") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    LatticeWindow w(WindowSpec::centered(seed, 40));
    auto all = full_census(w);
    for (const auto& cen : all) {
      CHECK(cen.bijection_violations == 0);
      CHECK(cen.trichotomy_violations == 0);
      CHECK(cen.rectangle_violations == 0);
      CHECK(cen.alternation_violations == 0);
      for (const auto& c : cen.cycles) {
        REQUIRE(c.length() % 2 == 0);
        REQUIRE(c.length() >= 4);
        auto pair = marginals(w, c);
        CHECK(pair.level == c.level);
        if (c.direction == CycleDirection::Up) CHECK(is_even(pair.first.base + pair.second.base + c.height));
      }
    }
  }
}

TEST_CASE("passages sit at marginal extrema and are full") {
  int checked = 0;
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    LatticeWindow w(WindowSpec::centered(seed, 48));
    for (const auto& cen : full_census(w))
      for (const auto& c : cen.cycles) {
        if (c.length() > 600) continue;
        auto pair = marginals(w, c);
        std::vector<Index> cols, rows;
        for (Index k = 1; k < pair.first.length; ++k)
          if (pair.first.profile(k) == c.height) cols.push_back(pair.first.offset + k);
        for (Index k = 1; k < pair.second.length; ++k)
          if (pair.second.profile(k) == c.height) rows.push_back(pair.second.offset + k);
        CHECK(c.passage_columns == cols);
        CHECK(c.passage_rows == rows);
        auto inside = interior_faces(c);
        std::set<std::pair<Index, Index>> in;
        for (auto f : inside) in.insert({f.n, f.m});
        for (Index n : cols) {
          for (Index m = c.rect.b + 1; m <= c.rect.d - 1; ++m) CHECK(in.count({n, m}) == 1);
          auto edges = edge_set(c.vertices);
          CHECK(std::binary_search(edges.begin(), edges.end(), Edge{{n, c.rect.b + 1}, false}));
          CHECK(std::binary_search(edges.begin(), edges.end(), Edge{{n, c.rect.d}, false}));
        }
        ++checked;
      }
  }
  CHECK(checked > 1000);
}

TEST_CASE("level matches face heights on both sides") {
  for (std::uint64_t seed = 7; seed < 17; ++seed) {
    LatticeWindow w(WindowSpec::centered(seed, 30));
    for (const auto& cen : full_census(w))
      for (const auto& c : cen.cycles) {
        // The first interior face borders the cycle.
        const Face f = interior_faces(c).front();
        if (!w.contains(f)) continue;
        CHECK(height(w, f) == (c.direction == CycleDirection::Up ? c.level + 1 : c.level));
      }
  }
}

TEST_CASE("census edge cases") {
  LatticeWindow w(WindowSpec::centered(5, 8));
  auto far = level_set_census(w, 1000);
  CHECK(far.cycles.empty());
  CHECK(far.total_length == 0);
  auto small = level_set_census(LatticeWindow(WindowSpec::centered(5, 1)), 0);
  CHECK(small.total_length + small.escaped > 0);

  auto w2 = all_plus(0, 7);
  auto cen = full_census(w2);
  std::size_t cycles = 0;
  for (const auto& c : cen) cycles += c.cycles.size();
  CHECK(cycles == 16);
}

TEST_CASE("level edge count matches closed plus escaped pieces") {
  LatticeWindow w(WindowSpec::centered(12, 20));
  auto cen = level_set_census(w, 0);
  CHECK(level_edge_count(w, 0) >= cen.total_length);
}
