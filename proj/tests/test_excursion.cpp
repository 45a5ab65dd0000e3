// Copyright 2026 The cornerlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <vector>

#include "cornerlab/errors.hpp"
#include "cornerlab/excursion.hpp"
#include "doctest.h"

using namespace cornerlab;

TEST_CASE("excursion predicate and detection") {
  CHECK(is_excursion(std::vector<Index>{0, 1, 0}, Direction::Up));
  CHECK_FALSE(is_excursion(std::vector<Index>{0, 1, 0, 1, 0}, Direction::Up));
  CHECK(is_excursion(std::vector<Index>{3, 2, 1, 2, 3}, Direction::Down));
  CHECK_THROWS_AS(make_excursion(Direction::Up, 0, {0, -1, 0}), std::invalid_argument);

  auto tent = make_excursion(Direction::Up, 0, {0, 1, 2, 1, 0});
  CHECK(tent.height == 2);
  CHECK(tent.length == 4);

  Walk w{0, 4, {0, 1, 2, 1, 0}};
  auto top = detect_excursions(w, 0, 4, Direction::Up);
  REQUIRE(top.size() == 1);
  CHECK(top[0].height == 2);
  auto all = detect_excursions(w, 0, 4, Direction::Up, true);
  REQUIRE(all.size() == 2);
  CHECK(all[1].height == 1);

  Walk single{0, 2, {0, 1, 0}};
  auto one = detect_excursions(single, 0, 2, Direction::Up);
  REQUIRE(one.size() == 1);
  CHECK(one[0].height == 1);
  CHECK(one[0].length == 2);
}

TEST_CASE("bracketing matches the excursion predicate on all short sign strings") {
  for (int len = 1; len <= 12; ++len) {
    for (int mask = 0; mask < (1 << len); ++mask) {
      std::vector<int> signs;
      for (int k = 0; k < len; ++k) signs.push_back((mask >> k) & 1 ? 1 : -1);
      for (Index a : {Index{0}, Index{1}}) {
        // Signs occupy indices a+1 .. a+len.
        std::vector<Index> walk{0};
        for (int k = 0; k < len; ++k) {
          const Index n = a + 1 + k;
          const int star = is_even(n) ? -signs[static_cast<std::size_t>(k)] : signs[static_cast<std::size_t>(k)];
          walk.push_back(walk.back() + star);
        }
        const bool exc = is_excursion(walk, Direction::Up) || is_excursion(walk, Direction::Down);
        REQUIRE(balanced_bracketing(signs, a + 1) == exc);
      }
    }
  }
}

TEST_CASE("compatibility") {
  auto up2a = make_excursion(Direction::Up, 0, {0, 1, 2, 1, 0});
  auto up2b = make_excursion(Direction::Up, 0, {-2, -1, 0, -1, -2});
  auto up2c = make_excursion(Direction::Up, 0, {-1, 0, 1, 0, -1});
  auto up1 = make_excursion(Direction::Up, 0, {0, 1, 0});
  CHECK(is_compatible(up2a, up2b));
  CHECK_FALSE(is_compatible(up2a, up2c));
  CHECK_FALSE(is_compatible(up2a, up1));
  CHECK(pair_level(up2a, up2b) == 0);
  auto down = make_excursion(Direction::Down, 0, {1, 0, 1});
  CHECK(is_compatible(down, down));
  CHECK(pair_level(down, down) == 0);
  CHECK_THROWS_AS(make_pair(up2a, up1), std::invalid_argument);
}

TEST_CASE("birth-death hitting") {
  const Index b = 6;
  std::vector<Rational> half(b + 1, Rational(1, 2));
  for (Index x = 0; x <= b; ++x) CHECK(birth_death_hitting(half, half, x, 0, b) == Rational(b - x, b));
  CHECK_THROWS_AS(birth_death_hitting(half, half, 7, 0, b), std::invalid_argument);

  // phi^there(x) = 2(1 - 1/x) with base 1.
  const Index h = 9;
  auto up = there_up(h), down = there_down(h);
  Rational phi(0), incr(1);
  for (Index x = 2; x <= h; ++x) {
    phi += incr;
    CHECK(phi == Rational(2) * (Rational(1) - Rational(1, x)));
    incr *= down[static_cast<std::size_t>(x)] / up[static_cast<std::size_t>(x)];
  }
}

TEST_CASE("closed-form hitting probabilities") {
  CHECK(hit_prob_there(3, 3, 7) == 1);
  CHECK(hit_prob_there(2, 1, 4) == Rational(1, 3));
  CHECK(hit_prob_back(1, 2, 2) == Rational(1, 4));
  CHECK_THROWS_AS(hit_prob_there(1, 2, 4), std::invalid_argument);
  CHECK_THROWS_AS(hit_prob_back(0, 5, 4), std::invalid_argument);
  for (Index h = 1; h <= 16; ++h)
    for (Index j = 0; j <= h; ++j)
      for (Index i = 0; i <= j; ++i) {
        if (i >= 1) REQUIRE(hit_prob_there(j, i, h) == hit_prob_there_martingale(j, i, h));
        REQUIRE(hit_prob_back(i, j, h) == hit_prob_back_martingale(i, j, h));
      }
}

TEST_CASE("there-chain Monte Carlo for h=4, j=2, i=1") {
  const int runs = 200000;
  int hits = 0;
  for (int k = 0; k < runs; ++k) {
    KeyedRng rng(5, 0, static_cast<std::uint64_t>(k));
    hits += simulate_there_hit(2, 1, 4, rng);
  }
  const double p = 1.0 / 3.0;
  CHECK(std::abs(hits / double(runs) - p) < 3.0 * std::sqrt(p * (1 - p) / runs));
}

TEST_CASE("conditioned excursion sampler") {
  std::vector<Index> v;
  for (std::uint64_t k = 0; k < 100; ++k) {
    KeyedRng rng(1, 0, k);
    sample_excursion_values(1, rng, v);
    CHECK(v == std::vector<Index>{0, 1, 0});
  }
  for (Index h : {2, 5, 13}) {
    for (std::uint64_t k = 0; k < 500; ++k) {
      KeyedRng rng(2, static_cast<std::uint64_t>(h), k);
      auto e = sample_excursion(h, Direction::Down, rng, 3, 0);
      REQUIRE(is_excursion(e.steps, Direction::Down));
      REQUIRE(e.height == h);
      REQUIRE(e.length % 2 == 0);
    }
  }
  const int n = 100000;
  int len4 = 0;
  double sum = 0, sum2 = 0;
  for (int k = 0; k < n; ++k) {
    KeyedRng rng(3, 0, static_cast<std::uint64_t>(k));
    sample_excursion_values(2, rng, v);
    const double len = static_cast<double>(v.size() - 1);
    len4 += len == 4;
    sum += len;
    sum2 += len * len;
  }
  const double mean = sum / n, sd = std::sqrt(sum2 / n - mean * mean);
  CHECK(std::abs(mean - 14.0 / 3.0) < 3.0 * sd / std::sqrt(n));
  CHECK(std::abs(len4 / double(n) - 0.75) < 3.0 * std::sqrt(0.75 * 0.25 / n));
}

TEST_CASE("sub-excursions follow the smaller excursion law") {
  auto r = subexcursion_distribution_check(3, 1, 2, 1, 2000, 9);
  CHECK(r.pass);
  CHECK(r.ks_length == 0.0);
  r = subexcursion_distribution_check(2, 0, 2, 1, 2000, 9);
  CHECK(r.pass);
  r = subexcursion_distribution_check(4, 1, 3, 1, 100000, 9);
  CHECK(r.pass);
  CHECK_THROWS_AS(subexcursion_distribution_check(4, 0, 1, 1, 100, 9), InsufficientData);
}
