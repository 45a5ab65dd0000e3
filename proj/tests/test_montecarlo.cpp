// Copyright 2026 The cornerlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <vector>

#include <omp.h>

#include "cornerlab/errors.hpp"
#include "cornerlab/montecarlo.hpp"
#include "cornerlab/verify.hpp"
#include "doctest.h"

using namespace cornerlab;

TEST_CASE("power-law fit recovers an exact exponent") {
  FitReport r;
  for (double x : {2.0, 4.0, 8.0, 16.0, 32.0}) r.points.push_back({x, 3.0 * std::pow(x, -0.7), 0.01 * std::pow(x, -0.7), 100});
  fit_power_law(r, 1, 100, true);
  CHECK(r.exponent == doctest::Approx(0.7).epsilon(1e-9));
  CHECK(std::exp(r.intercept) == doctest::Approx(3.0));
  r.points.resize(1);
  CHECK_THROWS_AS(fit_power_law(r, 1, 100, true), InsufficientData);
}

TEST_CASE("height-1 pairs always give a 4-cycle") {
  auto r = estimate_L_mc(1, 200, 5);
  CHECK(r.estimate == 4.0);
  CHECK(r.stderr_ == 0.0);
  CHECK(r.extra["z"] == 0.0);
}

TEST_CASE("sampled pair lengths and level edges match the exact series") {
  auto l = estimate_L_mc(2, 20000, 6);
  CHECK(l.extra["exact"] == doctest::Approx(52.0 / 3));
  CHECK(std::abs(l.extra["z"]) < 3.0);
  auto t = estimate_T_mc(2, 20000, 7);
  CHECK(t.extra["exact"] == doctest::Approx(160.0 / 9));
  CHECK(std::abs(t.extra["z"]) < 3.0);
  auto l5 = estimate_L_mc(5, 4000, 8);
  CHECK(std::abs(l5.extra["z"]) < 3.5);
}

TEST_CASE("origin height tail starts at one and decreases") {
  OriginOptions small;
  small.max_size = 512;
  auto s = sample_origin_cycles(300, 9, 0.5, BiasMode::Signs, small);
  auto r = estimate_P({0, 1, 2, 4, 8, 16}, s, 9);
  CHECK(r.points.front().y == 1.0);
  CHECK(r.extra["monotone"] == 1.0);
  CHECK(r.violation_total() == 0);
  for (const auto& x : s)
    if (x.closed) {
      CHECK(x.length >= 4);
      CHECK(x.diameter >= 1);
    }
  auto f = estimate_finiteness(s, 9);
  CHECK(f.estimate > 0.5);
  CHECK(f.censored == static_cast<std::size_t>(std::lround((1 - f.estimate) * 300)));
}

TEST_CASE("torus with n = 1") {
  CHECK(torus_avoidance_n1() <= 0.25);
  auto r = estimate_torus(1, 2000, 10);
  CHECK(r.extra["balance_bound"] == doctest::Approx(0.25));
  CHECK(r.violation_total() == 0);
  CHECK(r.extra["avoidance"] <= r.extra["balance_empirical"]);
  auto r4 = estimate_torus(4, 500, 11);
  CHECK(r4.violation_total() == 0);
}

TEST_CASE("crossings are exclusive") {
  auto r = estimate_crossing(24, 400, 12);
  CHECK(r.violations["both_crossings"] == 0);
  CHECK(r.estimate > 0.0);
  CHECK(r.estimate < 1.0);
  CHECK(std::abs(r.extra["lr_minus_ud_z"]) < 4.0);
}

TEST_CASE("level-0 windows stay consistent") {
  auto r = estimate_level0_total({16, 32, 64}, 20, 13);
  CHECK(r.violation_total() == 0);
  CHECK(r.exponent > 1.0);
  CHECK(r.exponent < 2.0);
}

TEST_CASE("length by diameter keeps unit boxes at length 4") {
  auto r = estimate_length_by_diameter(12, 200, 14, 4, 64);
  CHECK(r.violation_total() == 0);
  CHECK(r.exponent > 1.0);
  CHECK(r.exponent < 1.6);
}

TEST_CASE("results do not depend on the thread count") {
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  auto a = estimate_L_mc(4, 500, 15);
  auto c = estimate_crossing(16, 100, 16);
  omp_set_num_threads(3);
  auto b = estimate_L_mc(4, 500, 15);
  auto d = estimate_crossing(16, 100, 16);
  omp_set_num_threads(saved);
  CHECK(a.estimate == b.estimate);
  CHECK(a.stderr_ == b.stderr_);
  CHECK(c.estimate == d.estimate);
}

TEST_CASE("walk-mode sweep reports escape by budget") {
  SweepParams p;
  p.samples = 50;
  p.mode = BiasMode::Walk;
  p.origin.max_size = 256;
  auto out = biased_sweep({0.5, 0.6}, SweepEstimator::Finiteness, p);
  REQUIRE(out.size() == 2);
  CHECK(out[0].extra.count("escape_at_256") == 1);
  CHECK(out[0].extra["escape_at_32"] >= out[0].extra["escape_at_256"]);
  auto cr = biased_sweep({0.5}, SweepEstimator::Crossing, p);
  CHECK(cr[0].name == "crossing_lr");
}

TEST_CASE("small verify suite finds no violations") {
  VerifyOptions o;
  o.seed = 7;
  o.windows = 20;
  o.window_half = 16;
  o.pairs = 200;
  o.trixor_fields = 5;
  auto r = run_verify(o);
  CHECK(r.total() == 0);
  CHECK(r.checked["windows"] == 20);
  CHECK(r.checked["cycles"] > 100);
  CHECK(r.checked["faces"] == 20 * 32 * 32);
  CHECK(r.violations.count("builder_mismatch") == 1);
}
