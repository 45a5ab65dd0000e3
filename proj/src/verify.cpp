// Copyright 2026 The cornerlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "cornerlab/verify.hpp"

#include <array>
#include <chrono>
#include <exception>
#include <vector>

#include "cornerlab/builders.hpp"
#include "cornerlab/contours.hpp"
#include "cornerlab/montecarlo.hpp"
#include "cornerlab/variants.hpp"

namespace cornerlab {

long VerifyReport::total() const {
  long t = 0;
  for (const auto& [k, v] : violations) t += v;
  return t;
}

namespace {

enum Counter { Bijection, Trichotomy, Rectangle, Alternation, Degree, Crossing, Cycles, NCounters };

}  // namespace

void verify_windows(const VerifyOptions& o, VerifyReport& r) {
  std::vector<std::array<long, NCounters>> per(o.windows);
  const auto n = static_cast<long>(o.windows);
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < n; ++k) {
    auto& c = per[static_cast<std::size_t>(k)];
    c.fill(0);
    LatticeWindow w(WindowSpec::centered(sample_seed(o.seed, 71, static_cast<std::uint64_t>(k)), o.window_half));
    try {
      for (const Census& cen : full_census(w)) {
        c[Bijection] += cen.bijection_violations;
        c[Trichotomy] += cen.trichotomy_violations;
        c[Rectangle] += cen.rectangle_violations;
        c[Alternation] += cen.alternation_violations;
        c[Cycles] += static_cast<long>(cen.cycles.size());
      }
    } catch (const std::exception&) {
      ++c[Bijection];
    }
    for (Index x = w.x_lo() + 1; x < w.x_hi(); ++x)
      for (Index y = w.y_lo() + 1; y < w.y_hi(); ++y) c[Degree] += w.degree({x, y}) != 2;
    const auto cr = crossings(w);
    c[Crossing] += cr.lr && cr.ud;
  }
  for (const char* key : {"bijection", "trichotomy", "rectangle", "alternation", "degree", "both_crossings"})
    r.violations.try_emplace(key, 0);
  for (const auto& c : per) {
    r.violations["bijection"] += c[Bijection];
    r.violations["trichotomy"] += c[Trichotomy];
    r.violations["rectangle"] += c[Rectangle];
    r.violations["alternation"] += c[Alternation];
    r.violations["degree"] += c[Degree];
    r.violations["both_crossings"] += c[Crossing];
    r.checked["cycles"] += c[Cycles];
  }
  r.checked["windows"] += static_cast<long>(o.windows);
}

void verify_heights(const VerifyOptions& o, VerifyReport& r) {
  std::vector<std::array<long, 2>> per(o.windows);
  const auto n = static_cast<long>(o.windows);
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < n; ++k) {
    LatticeWindow w(WindowSpec::centered(sample_seed(o.seed, 72, static_cast<std::uint64_t>(k)), o.window_half));
    const HeightField hf = height_field_by_path(w);
    long bad = 0, faces = 0;
    for (Index m = hf.m_lo; m <= hf.m_hi; ++m)
      for (Index nn = hf.n_lo; nn <= hf.n_hi; ++nn) {
        bad += height(w, {nn, m}) != hf.at({nn, m});
        ++faces;
      }
    per[static_cast<std::size_t>(k)] = {bad, faces};
  }
  r.violations.try_emplace("height_mismatch", 0);
  for (const auto& [bad, faces] : per) {
    r.violations["height_mismatch"] += bad;
    r.checked["faces"] += faces;
  }
}

void verify_pairs(const VerifyOptions& o, VerifyReport& r) {
  std::vector<char> bad(o.pairs);
  const auto n = static_cast<long>(o.pairs);
#pragma omp parallel for schedule(dynamic, 8)
  for (long k = 0; k < n; ++k) {
    KeyedRng pick(o.seed, 73, static_cast<std::uint64_t>(k));
    const Index h = 1 + static_cast<Index>(pick() % static_cast<std::uint64_t>(o.pair_h_max));
    const Direction d = pick() & 1 ? Direction::Down : Direction::Up;
    KeyedRng rx(o.seed, 74, static_cast<std::uint64_t>(k)), ry(o.seed, 75, static_cast<std::uint64_t>(k));
    try {
      const auto p = make_pair(sample_excursion(h, d, rx, 0, 0),
                               sample_excursion(h, d, ry, d == Direction::Up ? -h : h + 1, 0));
      const auto t = cycle_from_pair_trace(p);
      const auto c = cycle_from_pair_hikers(p);
      bad[static_cast<std::size_t>(k)] = edge_set(t.vertices) != edge_set(c.vertices) || t.rect != c.rect;
    } catch (const std::exception&) {
      bad[static_cast<std::size_t>(k)] = 1;
    }
  }
  long total = 0;
  for (char b : bad) total += b;
  r.violations["builder_mismatch"] += total;
  r.checked["pairs"] += static_cast<long>(o.pairs);
}

void verify_trixor(const VerifyOptions& o, VerifyReport& r) {
  std::vector<long> bad(o.trixor_fields);
  const auto n = static_cast<long>(o.trixor_fields);
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < n; ++k)
    bad[static_cast<std::size_t>(k)] =
        even_neighborhood_violations(gen_trixor(o.trixor_size, sample_seed(o.seed, 76, static_cast<std::uint64_t>(k))));
  long total = 0;
  for (long b : bad) total += b;
  r.violations["even_neighborhood"] += total;
  r.checked["trixor_fields"] += static_cast<long>(o.trixor_fields);
}

VerifyReport run_verify(const VerifyOptions& o) {
  const auto t0 = std::chrono::steady_clock::now();
  VerifyReport r;
  verify_windows(o, r);
  verify_heights(o, r);
  verify_pairs(o, r);
  verify_trixor(o, r);
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace cornerlab
