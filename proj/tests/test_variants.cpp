// Copyright 2026 The cornerlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <vector>

#include "cornerlab/errors.hpp"
#include "cornerlab/variants.hpp"
#include "doctest.h"

using namespace cornerlab;

namespace {

std::uint8_t zero_bits(std::size_t, Index) { return 0; }

}  // namespace

TEST_CASE("2-xor with zero sequences is all closed") {
  auto f = gen_2xor(-3, 3, -2, 4, zero_bits);
  for (Index x = -3; x < 3; ++x)
    for (Index y = -2; y < 4; ++y) {
      CHECK_FALSE(f.open(Edge{{x, y}, false}));
      CHECK_FALSE(f.open(Edge{{x, y}, true}));
    }
  auto st = variant_cluster_stats(f);
  CHECK(st.clusters.size() == 49);
}

TEST_CASE("2-xor edge states are fair and pairwise uncorrelated") {
  const int n = 20000;
  int open_a = 0, open_b = 0, both = 0;
  const Edge a{{0, 0}, true}, b{{1, 0}, true}, c{{0, 0}, false};
  int open_c = 0, ac = 0;
  for (int s = 0; s < n; ++s) {
    auto f = gen_2xor(0, 2, 0, 2, static_cast<std::uint64_t>(s));
    const bool oa = f.open(a), ob = f.open(b), oc = f.open(c);
    open_a += oa;
    open_b += ob;
    open_c += oc;
    both += oa && ob;
    ac += oa && oc;
  }
  const double sigma = std::sqrt(0.25 / n);
  CHECK(std::abs(open_a / double(n) - 0.5) < 3 * sigma);
  CHECK(std::abs(open_c / double(n) - 0.5) < 3 * sigma);
  // Covariances, se about sqrt(3/16 / n).
  const double se = std::sqrt(3.0 / 16 / n);
  CHECK(std::abs(both / double(n) - open_a / double(n) * open_b / double(n)) < 3 * se);
  CHECK(std::abs(ac / double(n) - open_a / double(n) * open_c / double(n)) < 3 * se);
}

TEST_CASE("adjacent parallel 2-xor lines agree or complement") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    auto f = gen_2xor(0, 10, 0, 10, s);
    for (Index x = 0; x < 10; ++x) {
      const bool same = f.open(Edge{{x, 0}, true}) == f.open(Edge{{x + 1, 0}, true});
      for (Index y = 1; y < 10; ++y) CHECK((f.open(Edge{{x, y}, true}) == f.open(Edge{{x + 1, y}, true})) == same);
    }
  }
}

TEST_CASE("trixor basics") {
  auto z = gen_kxor(trixor_families(), 12, zero_bits);
  for (auto s : z.state) CHECK(s == 0);
  auto st = variant_cluster_stats(z);
  CHECK(st.clusters.size() == 1);
  CHECK(st.clusters[0].size == 144);
  CHECK(st.clusters[0].boundary == 0);

  long ones = 0;
  for (std::uint64_t s = 0; s < 40; ++s) {
    auto f = gen_trixor(48, s);
    CHECK(even_neighborhood_violations(f) == 0);
    CHECK(f.state == gen_kxor(trixor_families(), 48, s).state);
    ones += f.at(20, 20);
  }
  CHECK(ones > 0);
  CHECK(ones < 40);
  int hits = 0;
  const int n = 4000;
  for (int s = 0; s < n; ++s) hits += gen_trixor(4, static_cast<std::uint64_t>(s)).at(2, 1);
  CHECK(std::abs(hits / double(n) - 0.5) < 3 * std::sqrt(0.25 / n));
}

TEST_CASE("flipping one line bit flips exactly that line") {
  const auto fams = fourxor_families();
  const auto base = seeded_bits(3);
  for (std::size_t fam = 0; fam < fams.size(); ++fam) {
    const Index line = 9;
    auto flipped = [&](std::size_t f, Index l) -> std::uint8_t { return base(f, l) ^ (f == fam && l == line); };
    auto a = gen_kxor(fams, 10, base), b = gen_kxor(fams, 10, flipped);
    for (Index v = 0; v < 10; ++v)
      for (Index u = 0; u < 10; ++u) {
        const Index idx = fams[fam].a * u + fams[fam].b * v;
        CHECK((a.at(u, v) != b.at(u, v)) == (idx == line));
      }
  }
}

TEST_CASE("vertical family needs the doubled index") {
  auto fams = trixor_families();
  fams.push_back({2, 1, 0, 2});
  CHECK_THROWS_AS(gen_kxor(fams, 4, std::uint64_t{1}), InvalidGeometry);
  CHECK_NOTHROW(gen_kxor(fourxor_families(), 4, std::uint64_t{1}));
}

TEST_CASE("variant estimates carry bands and no violations") {
  auto r = estimate_variant(VariantKind::Trixor, 64, 40, 5);
  CHECK(r.constraint_violations == 0);
  CHECK(r.band_gamma_lo == 0.16);
  CHECK(r.gamma.points.front().y <= 1.0);
  CHECK(r.centre_touch_fraction < 1.0);
  auto q = estimate_variant(VariantKind::FourXor, 64, 20, 6);
  CHECK(q.band_delta_hi == 1.76);
  auto t = estimate_variant(VariantKind::TwoXor, 32, 10, 7);
  CHECK(t.size_histogram.size() > 0);
  CHECK(variant_from_name("trixor") == VariantKind::Trixor);
  CHECK_THROWS_AS(variant_from_name("5xor"), std::invalid_argument);
}
