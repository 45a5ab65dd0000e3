// Copyright 2026 The cornerlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <vector>

#include "cornerlab/errors.hpp"
#include "cornerlab/excursion.hpp"
#include "cornerlab/series.hpp"
#include "doctest.h"

using namespace cornerlab;

TEST_CASE("small-height values by hand") {
  CHECK(V(5, 0) == 2);
  CHECK(V(1, 1) == 1);
  CHECK(V(2, 1) == Rational(7, 3));
  CHECK(U(1, 0) == 2);
  CHECK(U(2, 0) == 2);
  CHECK(U(2, 1) == Rational(8, 3));
  CHECK(N(2, 1, 2) == Rational(4, 3));
  CHECK(M(2, 1, 2) == Rational(1, 3));
  CHECK(T(2) == Rational(160, 9));
  CHECK_THROWS_AS(V(3, 4), std::invalid_argument);
  CHECK_THROWS_AS(U(3, 3), std::invalid_argument);
  CHECK_THROWS_AS(N(3, 2, 2), std::invalid_argument);
}

TEST_CASE("visits and crossings account for the excursion length") {
  for (Index h = 1; h <= 30; ++h) {
    Rational visits(0), crossings(0);
    for (Index i = 0; i <= h; ++i) visits += V(h, i);
    for (Index i = 0; i < h; ++i) crossings += U(h, i);
    CHECK(visits - 1 == crossings);
  }
}

TEST_CASE("collapsed coefficients equal the literal pair sums") {
  for (Index h = 2; h <= 14; ++h) {
    std::vector<Rational> lit(static_cast<std::size_t>(h), Rational(0));
    for (Index i = 1; i <= h - 1; ++i)
      for (Index j = i + 1; j <= h - 1; ++j) lit[static_cast<std::size_t>(j - i)] += N(h, i, j) * N(h, h - j, h - i);
    for (Index i = 1; i <= h - 1; ++i)
      for (Index j = i + 1; j <= h; ++j) lit[static_cast<std::size_t>(j - i)] += M(h, i, j) * M(h, h + 1 - j, h + 1 - i);
    for (Index m = 1; m <= h - 1; ++m) CHECK(Y(h, m) == lit[static_cast<std::size_t>(m)]);
  }
}

TEST_CASE("exact recursion") {
  auto L = L_exact(40);
  CHECK(L[1] == 4);
  CHECK(L[2] == Rational(52, 3));
  for (Index h = 1; h < 40; ++h) CHECK(L[static_cast<std::size_t>(h)] <= L[static_cast<std::size_t>(h + 1)]);
}

TEST_CASE("float kernels agree with exact values") {
  auto s = L_sequence(96, 64);
  CHECK(s.max_exact_float_rel <= 1e-9L);
  auto serial = L_float_serial(96);
  auto parallel = L_float_parallel(96);
  for (Index h = 1; h <= 96; ++h) {
    const auto k = static_cast<std::size_t>(h);
    CHECK(std::fabs(serial[k] / parallel[k] - 1.0L) < 1e-15L);
    CHECK(s.L[k] > 0);
    if (h > 1) CHECK(s.L[k] >= s.L[k - 1]);
  }
}

TEST_CASE("T grows like 16/15 h^3") {
  for (Index h : {100, 200, 400, 1000}) {
    const double r = static_cast<double>(T_ld(h)) / std::pow(static_cast<double>(h), 3);
    CHECK(r >= 1.0);
    CHECK(r <= 1.14);
  }
  CHECK(static_cast<double>(T_ld(1000)) / 1e9 < static_cast<double>(T_ld(100)) / 1e6);
  CHECK(std::abs(static_cast<double>(T_ld(4)) - to_double(T(4))) < 1e-12);
}

TEST_CASE("exponent fit on a pure power law") {
  std::vector<long double> v(2049);
  for (std::size_t h = 1; h < v.size(); ++h) v[h] = 3.0L * std::pow(static_cast<long double>(h), 2.5L);
  auto slopes = local_slopes(v);
  std::vector<Index> hs;
  std::vector<double> ss;
  for (Index h = 64; h <= 1024; h *= 2) {
    hs.push_back(h);
    ss.push_back(slopes[static_cast<std::size_t>(h)]);
    CHECK(slopes[static_cast<std::size_t>(h)] == doctest::Approx(2.5).epsilon(1e-9));
  }
  auto f = fit_slopes(hs, ss);
  CHECK(f.extrapolated == doctest::Approx(2.5).epsilon(1e-9));
  CHECK_THROWS_AS(fit_slopes({64, 128}, {2.5, 2.5}), InsufficientData);
}

TEST_CASE("indicial polynomial") {
  CHECK(indicial_poly(1.0) == 0.0);
  CHECK(indicial_poly(4.0) == 0.0);
  CHECK(std::abs(indicial_poly((5 + std::sqrt(17.0)) / 2)) <= 1e-9);
  CHECK(std::abs(indicial_poly((5 - std::sqrt(17.0)) / 2)) <= 1e-9);
  auto r = indicial_roots();
  for (double mu : r) CHECK(std::abs(indicial_poly(mu)) <= 1e-9);
  CHECK(r[0] == doctest::Approx((5 - std::sqrt(17.0)) / 2).epsilon(1e-6));
  CHECK(r[5] == doctest::Approx((5 + std::sqrt(17.0)) / 2).epsilon(1e-6));
}

namespace {

struct Moments {
  double sum = 0, sum2 = 0;
  int n = 0;
  void add(double x) {
    sum += x;
    sum2 += x * x;
    ++n;
  }
  [[nodiscard]] double mean() const { return sum / n; }
  [[nodiscard]] double se() const { return std::sqrt(std::max(sum2 / n - mean() * mean(), 0.0) / n); }
  [[nodiscard]] bool within(double target) const { return std::abs(mean() - target) <= 3.0 * se() + 1e-12; }
};

}  // namespace

TEST_CASE("expected counts match the excursion sampler") {
  const int samples = 100000;
  for (Index h : {2, 5, 8}) {
    std::vector<Moments> visits(static_cast<std::size_t>(h + 1)), cross(static_cast<std::size_t>(h));
    const Index i0 = 1, j0 = h == 2 ? 2 : 3;
    Moments n_ij, m_ij;
    std::vector<Index> v, neg;
    for (int k = 0; k < samples; ++k) {
      KeyedRng rng(17, static_cast<std::uint64_t>(h), static_cast<std::uint64_t>(k));
      sample_excursion_values(h, rng, v);
      std::vector<int> cv(static_cast<std::size_t>(h + 1), 0), cc(static_cast<std::size_t>(h), 0);
      for (std::size_t t = 0; t < v.size(); ++t) {
        ++cv[static_cast<std::size_t>(v[t])];
        if (t + 1 < v.size()) ++cc[static_cast<std::size_t>(std::min(v[t], v[t + 1]))];
      }
      for (Index i = 0; i <= h; ++i) visits[static_cast<std::size_t>(i)].add(cv[static_cast<std::size_t>(i)]);
      for (Index i = 0; i < h; ++i) cross[static_cast<std::size_t>(i)].add(cc[static_cast<std::size_t>(i)]);
      n_ij.add(static_cast<double>(subexcursions(v, i0, j0).size()));
      neg.assign(v.begin(), v.end());
      for (auto& x : neg) x = -x;
      m_ij.add(static_cast<double>(subexcursions(neg, -j0, -i0).size()));
    }
    for (Index i = 0; i <= h; ++i) CHECK(visits[static_cast<std::size_t>(i)].within(to_double(V(h, i))));
    for (Index i = 0; i < h; ++i) CHECK(cross[static_cast<std::size_t>(i)].within(to_double(U(h, i))));
    CHECK(n_ij.within(to_double(N(h, i0, j0))));
    CHECK(m_ij.within(to_double(M(h, i0, j0))));
  }
}
