// Copyright 2026 The cornerlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <complex>
#include <vector>

#include "cornerlab/lattice.hpp"
#include "cornerlab/rational.hpp"

namespace cornerlab {

// Expectations over a height-h conditioned excursion.

/// Expected visits to i, 0 <= i <= h.
Rational V(Index h, Index i);
/// Expected {i, i+1} crossings, 0 <= i <= h-1.
Rational U(Index h, Index i);

Rational N_there(Index h, Index i, Index j);
Rational N_back(Index h, Index i, Index j);
Rational M_there(Index h, Index i, Index j);
Rational M_back(Index h, Index i, Index j);

/// Expected number of i -> j -> i sub-up-excursions, 1 <= i < j <= h.
Rational N(Index h, Index i, Index j);
/// Expected number of j -> i -> j sub-down-excursions, 1 <= i < j <= h.
Rational M(Index h, Index i, Index j);

/// 2 * sum_{i=1}^{h} V(h,i) U(h,h-i).
Rational T(Index h);

/// Coefficient of L(m) in the recursion for L(h), 1 <= m <= h-1, summed
/// from N and M in closed form (O(h) work).
Rational Y(Index h, Index m);

long double V_ld(Index h, Index i);
long double U_ld(Index h, Index i);
long double T_ld(Index h);

/// L(1..h_max) in exact arithmetic, index 0 unused.
std::vector<Rational> L_exact(Index h_max);

/// Literal double sum over (i, j) pairs with every N and M evaluated on its
/// own, single-threaded. Index 0 unused.
std::vector<long double> L_float_serial(Index h_max);

/// Collapsed-by-m convolution form, parallel over m with a fixed-order
/// compensated reduction; results do not depend on the thread count.
/// `err` (optional) receives a propagated rounding-error bound per h.
std::vector<long double> L_float_parallel(Index h_max, std::vector<long double>* err = nullptr);

struct ExactSeries {
  Index h_max = 0;
  Index exact_cutoff = 0;
  std::vector<Rational> L_exact;       ///< h = 1..exact_cutoff
  std::vector<long double> L;          ///< h = 1..h_max, exact values rounded where available
  std::vector<long double> T;          ///< h = 1..h_max
  std::vector<long double> error;      ///< absolute error estimate of L(h)
  long double max_exact_float_rel = 0; ///< worst |L_float/L_exact - 1| over h <= exact_cutoff

  [[nodiscard]] long double K(Index h) const {
    return static_cast<long double>(h) * static_cast<long double>(h) * L[static_cast<std::size_t>(h)];
  }
};

ExactSeries L_sequence(Index h_max, Index exact_cutoff = 64);

/// Centered log-log derivative of L at h (backward at h_max).
double local_slope(const ExactSeries& s, Index h);

/// Slope fit model: s + a h^-c log h + b h^-c.
struct ExponentFit {
  std::vector<Index> h;
  std::vector<double> slope;
  double extrapolated = 0.0;
  double a = 0.0, b = 0.0;
  double correction_exponent = 0.0;
  bool monotone = false;
  double target = 0.0;
};

/// Dyadic points of [h_lo, h_hi]. Throws InsufficientData below three points.
ExponentFit fit_exponent(const ExactSeries& s, Index h_lo, Index h_hi);

/// Same fit on an arbitrary (h, slope) table.
ExponentFit fit_slopes(std::vector<Index> h, std::vector<double> slope);

/// log L / log h derivative of any positive sequence indexed by h.
std::vector<double> local_slopes(const std::vector<long double>& values);

double indicial_poly(double mu);
/// The six roots, real parts ascending.
std::array<double, 6> indicial_roots();

/// (1 + sqrt 17) / 2
double two_delta();

}  // namespace cornerlab
