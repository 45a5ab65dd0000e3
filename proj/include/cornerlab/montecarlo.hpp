// Copyright 2026 The cornerlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cornerlab/contours.hpp"
#include "cornerlab/lattice.hpp"

namespace cornerlab {

/// Counters that must stay at zero.
using Violations = std::map<std::string, long>;

struct MCReport {
  std::string name;
  std::map<std::string, double> params;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  double estimate = 0.0;
  double stderr_ = 0.0;
  double ci_lo = 0.0, ci_hi = 0.0;  ///< 95%
  std::size_t censored = 0;
  Violations violations;
  std::map<std::string, double> extra;
  double wall_seconds = 0.0;

  [[nodiscard]] long violation_total() const;
};

struct FitPoint {
  double x = 0.0, y = 0.0, se = 0.0;
  std::size_t count = 0;
  bool used = false;
};

struct FitReport {
  std::string name;
  std::map<std::string, double> params;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::vector<FitPoint> points;
  /// Decay exponents are reported positive (minus the log-log slope).
  double exponent = 0.0, exponent_se = 0.0, ci_lo = 0.0, ci_hi = 0.0;
  double intercept = 0.0;
  double target = 0.0;
  std::string target_label;
  double max_rel_se = 0.2;
  std::size_t censored = 0;
  Violations violations;
  std::map<std::string, double> extra;
  std::vector<std::string> warnings;
  double wall_seconds = 0.0;

  [[nodiscard]] long violation_total() const;
};

/// Weighted least squares of log y on log x over points with y > 0 and
/// se/y below `max_rel_se`, in [x_lo, x_hi]. Marks the points used.
/// Throws InsufficientData with fewer than two usable points.
void fit_power_law(FitReport& r, double x_lo, double x_hi, bool decay);

constexpr double kTwoGamma = 0.43844718719116975;  // (5 - sqrt 17) / 2
constexpr double kGamma = kTwoGamma / 2;
constexpr double kDelta = 1.2807764064044151;  // (sqrt 17 + 1) / 4

/// Per-sample seed, independent of thread count.
std::uint64_t sample_seed(std::uint64_t master, std::uint64_t job, std::uint64_t index);

struct OriginSample {
  bool closed = false;
  Index length = 0, diameter = 0, height = 0;
  Index window = 0;  ///< closing window side, or the last tried
  Index violations = 0;
};

/// Cycles of the origin for `count` independent configurations.
std::vector<OriginSample> sample_origin_cycles(std::size_t count, std::uint64_t seed, double bias = 0.5,
                                               BiasMode mode = BiasMode::Signs, const OriginOptions& opts = {});

/// P(h): tail of the marginal height of the origin cycle. Censored samples
/// count as exceeding every threshold; `extra` holds the lower bound that
/// drops them.
FitReport estimate_P(const std::vector<Index>& h_values, std::size_t samples, std::uint64_t seed,
                     const OriginOptions& opts = {}, double fit_lo = 4);
FitReport estimate_P(const std::vector<Index>& h_values, const std::vector<OriginSample>& s, std::uint64_t seed,
                     double fit_lo = 4);

/// Diameter tail of the origin cycle, with n^{1/2} P(diam > n) and truncated
/// mean diameters in `extra`.
FitReport estimate_diam_tail(const std::vector<Index>& n_values, std::size_t samples, std::uint64_t seed,
                             const OriginOptions& opts = {});
FitReport estimate_diam_tail(const std::vector<Index>& n_values, const std::vector<OriginSample>& s,
                             std::uint64_t seed);

/// Fraction of origin cycles closing within the window budget.
MCReport estimate_finiteness(const std::vector<OriginSample>& s, std::uint64_t seed, double bias = 0.5);

/// Mean built-cycle length of independent height-h pairs, against exact L(h).
MCReport estimate_L_mc(Index h, std::size_t samples, std::uint64_t seed);

/// Mean |T'| + |T''| of independent height-h pairs, against exact T(h).
MCReport estimate_T_mc(Index h, std::size_t samples, std::uint64_t seed);

/// Built cycles of heights 1..h_max re-binned by diameter into dyadic bins;
/// exponent fitted over bins in [n_lo, n_hi]. Second-moment ratios and the
/// diameter concentration around h^2 land in `extra`.
FitReport estimate_length_by_diameter(Index h_max, std::size_t samples_per_h, std::uint64_t seed, double n_lo = 16,
                                      double n_hi = 1024);

/// Level-0 contour edges inside an N x N box, exponent against 3/2. Each
/// window also gets a level-0 census and a degree check.
FitReport estimate_level0_total(const std::vector<Index>& N_values, std::size_t samples, std::uint64_t seed);

/// gamma-hat + delta-hat with gamma-hat = (P decay exponent) / 2.
MCReport scaling_relation(const FitReport& P, const FitReport& length_by_diameter);

struct CrossingCounts {
  bool lr = false, ud = false;
};

/// Arcs of the configuration inside the vertex box [0, n-1]^2, each joined
/// to the sides it leaves through (by the direction of the leaving edge).
CrossingCounts crossings(const LatticeWindow& w);

/// P(left-right crossing) of an n x n box; P(up-down) in `extra`.
MCReport estimate_crossing(Index n, std::size_t samples, std::uint64_t seed, double bias = 0.5,
                           BiasMode mode = BiasMode::Signs);

/// True when the 2n-periodic configuration has a cycle with nonzero winding
/// on the torus Z_2n x Z_2n.
bool torus_has_noncontractible(const std::vector<int>& xi, const std::vector<int>& eta);

/// Exact avoidance probability for n = 1 over all 16 sign assignments.
double torus_avoidance_n1();

/// P(noncontractible cycle) on Z_2n x Z_2n; the balance bound
/// P(X_0 = X_2n) P(Y_0 = Y_2n) in `extra`.
MCReport estimate_torus(Index n, std::size_t samples, std::uint64_t seed);

enum class SweepEstimator { Finiteness, Crossing };

struct SweepParams {
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  BiasMode mode = BiasMode::Signs;
  OriginOptions origin{};
  Index crossing_n = 64;
};

/// Re-runs an estimator over biases. In Walk mode the finiteness report also
/// carries the escape frequency per budget in `extra`.
std::vector<MCReport> biased_sweep(const std::vector<double>& biases, SweepEstimator estimator,
                                   const SweepParams& params);

}  // namespace cornerlab
