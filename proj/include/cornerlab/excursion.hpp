// Copyright 2026 The cornerlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "cornerlab/lattice.hpp"
#include "cornerlab/rational.hpp"
#include "cornerlab/rng.hpp"

namespace cornerlab {

enum class Direction : std::uint8_t { Up = 0, Down = 1 };

const char* to_string(Direction d) noexcept;

/// Walk segment X[offset, offset + length] returning to its base, strictly
/// above (Up) or below (Down) the base in between.
struct Excursion {
  Direction direction = Direction::Up;
  Index offset = 0;
  Index base = 0;
  std::vector<Index> steps;  ///< length + 1 values, steps.front() == steps.back() == base
  Index height = 0;
  Index length = 0;

  [[nodiscard]] Index end() const noexcept { return offset + length; }
  /// Value relative to the base, sign-normalized so an up and a down
  /// excursion of the same shape give the same profile.
  [[nodiscard]] Index profile(Index k) const noexcept {
    const Index v = steps[static_cast<std::size_t>(k)] - base;
    return direction == Direction::Up ? v : -v;
  }
};

bool is_excursion(std::span<const Index> values, Direction d);

/// Validating constructor. Throws std::invalid_argument if `values` is not
/// an excursion in direction `d`.
Excursion make_excursion(Direction d, Index offset, std::vector<Index> values);

Excursion slice_excursion(const Walk& w, Index a, Index c, Direction d);

/// Every excursion of direction `d` lying in [lo, hi]: one per step leaving a
/// base in direction `d` whose return happens inside the range. With
/// `nested == false` only excursions not contained in another are kept.
std::vector<Excursion> detect_excursions(const Walk& w, Index lo, Index hi, Direction d, bool nested = false);

/// Signs xi(first), xi(first+1), ... to brackets: '+' gives a parenthesis and
/// '-' a square bracket, opening when its step leaves the base side and
/// closing otherwise. True iff the result is one well-formed group, which
/// happens iff the walk over these signs is an excursion.
bool balanced_bracketing(std::span<const int> signs, Index first);

struct CompatiblePair {
  Excursion first;   ///< marginal of X
  Excursion second;  ///< marginal of Y
  /// Common height of the black faces along the cycle.
  Index level = 0;
};

/// Same direction, same height, X_a + Y_b + h even (Up) or odd (Down).
bool is_compatible(const Excursion& e1, const Excursion& e2);

/// Throws std::invalid_argument when the pair is not compatible.
CompatiblePair make_pair(Excursion e1, Excursion e2);

/// Level H of the cycle a compatible pair determines.
Index pair_level(const Excursion& e1, const Excursion& e2);

/// P_x(T_a < T_b) for a birth-death chain with up[k] = P(k -> k+1) and
/// down[k] = P(k -> k-1), via the martingale phi(x) = sum_{m=a}^{x-1}
/// prod_{k=a+1}^{m} down[k]/up[k]. States are indices into the vectors.
Rational birth_death_hitting(std::span<const Rational> up, std::span<const Rational> down, Index x, Index a, Index b);

/// Transition probabilities of the there-leg (towards h, independent of h)
/// and the back-leg of a height-h conditioned excursion, on states 0..h+1.
std::vector<Rational> there_up(Index h);
std::vector<Rational> there_down(Index h);
std::vector<Rational> back_up(Index h);
std::vector<Rational> back_down(Index h);

/// P_j^there(T_i < T_h) = (h-j)i / ((h-i)j), 1 <= i <= j <= h.
Rational hit_prob_there(Index j, Index i, Index h);
/// P_i^back(T_j < T_0) = (h+1-j)i / ((h+1-i)j), 0 <= i <= j <= h.
Rational hit_prob_back(Index i, Index j, Index h);

/// The same two quantities from birth_death_hitting.
Rational hit_prob_there_martingale(Index j, Index i, Index h);
Rational hit_prob_back_martingale(Index i, Index j, Index h);

/// One run of each leg: did the chain reach the first target first?
bool simulate_there_hit(Index j, Index i, Index h, KeyedRng& rng);
bool simulate_back_hit(Index i, Index j, Index h, KeyedRng& rng);

/// Simple random walk from 1 conditioned to reach h before 0, then the
/// back-leg down to 0. Down excursions are the negated up sample.
Excursion sample_excursion(Index h, Direction d, KeyedRng& rng, Index base = 0, Index offset = 0);

/// Values only, base 0, upward. The hot path of the samplers.
void sample_excursion_values(Index h, KeyedRng& rng, std::vector<Index>& out);

struct SubexcursionReport {
  Index h = 0, i = 0, j = 0, q = 0;
  std::size_t samples = 0;
  std::size_t found = 0;
  double ks_length = 0.0;
  double ks_argmax = 0.0;
  double critical = 0.0;
  bool pass = false;
};

/// Compares the q-th sub-excursion i -> j -> i of sampled excursions of height
/// h with direct samples of height j - i, by two-sample Kolmogorov-Smirnov
/// distances of the length and of the first-maximum position.
/// Throws InsufficientData when fewer than 30 samples contain one.
SubexcursionReport subexcursion_distribution_check(Index h, Index i, Index j, Index q, std::size_t samples,
                                                   std::uint64_t seed, double alpha = 1e-3);

/// Start offsets (relative) of the sub-up-excursions i -> j -> i in an upward
/// profile, in order.
std::vector<std::pair<Index, Index>> subexcursions(std::span<const Index> values, Index i, Index j);

}  // namespace cornerlab
