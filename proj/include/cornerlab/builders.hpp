// Copyright 2026 The cornerlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <utility>
#include <vector>

#include "cornerlab/contours.hpp"
#include "cornerlab/excursion.hpp"

namespace cornerlab {

/// Cycle of a compatible pair as the outer boundary of the component of
/// {X_n + Y_m > 0} (up; sign-normalized for down) containing the cross of
/// marginal maxima, in the lattice coordinates of the pair's offsets.
/// Throws std::invalid_argument when the pair is not compatible.
Cycle cycle_from_pair_trace(const CompatiblePair& pair);

/// One hike on a mountain pair. `xavier` and `yvonne` are the heights along
/// each hiker's own index, base first; both start at the same height, end at
/// the same greater height and stay strictly between in the interior.
/// Returns the index pairs visited from (0,0) to (size-1, size-1).
/// Throws std::invalid_argument on a malformed mountain and
/// AlgorithmViolation when the graph's degree structure or the rule fails.
std::vector<std::pair<Index, Index>> cautious_hike(std::span<const Index> xavier, std::span<const Index> yvonne);

struct HikerPiece {
  bool ascending = true;  ///< in the direction the cycle is walked
  std::vector<Face> path;  ///< zero faces in walking order
  [[nodiscard]] Index steps() const noexcept { return static_cast<Index>(path.size()) - 1; }
};

struct HikersResult {
  Cycle cycle;
  std::vector<HikerPiece> pieces;
  Index steps = 0;  ///< T, hike steps around the whole cycle
  Index marks = 0;  ///< step-marked edges with multiplicity, 2T
};

/// The corner mountain pair at the first maxima, then one mountain pair per
/// stretch between height extremes, walked once around the rectangle.
HikersResult hike_pair(const CompatiblePair& pair);

Cycle cycle_from_pair_hikers(const CompatiblePair& pair);

/// Length of the pair's cycle by walking its 0|1 edges from the bottom of
/// the first passage column; cost proportional to the length.
Index pair_cycle_length(const CompatiblePair& pair);

struct LevelEdges {
  Index horizontal = 0;  ///< T'
  Index vertical = 0;    ///< T''
};

/// Edges inside the rectangle separating faces on the cycle's level from the
/// adjacent level (0 and 1 after normalization), counted directly.
LevelEdges pair_level_edges(const CompatiblePair& pair);

}  // namespace cornerlab
