// Copyright 2026 The cornerlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cornerlab/excursion.hpp"
#include "cornerlab/lattice.hpp"

namespace cornerlab {

/// Enclosing rectangle [a+1, c] x [b+1, d] in vertex coordinates; the
/// marginals are X[a, c] and Y[b, d].
struct Rect {
  Index a = 0, c = 0, b = 0, d = 0;
  [[nodiscard]] bool contains(Vertex v) const noexcept { return v.x > a && v.x <= c && v.y > b && v.y <= d; }
  [[nodiscard]] bool on_boundary(Vertex v) const noexcept {
    return contains(v) && (v.x == a + 1 || v.x == c || v.y == b + 1 || v.y == d);
  }
  friend constexpr bool operator==(const Rect&, const Rect&) = default;
};

enum class CycleDirection : std::uint8_t { Up, Down, Unknown };
const char* to_string(CycleDirection d) noexcept;

struct Cycle {
  /// Closed simple lattice cycle, counterclockwise, smallest vertex first;
  /// the first vertex is not repeated at the end.
  std::vector<Vertex> vertices;
  Rect rect;
  CycleDirection direction = CycleDirection::Unknown;
  /// Height of the black faces along the cycle.
  Index level = 0;
  /// X_a + Y_b + h (up) or X_a + Y_b - h - 1 (down): twice the level.
  Index tilde_level = 0;
  /// Height of both marginal excursions, 0 until computed.
  Index height = 0;
  std::vector<Index> passage_columns;  ///< face columns n
  std::vector<Index> passage_rows;     ///< face rows m

  [[nodiscard]] Index length() const noexcept { return static_cast<Index>(vertices.size()); }
  [[nodiscard]] Index diameter() const noexcept { return std::max(rect.c - rect.a - 1, rect.d - rect.b - 1); }
};

/// CCW orientation, smallest vertex first.
void normalize(std::vector<Vertex>& cycle);

/// Bounding rectangle of a vertex loop.
Rect bounding_rect(const std::vector<Vertex>& cycle);

/// Set of undirected edges, for comparing cycles edge by edge.
std::vector<Edge> edge_set(const std::vector<Vertex>& cycle);

/// Follows the component of `start`. Returns nullopt when the component
/// leaves the window before closing. Throws CorruptConfiguration when the
/// neighbour relation is not symmetric.
std::optional<Cycle> trace_cycle(const LatticeWindow& w, Vertex start);

/// Same walk, returning the visited vertices whether or not it closed.
std::vector<Vertex> trace_path(const LatticeWindow& w, Vertex start, bool& closed);

struct OriginOptions {
  Index start_size = 32;
  Index max_size = Index{1} << 14;  ///< cap on the window side length
};

struct OriginResult {
  Cycle cycle;
  Index window_size = 0;
};

/// Grows a centered window by doubling until the cycle through (0,0) closes.
/// Throws BudgetExceeded once the side would pass `max_size`.
OriginResult cycle_of_origin(std::uint64_t seed, double bias = 0.5, BiasMode mode = BiasMode::Signs,
                             const OriginOptions& opts = {});

/// Marginal excursions X[a, c] and Y[b, d] in the cycle's direction.
/// Throws ViolatedBijection if they are not a compatible pair of equal height.
CompatiblePair marginals(const LatticeWindow& w, const Cycle& cycle);

struct Classification {
  CycleDirection direction = CycleDirection::Unknown;
  Index level = 0;
};

/// Up when the black faces lie outside. `flip_colors` swaps the chessboard.
Classification classify(const LatticeWindow& w, const Cycle& cycle, bool flip_colors = false);

/// Face columns and rows of the rectangle interior wholly inside the cycle.
void passages(Cycle& cycle);

/// Ray-casting membership of a face in the region bounded by the cycle.
bool face_inside(const Cycle& cycle, Face f);
/// Membership of a lattice vertex not on the cycle.
bool vertex_inside(const Cycle& cycle, Vertex v);

/// All faces enclosed by the cycle, row by row.
std::vector<Face> interior_faces(const Cycle& cycle);

/// Classification, marginals, level identity and passages in one call.
/// Throws ViolatedBijection on any disagreement.
void complete(const LatticeWindow& w, Cycle& cycle);

struct Census {
  Index level = 0;
  std::vector<Cycle> cycles;
  std::vector<long> parent;  ///< index of the innermost enclosing cycle, or -1
  Index total_length = 0;
  Index escaped = 0;         ///< components on this level touching the window edge
  Index trichotomy_violations = 0;
  Index rectangle_violations = 0;
  Index bijection_violations = 0;
  Index alternation_violations = 0;
};

/// Every closed cycle on `level` in the window, with nesting checks.
Census level_set_census(const LatticeWindow& w, Index level);

/// Censuses for every level that occurs in the window.
std::vector<Census> full_census(const LatticeWindow& w);

/// Edges of the window separating faces of tilde height 2l and 2l+1.
Index level_edge_count(const LatticeWindow& w, Index level);

}  // namespace cornerlab
