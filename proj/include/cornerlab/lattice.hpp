// Copyright 2026 The cornerlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace cornerlab {

using Index = std::int64_t;

/// Which line family a sign sequence lives on. Xi signs sit on vertical
/// lines {n} x Z and drive the horizontal walk X; Eta signs sit on horizontal
/// lines and drive Y.
enum class Axis : std::uint8_t { Xi = 0, Eta = 1 };

/// How the bias parameter enters. Signs: each sign is +1 with probability
/// `bias`. Walk: each walk step is +1 with probability `bias` and the sign is
/// recovered from the step (biased random walks).
enum class BiasMode : std::uint8_t { Signs = 0, Walk = 1 };

struct Vertex {
  Index x = 0;
  Index y = 0;
  friend constexpr auto operator<=>(const Vertex&, const Vertex&) = default;
};

/// Dual face (n + 1/2, m + 1/2).
struct Face {
  Index n = 0;
  Index m = 0;
  [[nodiscard]] constexpr bool black() const noexcept { return ((n + m) & 1) == 0; }
  friend constexpr auto operator<=>(const Face&, const Face&) = default;
};

/// Unit lattice edge from `from` to `from + (0,1)` (vertical) or `from + (1,0)`.
struct Edge {
  Vertex from;
  bool vertical = false;
  [[nodiscard]] constexpr Vertex to() const noexcept {
    return vertical ? Vertex{from.x, from.y + 1} : Vertex{from.x + 1, from.y};
  }
  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

/// Normalized edge between two adjacent vertices.
Edge edge_between(Vertex a, Vertex b);

constexpr bool is_even(Index k) noexcept { return (k & 1) == 0; }

/// The sign of a single index, as a pure function of its key. Growing a
/// window therefore never changes signs already seen.
int sign_at(Axis axis, Index n, double bias, std::uint64_t seed, BiasMode mode = BiasMode::Signs);

struct SignSequence {
  Axis axis = Axis::Xi;
  Index lo = 0;
  Index hi = -1;
  double bias = 0.5;
  std::uint64_t seed = 0;
  BiasMode mode = BiasMode::Signs;
  std::vector<std::int8_t> values;

  [[nodiscard]] int at(Index n) const {
    if (n < lo || n > hi) throw std::out_of_range("sign index outside sequence range");
    return values[static_cast<std::size_t>(n - lo)];
  }
  [[nodiscard]] Index size() const noexcept { return hi - lo + 1; }
};

/// Generates signs on [lo, hi]. Throws std::invalid_argument on an empty range
/// or a bias outside [0, 1].
SignSequence gen_signs(Axis axis, Index lo, Index hi, double bias, std::uint64_t seed,
                       BiasMode mode = BiasMode::Signs);

/// Explicit sequence, mainly for tests and hand-built configurations.
SignSequence signs_from_values(Axis axis, Index lo, std::span<const int> values);

struct Walk {
  Index lo = 0;
  Index hi = -1;
  std::vector<Index> values;

  [[nodiscard]] Index at(Index n) const {
    if (n < lo || n > hi) throw std::out_of_range("walk index outside range");
    return values[static_cast<std::size_t>(n - lo)];
  }
  [[nodiscard]] Index operator[](Index n) const noexcept { return values[static_cast<std::size_t>(n - lo)]; }
};

/// X_0 = 0, X_n = sum_{j=1..n} (-1)^{j+1} sign(j), X_n = -sum_{j=n+1..0} for n < 0.
Walk walk_from_signs(const SignSequence& signs);

/// Everything needed to regenerate a finite window bit-for-bit.
struct WindowSpec {
  std::uint64_t seed = 0;
  double bias_xi = 0.5;
  double bias_eta = 0.5;
  Index x_lo = 0;
  Index x_hi = 0;
  Index y_lo = 0;
  Index y_hi = 0;
  BiasMode mode = BiasMode::Signs;

  /// Square [-half, half]^2 around the origin.
  static WindowSpec centered(std::uint64_t seed, Index half, double bias = 0.5,
                             BiasMode mode = BiasMode::Signs);
};

/// Finite piece of a configuration G(xi, eta). Vertices span
/// [x_lo, x_hi] x [y_lo, y_hi]; signs and walks are held on a slightly larger
/// index range that always contains 0 so heights are anchored at the origin.
/// Edges are never stored; presence is computed from the signs.
class LatticeWindow {
 public:
  explicit LatticeWindow(const WindowSpec& spec);
  LatticeWindow(SignSequence xi, SignSequence eta, Index x_lo, Index x_hi, Index y_lo, Index y_hi);

  [[nodiscard]] const WindowSpec& spec() const noexcept { return spec_; }
  [[nodiscard]] Index x_lo() const noexcept { return spec_.x_lo; }
  [[nodiscard]] Index x_hi() const noexcept { return spec_.x_hi; }
  [[nodiscard]] Index y_lo() const noexcept { return spec_.y_lo; }
  [[nodiscard]] Index y_hi() const noexcept { return spec_.y_hi; }

  [[nodiscard]] const SignSequence& xi() const noexcept { return xi_; }
  [[nodiscard]] const SignSequence& eta() const noexcept { return eta_; }
  [[nodiscard]] const Walk& X() const noexcept { return X_; }
  [[nodiscard]] const Walk& Y() const noexcept { return Y_; }

  [[nodiscard]] bool contains(Vertex v) const noexcept {
    return v.x >= spec_.x_lo && v.x <= spec_.x_hi && v.y >= spec_.y_lo && v.y <= spec_.y_hi;
  }
  /// A face is inside when all four of its corners are.
  [[nodiscard]] bool contains(Face f) const noexcept {
    return f.n >= spec_.x_lo && f.n < spec_.x_hi && f.m >= spec_.y_lo && f.m < spec_.y_hi;
  }
  [[nodiscard]] bool contains(const Edge& e) const noexcept { return contains(e.from) && contains(e.to()); }

  /// The vertical partner of v: y+1 when edge {(x,y),(x,y+1)} is kept.
  [[nodiscard]] Vertex vertical_neighbor(Vertex v) const {
    const bool up = is_even(v.y) == (xi_.at(v.x) > 0);
    return {v.x, up ? v.y + 1 : v.y - 1};
  }
  [[nodiscard]] Vertex horizontal_neighbor(Vertex v) const {
    const bool right = is_even(v.x) == (eta_.at(v.y) > 0);
    return {right ? v.x + 1 : v.x - 1, v.y};
  }

  /// Degree of v counting only edges whose other endpoint lies in the window.
  [[nodiscard]] int degree(Vertex v) const;

  [[nodiscard]] Index tilde(Face f) const { return X_.at(f.n) + Y_.at(f.m); }

 private:
  void build_walks();

  WindowSpec spec_;
  SignSequence xi_;
  SignSequence eta_;
  Walk X_;
  Walk Y_;
};

/// Present iff the edge belongs to G. Throws std::out_of_range outside the window.
bool edge_present(const LatticeWindow& w, const Edge& e);

/// ceil((X_n + Y_m) / 2); agrees with height_by_path on every face.
Index height(const LatticeWindow& w, Face f);

/// X_n + Y_m.
Index tilde_height(const LatticeWindow& w, Face f);

/// Height accumulated along a dual path of adjacent faces starting at (0,0):
/// +1 when crossing a contour from its black side, -1 from its white side.
Index height_along_path(const LatticeWindow& w, std::span<const Face> path);

/// Height via the monotone dual path (0,0) -> (n,0) -> (n,m).
Index height_by_path(const LatticeWindow& w, Face f);

/// Heights of every face of the window by breadth-first propagation of the
/// crossing rule from face (0,0). Row-major over faces, n fastest.
struct HeightField {
  Index n_lo = 0, n_hi = -1, m_lo = 0, m_hi = -1;
  std::vector<Index> values;
  [[nodiscard]] Index at(Face f) const {
    return values[static_cast<std::size_t>((f.m - m_lo) * (n_hi - n_lo + 1) + (f.n - n_lo))];
  }
};
HeightField height_field_by_path(const LatticeWindow& w);

}  // namespace cornerlab
