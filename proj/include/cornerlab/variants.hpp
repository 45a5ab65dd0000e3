// Copyright 2026 The cornerlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "cornerlab/lattice.hpp"
#include "cornerlab/montecarlo.hpp"

namespace cornerlab {

/// Bit of line `line` in family `family`.
using BitSource = std::function<std::uint8_t(std::size_t family, Index line)>;

/// Fair bits keyed by (seed, family, line), independent of the window.
BitSource seeded_bits(std::uint64_t seed);

/// 2-xor on the square lattice. The two sequences are indexed by doubled
/// edge-midpoint coordinates: vertical edge {(x,y),(x,y+1)} is
/// open iff xi[2x] + eta[2y+1] is odd, horizontal {(x,y),(x+1,y)} iff
/// xi[2x+1] + eta[2y] is.
struct TwoXorField {
  Index x_lo = 0, x_hi = 0, y_lo = 0, y_hi = 0;  ///< vertex box
  std::vector<std::uint8_t> xi, eta;             ///< doubled index minus 2*lo

  [[nodiscard]] std::uint8_t xi_at(Index k) const { return xi.at(static_cast<std::size_t>(k - 2 * x_lo)); }
  [[nodiscard]] std::uint8_t eta_at(Index k) const { return eta.at(static_cast<std::size_t>(k - 2 * y_lo)); }
  /// `e` must lie inside the box.
  [[nodiscard]] bool open(const Edge& e) const;
};

TwoXorField gen_2xor(Index x_lo, Index x_hi, Index y_lo, Index y_hi, const BitSource& bits);
TwoXorField gen_2xor(Index x_lo, Index x_hi, Index y_lo, Index y_hi, std::uint64_t seed);

/// Vertex states on a size x size patch of the triangular lattice in axial
/// coordinates (u, v), u, v in [0, size). Neighbours differ by (1,0), (0,1)
/// or (1,-1) up to sign.
struct TriField {
  Index size = 0;
  std::vector<std::uint8_t> state;

  [[nodiscard]] std::uint8_t at(Index u, Index v) const {
    return state[static_cast<std::size_t>(v * size + u)];
  }
  [[nodiscard]] bool inside(Index u, Index v) const noexcept { return u >= 0 && v >= 0 && u < size && v < size; }
};

inline constexpr Index kTriDirs[6][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, -1}, {-1, 1}};

/// Line index (a u + b v + c) / d.
struct LineFamily {
  Index a = 0, b = 0, c = 0, d = 1;
};

/// Families u, v, u + v: lines at angles pi/3, 0 and 2pi/3.
std::vector<LineFamily> trixor_families();
/// The trixor families plus vertical lines, indexed by 2u + v.
std::vector<LineFamily> fourxor_families();

/// State = xor of the family bits at the vertex's line indices. Throws
/// InvalidGeometry when some vertex has a non-integral line index.
TriField gen_kxor(const std::vector<LineFamily>& families, Index size, const BitSource& bits);
TriField gen_kxor(const std::vector<LineFamily>& families, Index size, std::uint64_t seed);
TriField gen_trixor(Index size, std::uint64_t seed);

/// Interior vertices with an odd number of 0-labelled neighbours.
Index even_neighborhood_violations(const TriField& f);

struct Cluster {
  Index size = 0;
  Index boundary = 0;  ///< lattice edges to the other state (bonds: closed edges)
  Index diameter = 0;  ///< largest extent along the line families
  bool touches_border = false;
};

struct ClusterStats {
  std::vector<Cluster> clusters;
  std::map<Index, Index> size_histogram, boundary_histogram;
  std::size_t origin_cluster = 0;  ///< cluster holding the centre vertex
};

/// Same-state site clusters by disjoint-set labelling.
ClusterStats variant_cluster_stats(const TriField& f);
/// Open-bond clusters of a 2-xor field.
ClusterStats variant_cluster_stats(const TwoXorField& f);

enum class VariantKind { TwoXor, Trixor, FourXor };

VariantKind variant_from_name(const std::string& name);
const char* to_string(VariantKind k) noexcept;

struct VariantReport {
  VariantKind kind = VariantKind::Trixor;
  Index size = 0;
  FitReport gamma;  ///< diameter tail of the centre cluster, censored at the border
  FitReport delta;  ///< boundary length against diameter, closed clusters
  double band_gamma_lo = 0, band_gamma_hi = 0, band_delta_lo = 0, band_delta_hi = 0;
  long constraint_violations = 0;
  double centre_touch_fraction = 0;
  std::map<Index, Index> size_histogram, boundary_histogram;
};

VariantReport estimate_variant(VariantKind kind, Index size, std::size_t samples, std::uint64_t seed);

}  // namespace cornerlab
