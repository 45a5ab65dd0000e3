// Copyright 2026 The cornerlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cornerlab/contours.hpp"
#include "cornerlab/montecarlo.hpp"
#include "cornerlab/series.hpp"
#include "cornerlab/variants.hpp"
#include "json.hpp"

namespace cornerlab {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
const char* version() noexcept;

/// Report skeleton: schema_version, artifact version, kind, seed.
Json envelope(const std::string& kind, std::uint64_t seed);

Json to_json(const Cycle& c);
Json to_json(const MCReport& r);
Json to_json(const FitReport& r);
Json to_json(const VariantReport& r);
Json to_json(const WindowSpec& s);
/// Sequence rows h, L, K, slope plus the dyadic exponent fit.
Json to_json(const ExactSeries& s, const ExponentFit& fit);

/// CSV, header first. Columns:
///   exact:   h,L,K,slope
///   fit:     x,y,se,count,used
///   report:  name,seed,samples,estimate,stderr,ci_lo,ci_hi,censored,violations
///   cycles:  index,length,level,direction,height,rect_a,rect_c,rect_b,rect_d
std::string exact_csv(const ExactSeries& s);
std::string fit_csv(const FitReport& r);
std::string report_csv(const std::vector<MCReport>& rs);
std::string cycles_csv(const std::vector<Cycle>& cs);

/// Row-wise run lengths, each row starting with a run of zeros (possibly
/// empty), rows separated by ';'.
std::string rle_encode(const std::vector<std::uint8_t>& bits, Index width);
std::vector<std::uint8_t> rle_decode(const std::string& text, Index width);

/// Closed cycles of the window, each once, in order of their first vertex.
std::vector<Cycle> closed_cycles(const LatticeWindow& w);

struct SvgOptions {
  Index scale = 8;                  ///< pixels per lattice unit
  Index margin = 8;
  long long max_pixels = 16'000'000;
};

/// Present edges as unit segments, closed cycles as closed polylines.
/// Throws RenderRefused above the pixel budget.
std::string render_window_svg(const LatticeWindow& w, const SvgOptions& o = {});
std::string render_cycle_svg(const Cycle& c, const SvgOptions& o = {});
/// Faces coloured by height, one colour per value, with a legend.
std::string render_height_svg(const LatticeWindow& w, const SvgOptions& o = {});

/// Fill colour used for height value h when heights span [lo, hi].
std::string height_colour(Index h, Index lo, Index hi);

}  // namespace cornerlab
