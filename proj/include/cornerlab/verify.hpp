// Copyright 2026 The cornerlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "cornerlab/lattice.hpp"

namespace cornerlab {

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::size_t windows = 100;
  Index window_half = 32;  ///< windows are [-half, half]^2
  std::size_t pairs = 1000;
  Index pair_h_max = 20;
  std::size_t trixor_fields = 20;
  Index trixor_size = 64;
};

struct VerifyReport {
  std::map<std::string, long> violations;  ///< all must be zero
  std::map<std::string, long> checked;
  double wall_seconds = 0.0;
  [[nodiscard]] long total() const;
};

/// Windows: census bijection, trichotomy, rectangle and alternation counters,
/// formula height against path height on every face, interior degree, and
/// exclusive crossings. Pairs: hikers against tracing. Trixor: the
/// even-neighbourhood constraint.
VerifyReport run_verify(const VerifyOptions& o);

/// The parts one by one, for callers that size them separately.
void verify_windows(const VerifyOptions& o, VerifyReport& r);
void verify_heights(const VerifyOptions& o, VerifyReport& r);
void verify_pairs(const VerifyOptions& o, VerifyReport& r);
void verify_trixor(const VerifyOptions& o, VerifyReport& r);

}  // namespace cornerlab
