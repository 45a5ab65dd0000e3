// Copyright 2026 The cornerlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace cornerlab {

/// A traced vertex did not have degree two.
struct CorruptConfiguration : std::logic_error {
  using std::logic_error::logic_error;
};

/// Marginals of a traced cycle failed the excursion-pair rules, or two
/// same-level cycles broke the nesting trichotomy.
struct ViolatedBijection : std::logic_error {
  using std::logic_error::logic_error;
};

/// The hikers reached a state the rule does not allow.
struct AlgorithmViolation : std::logic_error {
  using std::logic_error::logic_error;
};

/// A growing search hit its configured cap.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InsufficientData : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidGeometry : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RenderRefused : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cornerlab
