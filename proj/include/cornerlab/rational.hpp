// Copyright 2026 The cornerlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <string>

namespace cornerlab {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

inline Rational ratio(long long p, long long q) { return Rational(p, q); }

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) {
  std::string s = boost::multiprecision::numerator(r).str();
  if (boost::multiprecision::denominator(r) != 1) s += "/" + boost::multiprecision::denominator(r).str();
  return s;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline long double to_long_double(const Rational& r) {
  return boost::multiprecision::mpf_float_50(r).convert_to<long double>();
}

}  // namespace cornerlab
