// Copyright 2026 The cornerlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "cornerlab/series.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "cornerlab/errors.hpp"

namespace cornerlab {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

/// Neumaier compensated accumulator.
struct Compensated {
  long double sum = 0.0L;
  long double c = 0.0L;
  void add(long double x) {
    const long double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x))
      c += (sum - t) + x;
    else
      c += (x - t) + sum;
    sum = t;
  }
  [[nodiscard]] long double value() const { return sum + c; }
};

long double ld(Index v) { return static_cast<long double>(v); }

}  // namespace

Rational V(Index h, Index i) {
  require(h >= 1 && 0 <= i && i <= h, "V needs 0 <= i <= h");
  if (i == 0) return Rational(2);
  if (i == h) return Rational(2 * h, h + 1);
  return Rational(2 * i * (h - i), h) + Rational(2 * i * (h + 1 - i), h + 1);
}

Rational U(Index h, Index i) {
  require(h >= 1 && 0 <= i && i <= h - 1, "U needs 0 <= i <= h-1");
  return Rational(2 * (h - i) * (i + 1), h) + Rational(2 * (h - i + 1) * (i + 1), h + 1) - 2;
}

Rational N_there(Index h, Index i, Index j) {
  require(1 <= i && i < j && j <= h, "need 1 <= i < j <= h");
  return Rational(i * (h - i), h * (j - i) * (j + 1 - i));
}

Rational N_back(Index h, Index i, Index j) {
  require(1 <= i && i < j && j <= h, "need 1 <= i < j <= h");
  return Rational(i * (h + 1 - i), (h + 1) * (j - i) * (j + 1 - i));
}

Rational M_there(Index h, Index i, Index j) {
  require(1 <= i && i < j && j <= h, "need 1 <= i < j <= h");
  return Rational((h - j) * j, h * (j - i) * (j + 1 - i));
}

Rational M_back(Index h, Index i, Index j) {
  require(1 <= i && i < j && j <= h, "need 1 <= i < j <= h");
  return Rational((h + 1 - j) * j, (h + 1) * (j - i) * (j + 1 - i));
}

Rational N(Index h, Index i, Index j) {
  if (j == h) return 1 + N_back(h, i, j);
  return N_there(h, i, j) + N_back(h, i, j);
}

Rational M(Index h, Index i, Index j) {
  if (j == h) return M_back(h, i, j);
  return M_there(h, i, j) + M_back(h, i, j);
}

Rational T(Index h) {
  require(h >= 1, "T needs h >= 1");
  Rational s(0);
  for (Index i = 1; i <= h; ++i) s += V(h, i) * U(h, h - i);
  return 2 * s;
}

Rational Y(Index h, Index m) {
  require(1 <= m && m <= h - 1, "Y needs 1 <= m <= h-1");
  std::vector<Rational> v(static_cast<std::size_t>(h + 1));
  for (Index i = 0; i <= h; ++i) v[static_cast<std::size_t>(i)] = V(h, i);
  auto at = [&](Index i) -> const Rational& { return v[static_cast<std::size_t>(i)]; };
  Rational s(0);
  for (Index i = 1; i <= h - 1 - m; ++i) s += at(i) * at(h - m - i);
  for (Index i = 1; i <= h - m; ++i) s += at(i + m) * at(h + 1 - i);
  return s / Rational(4 * m * m * (m + 1) * (m + 1));
}

long double V_ld(Index h, Index i) {
  if (i == 0) return 2.0L;
  if (i == h) return 2.0L * ld(h) / ld(h + 1);
  return 2.0L * ld(i) * ld(h - i) / ld(h) + 2.0L * ld(i) * ld(h + 1 - i) / ld(h + 1);
}

long double U_ld(Index h, Index i) {
  return 2.0L * ld(h - i) * ld(i + 1) / ld(h) + 2.0L * ld(h - i + 1) * ld(i + 1) / ld(h + 1) - 2.0L;
}

long double T_ld(Index h) {
  Compensated s;
  for (Index i = 1; i <= h; ++i) s.add(V_ld(h, i) * U_ld(h, h - i));
  return 2.0L * s.value();
}

std::vector<Rational> L_exact(Index h_max) {
  require(h_max >= 1, "h_max must be at least 1");
  std::vector<Rational> L(static_cast<std::size_t>(h_max + 1));
  L[1] = 4;
  for (Index h = 2; h <= h_max; ++h) {
    std::vector<Rational> v(static_cast<std::size_t>(h + 1));
    for (Index i = 0; i <= h; ++i) v[static_cast<std::size_t>(i)] = V(h, i);
    auto at = [&](Index i) -> const Rational& { return v[static_cast<std::size_t>(i)]; };
    Rational t(0), sub(0);
    for (Index i = 1; i <= h; ++i) t += at(i) * U(h, h - i);
    t *= 2;
    for (Index m = 1; m <= h - 1; ++m) {
      Rational s(0);
      for (Index i = 1; i <= h - 1 - m; ++i) s += at(i) * at(h - m - i);
      for (Index i = 1; i <= h - m; ++i) s += at(i + m) * at(h + 1 - i);
      sub += s / Rational(4 * m * m * (m + 1) * (m + 1)) * L[static_cast<std::size_t>(m)];
    }
    L[static_cast<std::size_t>(h)] = t - sub;
  }
  return L;
}

namespace {

long double N_ld(Index h, Index i, Index j) {
  const long double den = ld(j - i) * ld(j + 1 - i);
  const long double back = ld(i) * ld(h + 1 - i) / (ld(h + 1) * den);
  if (j == h) return 1.0L + back;
  return ld(i) * ld(h - i) / (ld(h) * den) + back;
}

long double M_ld(Index h, Index i, Index j) {
  const long double den = ld(j - i) * ld(j + 1 - i);
  const long double back = ld(h + 1 - j) * ld(j) / (ld(h + 1) * den);
  if (j == h) return back;
  return ld(h - j) * ld(j) / (ld(h) * den) + back;
}

}  // namespace

std::vector<long double> L_float_serial(Index h_max) {
  require(h_max >= 1, "h_max must be at least 1");
  std::vector<long double> L(static_cast<std::size_t>(h_max + 1), 0.0L);
  L[1] = 4.0L;
  for (Index h = 2; h <= h_max; ++h) {
    Compensated sub;
    for (Index i = 1; i <= h - 1; ++i)
      for (Index j = i + 1; j <= h - 1; ++j)
        sub.add(N_ld(h, i, j) * N_ld(h, h - j, h - i) * L[static_cast<std::size_t>(j - i)]);
    for (Index i = 1; i <= h - 1; ++i)
      for (Index j = i + 1; j <= h; ++j)
        sub.add(M_ld(h, i, j) * M_ld(h, h + 1 - j, h + 1 - i) * L[static_cast<std::size_t>(j - i)]);
    L[static_cast<std::size_t>(h)] = T_ld(h) - sub.value();
  }
  return L;
}

std::vector<long double> L_float_parallel(Index h_max, std::vector<long double>* err) {
  require(h_max >= 1, "h_max must be at least 1");
  const auto size = static_cast<std::size_t>(h_max + 1);
  std::vector<long double> L(size, 0.0L), E(size, 0.0L), v(size), terms(size), coeff(size);
  constexpr long double eps = std::numeric_limits<long double>::epsilon();
  L[1] = 4.0L;
  for (Index h = 2; h <= h_max; ++h) {
    for (Index i = 0; i <= h; ++i) v[static_cast<std::size_t>(i)] = V_ld(h, i);
    const long double* vp = v.data();
#pragma omp parallel for schedule(static)
    for (Index m = 1; m <= h - 1; ++m) {
      Compensated s;
      for (Index i = 1; i <= h - 1 - m; ++i) s.add(vp[i] * vp[h - m - i]);
      for (Index i = 1; i <= h - m; ++i) s.add(vp[i + m] * vp[h + 1 - i]);
      const long double mm = ld(m) * ld(m + 1);
      coeff[static_cast<std::size_t>(m)] = s.value() / (4.0L * mm * mm);
      terms[static_cast<std::size_t>(m)] = coeff[static_cast<std::size_t>(m)] * L[static_cast<std::size_t>(m)];
    }
    Compensated sub;
    long double mag = 0.0L, inherited = 0.0L;
    for (Index m = 1; m <= h - 1; ++m) {
      const auto k = static_cast<std::size_t>(m);
      sub.add(terms[k]);
      mag += std::fabs(terms[k]);
      inherited += coeff[k] * E[k];
    }
    const long double t = T_ld(h);
    L[static_cast<std::size_t>(h)] = t - sub.value();
    E[static_cast<std::size_t>(h)] = 8.0L * eps * (std::fabs(t) + mag) + inherited;
  }
  if (err != nullptr) *err = std::move(E);
  return L;
}

ExactSeries L_sequence(Index h_max, Index exact_cutoff) {
  require(h_max >= 1, "h_max must be at least 1");
  ExactSeries s;
  s.h_max = h_max;
  s.exact_cutoff = std::min(exact_cutoff, h_max);
  s.L = L_float_parallel(h_max, &s.error);
  s.T.assign(static_cast<std::size_t>(h_max + 1), 0.0L);
  for (Index h = 1; h <= h_max; ++h) s.T[static_cast<std::size_t>(h)] = T_ld(h);
  if (s.exact_cutoff >= 1) {
    s.L_exact = L_exact(s.exact_cutoff);
    for (Index h = 1; h <= s.exact_cutoff; ++h) {
      const auto k = static_cast<std::size_t>(h);
      const long double exact = to_long_double(s.L_exact[k]);
      s.max_exact_float_rel = std::max(s.max_exact_float_rel, std::fabs(s.L[k] / exact - 1.0L));
      s.L[k] = exact;
      s.error[k] = 0.0L;
    }
  }
  return s;
}

std::vector<double> local_slopes(const std::vector<long double>& values) {
  const auto n = static_cast<Index>(values.size());
  std::vector<double> out(values.size(), std::numeric_limits<double>::quiet_NaN());
  for (Index h = 2; h < n; ++h) {
    const auto k = static_cast<std::size_t>(h);
    if (h + 1 < n)
      out[k] = static_cast<double>((std::log(values[k + 1]) - std::log(values[k - 1])) /
                                   (std::log(ld(h + 1)) - std::log(ld(h - 1))));
    else
      out[k] = static_cast<double>((std::log(values[k]) - std::log(values[k - 1])) /
                                   (std::log(ld(h)) - std::log(ld(h - 1))));
  }
  return out;
}

double local_slope(const ExactSeries& s, Index h) {
  if (h < 2 || h > s.h_max) throw std::out_of_range("slope needs 2 <= h <= h_max");
  const auto k = static_cast<std::size_t>(h);
  if (h < s.h_max)
    return static_cast<double>((std::log(s.L[k + 1]) - std::log(s.L[k - 1])) /
                               (std::log(ld(h + 1)) - std::log(ld(h - 1))));
  return static_cast<double>((std::log(s.L[k]) - std::log(s.L[k - 1])) / (std::log(ld(h)) - std::log(ld(h - 1))));
}

double two_delta() { return (1.0 + std::sqrt(17.0)) / 2.0; }

ExponentFit fit_slopes(std::vector<Index> h, std::vector<double> slope) {
  if (h.size() < 3 || h.size() != slope.size()) throw InsufficientData("exponent fit needs at least three points");
  ExponentFit f;
  f.h = std::move(h);
  f.slope = std::move(slope);
  f.target = two_delta();
  f.correction_exponent = (std::sqrt(17.0) - 3.0) / 2.0;
  const auto n = static_cast<Eigen::Index>(f.h.size());
  Eigen::MatrixXd A(n, 3);
  Eigen::VectorXd y(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double x = static_cast<double>(f.h[static_cast<std::size_t>(k)]);
    const double p = std::pow(x, -f.correction_exponent);
    A(k, 0) = 1.0;
    A(k, 1) = p * std::log(x);
    A(k, 2) = p;
    y(k) = f.slope[static_cast<std::size_t>(k)];
  }
  const Eigen::VectorXd c = A.colPivHouseholderQr().solve(y);
  f.extrapolated = c(0);
  f.a = c(1);
  f.b = c(2);
  f.monotone = true;
  for (std::size_t k = 1; k < f.slope.size(); ++k) {
    const bool same_side = (f.slope[k] - f.slope[k - 1]) * (f.slope[1] - f.slope[0]) > 0;
    const bool closer = std::abs(f.slope[k] - f.target) <= std::abs(f.slope[k - 1] - f.target);
    f.monotone = f.monotone && same_side && closer;
  }
  return f;
}

ExponentFit fit_exponent(const ExactSeries& s, Index h_lo, Index h_hi) {
  std::vector<Index> hs;
  std::vector<double> slopes;
  Index h = 1;
  while (h < std::max<Index>(h_lo, 2)) h *= 2;
  for (; h <= std::min(h_hi, s.h_max); h *= 2) {
    hs.push_back(h);
    slopes.push_back(local_slope(s, h));
  }
  return fit_slopes(std::move(hs), std::move(slopes));
}

double indicial_poly(double mu) {
  double f = 1.0;
  for (int k = 0; k < 6; ++k) f *= mu - k;
  return f + 8.0 * mu * (mu - 1.0) - 32.0 * mu + 32.0;
}

std::array<double, 6> indicial_roots() {
  // Monic coefficients c_0..c_5 of the expanded polynomial.
  std::array<double, 7> c{};
  c[0] = 1.0;
  for (int k = 0; k < 6; ++k) {
    std::array<double, 7> next{};
    for (int d = 0; d < 6; ++d) {
      next[static_cast<std::size_t>(d + 1)] += c[static_cast<std::size_t>(d)];
      next[static_cast<std::size_t>(d)] -= k * c[static_cast<std::size_t>(d)];
    }
    c = next;
  }
  c[2] += 8.0;
  c[1] -= 40.0;
  c[0] += 32.0;
  Eigen::Matrix<double, 6, 6> companion = Eigen::Matrix<double, 6, 6>::Zero();
  for (int k = 1; k < 6; ++k) companion(k, k - 1) = 1.0;
  for (int k = 0; k < 6; ++k) companion(k, 5) = -c[static_cast<std::size_t>(k)];
  const Eigen::EigenSolver<Eigen::Matrix<double, 6, 6>> solver(companion, false);
  std::array<double, 6> roots{};
  for (int k = 0; k < 6; ++k) roots[static_cast<std::size_t>(k)] = solver.eigenvalues()(k).real();
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace cornerlab
