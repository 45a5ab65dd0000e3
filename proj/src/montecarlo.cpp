// Copyright 2026 The cornerlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "cornerlab/montecarlo.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <stdexcept>

#include "cornerlab/builders.hpp"
#include "cornerlab/errors.hpp"
#include "cornerlab/excursion.hpp"
#include "cornerlab/series.hpp"

namespace cornerlab {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Mean {
  double sum = 0.0, sum2 = 0.0;
  std::size_t n = 0;
  void add(double x) {
    sum += x;
    sum2 += x * x;
    ++n;
  }
  [[nodiscard]] double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
  [[nodiscard]] double se() const {
    if (n < 2) return 0.0;
    const double m = mean();
    const double var = (sum2 - static_cast<double>(n) * m * m) / static_cast<double>(n - 1);
    return std::sqrt(std::max(var, 0.0) / static_cast<double>(n));
  }
};

void set_mean(MCReport& r, const Mean& m) {
  r.estimate = m.mean();
  r.stderr_ = m.se();
  r.ci_lo = r.estimate - 1.96 * r.stderr_;
  r.ci_hi = r.estimate + 1.96 * r.stderr_;
}

void set_fraction(MCReport& r, std::size_t hits, std::size_t n) {
  const double p = n ? static_cast<double>(hits) / static_cast<double>(n) : 0.0;
  r.estimate = p;
  r.stderr_ = n ? std::sqrt(p * (1 - p) / static_cast<double>(n)) : 0.0;
  r.ci_lo = std::max(0.0, p - 1.96 * r.stderr_);
  r.ci_hi = std::min(1.0, p + 1.96 * r.stderr_);
}

FitPoint fraction_point(double x, std::size_t hits, std::size_t n) {
  const double p = static_cast<double>(hits) / static_cast<double>(n);
  return {x, p, std::sqrt(p * (1 - p) / static_cast<double>(n)), n, false};
}

std::string key(const char* prefix, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s%g", prefix, x);
  return buf;
}

// Excursion pair of height h with the cycle on level 0.
CompatiblePair sample_pair(Index h, std::uint64_t seed, std::uint64_t job, std::uint64_t k) {
  KeyedRng rx(seed, job, 2 * k), ry(seed, job, 2 * k + 1);
  return make_pair(sample_excursion(h, Direction::Up, rx), sample_excursion(h, Direction::Up, ry, -h));
}

}  // namespace

long MCReport::violation_total() const {
  long t = 0;
  for (const auto& [k, v] : violations) t += v;
  return t;
}

long FitReport::violation_total() const {
  long t = 0;
  for (const auto& [k, v] : violations) t += v;
  return t;
}

void fit_power_law(FitReport& r, double x_lo, double x_hi, bool decay) {
  double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t k = 0;
  std::vector<std::pair<double, double>> used;
  for (FitPoint& p : r.points) {
    p.used = false;
    if (p.x < x_lo || p.x > x_hi || p.y <= 0 || p.x <= 0) continue;
    const double rel = std::max(p.se / p.y, 1e-9);
    if (rel >= r.max_rel_se) continue;
    p.used = true;
    const double w = 1.0 / (rel * rel), lx = std::log(p.x), ly = std::log(p.y);
    sw += w;
    sx += w * lx;
    sy += w * ly;
    sxx += w * lx * lx;
    sxy += w * lx * ly;
    used.emplace_back(lx, ly);
    ++k;
  }
  if (k < 2) throw InsufficientData("fewer than two usable fit points");
  const double det = sw * sxx - sx * sx;
  const double slope = (sw * sxy - sx * sy) / det;
  const double icept = (sy - slope * sx) / sw;
  double var = sw / det;
  if (k > 2) {
    double chi2 = 0;
    std::size_t i = 0;
    for (const FitPoint& p : r.points) {
      if (!p.used) continue;
      const double rel = std::max(p.se / p.y, 1e-9);
      const double d = (used[i].second - icept - slope * used[i].first) / rel;
      chi2 += d * d;
      ++i;
    }
    var *= std::max(1.0, chi2 / static_cast<double>(k - 2));
  }
  r.exponent = decay ? -slope : slope;
  r.exponent_se = std::sqrt(var);
  r.ci_lo = r.exponent - 1.96 * r.exponent_se;
  r.ci_hi = r.exponent + 1.96 * r.exponent_se;
  r.intercept = icept;
}

std::uint64_t sample_seed(std::uint64_t master, std::uint64_t job, std::uint64_t index) {
  return hash_words(master, job, index);
}

std::vector<OriginSample> sample_origin_cycles(std::size_t count, std::uint64_t seed, double bias, BiasMode mode,
                                               const OriginOptions& opts) {
  std::vector<OriginSample> out(count);
  const auto n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic, 4)
  for (long k = 0; k < n; ++k) {
    OriginSample& s = out[static_cast<std::size_t>(k)];
    try {
      auto r = cycle_of_origin(sample_seed(seed, 11, static_cast<std::uint64_t>(k)), bias, mode, opts);
      s.closed = true;
      s.length = r.cycle.length();
      s.diameter = r.cycle.diameter();
      s.height = r.cycle.height;
      s.window = r.window_size;
    } catch (const BudgetExceeded&) {
      s.window = opts.max_size;
    } catch (const ViolatedBijection&) {
      s.closed = true;
      s.violations = 1;
    }
  }
  return out;
}

FitReport estimate_P(const std::vector<Index>& h_values, const std::vector<OriginSample>& s, std::uint64_t seed,
                     double fit_lo) {
  const auto t0 = Clock::now();
  FitReport r;
  r.name = "P_height_tail";
  r.seed = seed;
  r.samples = s.size();
  r.target = kTwoGamma;
  r.target_label = "2 gamma = (5 - sqrt 17) / 2";
  for (const auto& x : s) {
    r.censored += !x.closed;
    if (x.violations) r.violations["bijection"] += x.violations;
  }
  r.violations.try_emplace("bijection", 0);
  double prev = 2.0;
  bool monotone = true;
  for (Index h : h_values) {
    std::size_t above = 0;
    for (const auto& x : s) above += x.closed && x.height > h;
    r.points.push_back(fraction_point(static_cast<double>(h), above + r.censored, s.size()));
    r.extra[key("lower_h", static_cast<double>(h))] = static_cast<double>(above) / static_cast<double>(s.size());
    monotone = monotone && r.points.back().y <= prev;
    prev = r.points.back().y;
  }
  r.extra["monotone"] = monotone ? 1 : 0;
  fit_power_law(r, fit_lo, std::numeric_limits<double>::infinity(), true);
  r.wall_seconds = seconds_since(t0);
  return r;
}

FitReport estimate_P(const std::vector<Index>& h_values, std::size_t samples, std::uint64_t seed,
                     const OriginOptions& opts, double fit_lo) {
  const auto t0 = Clock::now();
  auto r = estimate_P(h_values, sample_origin_cycles(samples, seed, 0.5, BiasMode::Signs, opts), seed, fit_lo);
  r.params["max_window"] = static_cast<double>(opts.max_size);
  r.wall_seconds = seconds_since(t0);
  return r;
}

FitReport estimate_diam_tail(const std::vector<Index>& n_values, const std::vector<OriginSample>& s,
                             std::uint64_t seed) {
  const auto t0 = Clock::now();
  FitReport r;
  r.name = "diameter_tail";
  r.seed = seed;
  r.samples = s.size();
  r.target = kGamma;
  r.target_label = "gamma = (5 - sqrt 17) / 4";
  Index half = std::numeric_limits<Index>::max();
  for (const auto& x : s)
    if (!x.closed) {
      ++r.censored;
      half = std::min(half, x.window / 2);
    }
  double min_scaled = std::numeric_limits<double>::infinity(), prev_scaled = 0;
  bool nondecreasing = true;
  for (Index n : n_values) {
    if (r.censored && n >= half) r.warnings.push_back(key("censored samples undetermined at n=", static_cast<double>(n)));
    std::size_t above = 0;
    Mean trunc;
    for (const auto& x : s) {
      above += x.closed && x.diameter > n;
      trunc.add(static_cast<double>(x.closed ? std::min(x.diameter, n) : n));
    }
    r.points.push_back(fraction_point(static_cast<double>(n), above + r.censored, s.size()));
    const double scaled = r.points.back().y * std::sqrt(static_cast<double>(n));
    r.extra[key("sqrt_n_P_n", static_cast<double>(n))] = scaled;
    r.extra[key("trunc_mean_", static_cast<double>(n))] = trunc.mean();
    if (n >= 4) {
      min_scaled = std::min(min_scaled, scaled);
      nondecreasing = nondecreasing && scaled >= prev_scaled;
      prev_scaled = scaled;
    }
  }
  r.extra["sqrt_n_P_n_min"] = min_scaled;
  r.extra["sqrt_n_P_n_nondecreasing"] = nondecreasing ? 1 : 0;
  fit_power_law(r, 4, std::numeric_limits<double>::infinity(), true);
  r.wall_seconds = seconds_since(t0);
  return r;
}

FitReport estimate_diam_tail(const std::vector<Index>& n_values, std::size_t samples, std::uint64_t seed,
                             const OriginOptions& opts) {
  const auto t0 = Clock::now();
  auto r = estimate_diam_tail(n_values, sample_origin_cycles(samples, seed, 0.5, BiasMode::Signs, opts), seed);
  r.params["max_window"] = static_cast<double>(opts.max_size);
  r.wall_seconds = seconds_since(t0);
  return r;
}

MCReport estimate_finiteness(const std::vector<OriginSample>& s, std::uint64_t seed, double bias) {
  const auto t0 = Clock::now();
  MCReport r;
  r.name = "origin_cycle_closes";
  r.seed = seed;
  r.samples = s.size();
  r.params["bias"] = bias;
  std::size_t closed = 0;
  Index budget = 0;
  long viol = 0;
  for (const auto& x : s) {
    closed += x.closed;
    budget = std::max(budget, x.window);
    viol += x.violations;
  }
  r.censored = s.size() - closed;
  r.violations["bijection"] = viol;
  set_fraction(r, closed, s.size());
  r.params["max_window"] = static_cast<double>(budget);
  // Escape predicted by the closed-sample diameter tail at half the budget.
  std::vector<Index> ns;
  for (Index n = 64; n < budget / 2; n *= 2) ns.push_back(n);
  try {
    auto tail = estimate_diam_tail(ns, s, seed);
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& p : tail.points) lo = std::min(lo, p.x);
    r.extra["tail_exponent"] = tail.exponent;
    r.extra["tail_predicted_escape"] =
        std::exp(tail.intercept) * std::pow(static_cast<double>(budget / 2), -tail.exponent);
  } catch (const InsufficientData&) {
    r.extra["tail_exponent"] = std::nan("");
  }
  r.extra["escaped_fraction"] = 1.0 - r.estimate;
  r.wall_seconds = seconds_since(t0);
  return r;
}

MCReport estimate_L_mc(Index h, std::size_t samples, std::uint64_t seed) {
  if (h < 1) throw std::invalid_argument("h must be positive");
  const auto t0 = Clock::now();
  MCReport r;
  r.name = "L_mc";
  r.seed = seed;
  r.samples = samples;
  r.params["h"] = static_cast<double>(h);
  std::vector<double> len(samples);
  const auto n = static_cast<long>(samples);
#pragma omp parallel for schedule(static)
  for (long k = 0; k < n; ++k)
    len[static_cast<std::size_t>(k)] = static_cast<double>(pair_cycle_length(sample_pair(h, seed, 21, static_cast<std::uint64_t>(k))));
  Mean m;
  for (double x : len) m.add(x);
  set_mean(r, m);
  const double exact = to_double(L_exact(h)[static_cast<std::size_t>(h)]);
  r.extra["exact"] = exact;
  r.extra["z"] = r.stderr_ > 0 ? (r.estimate - exact) / r.stderr_ : (r.estimate == exact ? 0.0 : INFINITY);
  r.wall_seconds = seconds_since(t0);
  return r;
}

MCReport estimate_T_mc(Index h, std::size_t samples, std::uint64_t seed) {
  if (h < 1) throw std::invalid_argument("h must be positive");
  const auto t0 = Clock::now();
  MCReport r;
  r.name = "T_mc";
  r.seed = seed;
  r.samples = samples;
  r.params["h"] = static_cast<double>(h);
  std::vector<double> tot(samples), hor(samples);
  const auto n = static_cast<long>(samples);
#pragma omp parallel for schedule(static)
  for (long k = 0; k < n; ++k) {
    const auto e = pair_level_edges(sample_pair(h, seed, 22, static_cast<std::uint64_t>(k)));
    tot[static_cast<std::size_t>(k)] = static_cast<double>(e.horizontal + e.vertical);
    hor[static_cast<std::size_t>(k)] = static_cast<double>(e.horizontal);
  }
  Mean m, mh;
  for (std::size_t k = 0; k < samples; ++k) {
    m.add(tot[k]);
    mh.add(hor[k]);
  }
  set_mean(r, m);
  const double exact = to_double(T(h));
  r.extra["exact"] = exact;
  r.extra["z"] = r.stderr_ > 0 ? (r.estimate - exact) / r.stderr_ : 0.0;
  r.extra["horizontal_mean"] = mh.mean();
  r.wall_seconds = seconds_since(t0);
  return r;
}

FitReport estimate_length_by_diameter(Index h_max, std::size_t samples_per_h, std::uint64_t seed, double n_lo,
                                      double n_hi) {
  const auto t0 = Clock::now();
  FitReport r;
  r.name = "length_by_diameter";
  r.seed = seed;
  r.samples = static_cast<std::size_t>(h_max) * samples_per_h;
  r.params["h_max"] = static_cast<double>(h_max);
  r.params["samples_per_h"] = static_cast<double>(samples_per_h);
  r.target = kDelta;
  r.target_label = "delta = (sqrt 17 + 1) / 4";

  struct Row {
    Index h, diam, len;
  };
  std::vector<Row> rows(r.samples);
  const auto n = static_cast<long>(r.samples);
#pragma omp parallel for schedule(dynamic, 16)
  for (long k = 0; k < n; ++k) {
    const Index h = 1 + k / static_cast<long>(samples_per_h);
    const auto p = sample_pair(h, seed, 23, static_cast<std::uint64_t>(k));
    rows[static_cast<std::size_t>(k)] = {h, std::max(p.first.length, p.second.length) - 1, pair_cycle_length(p)};
  }

  std::map<int, Mean> bins, bin_x;
  std::map<Index, Mean> by_h;
  long not_four = 0;
  std::array<std::size_t, 3> outside{};
  std::size_t conc_n = 0;
  const std::array<double, 3> Ks{2, 4, 8};
  for (const Row& row : rows) {
    const int b = static_cast<int>(std::floor(std::log2(static_cast<double>(row.diam))));
    bins[b].add(static_cast<double>(row.len));
    bin_x[b].add(static_cast<double>(row.diam));
    by_h[row.h].add(static_cast<double>(row.len));
    if (row.diam == 1 && row.len != 4) ++not_four;
    if (row.h >= 4) {
      ++conc_n;
      const double h2 = static_cast<double>(row.h * row.h), d = static_cast<double>(row.diam);
      for (std::size_t i = 0; i < Ks.size(); ++i) outside[i] += d < h2 / Ks[i] || d > Ks[i] * h2;
    }
  }
  r.violations["diameter1_not_length4"] = not_four;
  for (auto& [b, m] : bins) {
    if (m.n < 2) {
      r.warnings.push_back(key("sparse bin 2^", b) + " excluded");
      continue;
    }
    r.points.push_back({bin_x[b].mean(), m.mean(), m.se(), m.n, false});
  }
  for (std::size_t i = 0; i < Ks.size(); ++i)
    r.extra[key("outside_h2_K", Ks[i])] = conc_n ? static_cast<double>(outside[i]) / static_cast<double>(conc_n) : 0;
  for (Index h = 2; h <= h_max; h *= 2) {
    const Mean& m = by_h[h];
    r.extra[key("second_moment_ratio_h", static_cast<double>(h))] =
        m.n ? (m.sum2 / static_cast<double>(m.n)) / (m.mean() * m.mean()) : 0.0;
  }
  fit_power_law(r, n_lo, n_hi, false);
  r.wall_seconds = seconds_since(t0);
  return r;
}

FitReport estimate_level0_total(const std::vector<Index>& N_values, std::size_t samples, std::uint64_t seed) {
  const auto t0 = Clock::now();
  FitReport r;
  r.name = "level0_total";
  r.seed = seed;
  r.samples = samples * N_values.size();
  r.target = 1.5;
  r.target_label = "3/2";
  long bij = 0, tri = 0, rect = 0, alt = 0, deg = 0;
  for (Index N : N_values) {
    std::vector<double> edges(samples);
    std::vector<std::array<long, 5>> viol(samples);
    const auto n = static_cast<long>(samples);
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < n; ++k) {
      const Index half = N / 2;
      LatticeWindow w(WindowSpec{sample_seed(seed, 31 + static_cast<std::uint64_t>(N), static_cast<std::uint64_t>(k)),
                                 0.5, 0.5, -half, N - 1 - half, -half, N - 1 - half, BiasMode::Signs});
      edges[static_cast<std::size_t>(k)] = static_cast<double>(level_edge_count(w, 0));
      const Census c = level_set_census(w, 0);
      long d = 0;
      for (Index x = w.x_lo() + 1; x < w.x_hi(); ++x)
        for (Index y = w.y_lo() + 1; y < w.y_hi(); ++y) d += w.degree({x, y}) != 2;
      viol[static_cast<std::size_t>(k)] = {c.bijection_violations, c.trichotomy_violations, c.rectangle_violations,
                                           c.alternation_violations, d};
    }
    Mean m;
    for (std::size_t k = 0; k < samples; ++k) {
      m.add(edges[k]);
      bij += viol[k][0];
      tri += viol[k][1];
      rect += viol[k][2];
      alt += viol[k][3];
      deg += viol[k][4];
    }
    r.points.push_back({static_cast<double>(N), m.mean(), m.se(), samples, false});
  }
  r.violations = {{"bijection", bij}, {"trichotomy", tri}, {"rectangle", rect}, {"alternation", alt}, {"degree", deg}};
  fit_power_law(r, 0, std::numeric_limits<double>::infinity(), false);
  r.wall_seconds = seconds_since(t0);
  return r;
}

MCReport scaling_relation(const FitReport& P, const FitReport& lbd) {
  MCReport r;
  r.name = "gamma_plus_delta";
  r.seed = P.seed;
  r.samples = P.samples + lbd.samples;
  r.estimate = P.exponent / 2 + lbd.exponent;
  r.stderr_ = std::hypot(P.exponent_se / 2, lbd.exponent_se);
  r.ci_lo = r.estimate - 1.96 * r.stderr_;
  r.ci_hi = r.estimate + 1.96 * r.stderr_;
  r.extra["gamma_hat"] = P.exponent / 2;
  r.extra["delta_hat"] = lbd.exponent;
  r.extra["target"] = 1.5;
  return r;
}

CrossingCounts crossings(const LatticeWindow& w) {
  enum Side { Left, Right, Bottom, Top, None };
  auto exit_side = [&](Vertex from, Vertex to) {
    if (w.contains(to)) return None;
    if (to.x < from.x) return Left;
    if (to.x > from.x) return Right;
    return to.y < from.y ? Bottom : Top;
  };
  CrossingCounts out;
  std::set<Vertex> done;
  auto side_walk = [&](Vertex v) {
    for (Vertex first : {w.vertical_neighbor(v), w.horizontal_neighbor(v)}) {
      const Side s1 = exit_side(v, first);
      if (s1 == None || done.count(v)) continue;
      // Walk away from the exit until leaving the box again.
      Vertex prev = first, cur = v;
      Side s2 = None;
      while (true) {
        const Vertex a = w.vertical_neighbor(cur), b = w.horizontal_neighbor(cur);
        const Vertex next = a == prev ? b : a;
        s2 = exit_side(cur, next);
        if (s2 != None) break;
        prev = cur;
        cur = next;
      }
      done.insert(v);
      done.insert(cur);
      if ((s1 == Left && s2 == Right) || (s1 == Right && s2 == Left)) out.lr = true;
      if ((s1 == Bottom && s2 == Top) || (s1 == Top && s2 == Bottom)) out.ud = true;
    }
  };
  for (Index x = w.x_lo(); x <= w.x_hi(); ++x) {
    side_walk({x, w.y_lo()});
    side_walk({x, w.y_hi()});
  }
  for (Index y = w.y_lo(); y <= w.y_hi(); ++y) {
    side_walk({w.x_lo(), y});
    side_walk({w.x_hi(), y});
  }
  return out;
}

MCReport estimate_crossing(Index n, std::size_t samples, std::uint64_t seed, double bias, BiasMode mode) {
  if (n < 2) throw std::invalid_argument("box side must be at least 2");
  const auto t0 = Clock::now();
  MCReport r;
  r.name = "crossing_lr";
  r.seed = seed;
  r.samples = samples;
  r.params["n"] = static_cast<double>(n);
  r.params["bias"] = bias;
  std::vector<CrossingCounts> c(samples);
  const auto m = static_cast<long>(samples);
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < m; ++k) {
    LatticeWindow w(WindowSpec{sample_seed(seed, 41, static_cast<std::uint64_t>(k)), bias, bias, 0, n - 1, 0, n - 1, mode});
    c[static_cast<std::size_t>(k)] = crossings(w);
  }
  std::size_t lr = 0, ud = 0;
  long both = 0;
  for (const auto& x : c) {
    lr += x.lr;
    ud += x.ud;
    both += x.lr && x.ud;
  }
  set_fraction(r, lr, samples);
  r.violations["both_crossings"] = both;
  const double pu = static_cast<double>(ud) / static_cast<double>(samples);
  r.extra["ud_estimate"] = pu;
  r.extra["ud_stderr"] = std::sqrt(pu * (1 - pu) / static_cast<double>(samples));
  r.extra["lr_minus_ud_z"] =
      (r.estimate - pu) / std::max(std::hypot(r.stderr_, r.extra["ud_stderr"]), 1e-12);
  r.wall_seconds = seconds_since(t0);
  return r;
}

bool torus_has_noncontractible(const std::vector<int>& xi, const std::vector<int>& eta) {
  const auto L = static_cast<Index>(xi.size());
  if (L < 2 || L % 2 || eta.size() != xi.size()) throw std::invalid_argument("torus side must be even and equal");
  auto mod = [&](Index v) { return ((v % L) + L) % L; };
  auto vert = [&](Index x, Index y) { return is_even(y) == (xi[static_cast<std::size_t>(x)] > 0) ? 1 : -1; };
  auto horiz = [&](Index x, Index y) { return is_even(x) == (eta[static_cast<std::size_t>(y)] > 0) ? 1 : -1; };
  std::vector<char> seen(static_cast<std::size_t>(L * L), 0);
  for (Index sx = 0; sx < L; ++sx)
    for (Index sy = 0; sy < L; ++sy) {
      if (seen[static_cast<std::size_t>(sy * L + sx)]) continue;
      // Alternate horizontal and vertical steps, tracking the lift.
      Index x = sx, y = sy, dx = 0, dy = 0;
      bool horizontal = true;
      do {
        seen[static_cast<std::size_t>(y * L + x)] = 1;
        if (horizontal) {
          const int s = horiz(x, y);
          dx += s;
          x = mod(x + s);
        } else {
          const int s = vert(x, y);
          dy += s;
          y = mod(y + s);
        }
        horizontal = !horizontal;
      } while (!(x == sx && y == sy && horizontal));
      if (dx != 0 || dy != 0) return true;
    }
  return false;
}

double torus_avoidance_n1() {
  int avoid = 0;
  for (int bits = 0; bits < 16; ++bits) {
    std::vector<int> xi{bits & 1 ? 1 : -1, bits & 2 ? 1 : -1}, eta{bits & 4 ? 1 : -1, bits & 8 ? 1 : -1};
    avoid += !torus_has_noncontractible(xi, eta);
  }
  return avoid / 16.0;
}

MCReport estimate_torus(Index n, std::size_t samples, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  const auto t0 = Clock::now();
  MCReport r;
  r.name = "torus_noncontractible";
  r.seed = seed;
  r.samples = samples;
  r.params["n"] = static_cast<double>(n);
  std::vector<char> hit(samples), bal(samples);
  const auto m = static_cast<long>(samples);
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < m; ++k) {
    const auto s = sample_seed(seed, 51, static_cast<std::uint64_t>(k));
    std::vector<int> xi, eta;
    Index bx = 0, by = 0;
    for (Index j = 1; j <= 2 * n; ++j) {
      xi.push_back(sign_at(Axis::Xi, j, 0.5, s, BiasMode::Signs));
      eta.push_back(sign_at(Axis::Eta, j, 0.5, s, BiasMode::Signs));
      bx += is_even(j) ? -xi.back() : xi.back();
      by += is_even(j) ? -eta.back() : eta.back();
    }
    // Column index x holds xi(x) for x in 0..2n-1; xi(2n) plays xi(0).
    std::rotate(xi.rbegin(), xi.rbegin() + 1, xi.rend());
    std::rotate(eta.rbegin(), eta.rbegin() + 1, eta.rend());
    hit[static_cast<std::size_t>(k)] = torus_has_noncontractible(xi, eta);
    bal[static_cast<std::size_t>(k)] = bx == 0 && by == 0;
  }
  std::size_t h = 0, b = 0;
  long avoid_unbalanced = 0;
  for (std::size_t k = 0; k < samples; ++k) {
    h += hit[k];
    b += bal[k];
    avoid_unbalanced += !hit[k] && !bal[k];
  }
  set_fraction(r, h, samples);
  // Avoidance needs both walks balanced over one period.
  r.violations["avoid_without_balance"] = avoid_unbalanced;
  const double one = std::exp(std::lgamma(2.0 * n + 1) - 2 * std::lgamma(n + 1.0) - 2.0 * n * std::log(2.0));
  r.extra["balance_bound"] = one * one;
  r.extra["balance_empirical"] = static_cast<double>(b) / static_cast<double>(samples);
  r.extra["avoidance"] = 1.0 - r.estimate;
  if (n == 1) r.extra["avoidance_exact"] = torus_avoidance_n1();
  r.wall_seconds = seconds_since(t0);
  return r;
}

std::vector<MCReport> biased_sweep(const std::vector<double>& biases, SweepEstimator estimator,
                                   const SweepParams& params) {
  std::vector<MCReport> out;
  for (double p : biases) {
    if (estimator == SweepEstimator::Crossing) {
      out.push_back(estimate_crossing(params.crossing_n, params.samples, params.seed, p, params.mode));
      continue;
    }
    const auto t0 = Clock::now();
    auto s = sample_origin_cycles(params.samples, params.seed, p, params.mode, params.origin);
    MCReport r = estimate_finiteness(s, params.seed, p);
    r.params["mode"] = params.mode == BiasMode::Walk ? 2 : 1;
    r.params["bias_offset"] = p - 0.5;
    for (Index b = params.origin.start_size; b <= params.origin.max_size; b *= 2) {
      std::size_t esc = 0;
      for (const auto& x : s) esc += !x.closed || x.window > b;
      r.extra[key("escape_at_", static_cast<double>(b))] = static_cast<double>(esc) / static_cast<double>(s.size());
    }
    r.wall_seconds = seconds_since(t0);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace cornerlab
