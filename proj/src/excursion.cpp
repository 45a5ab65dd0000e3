// Copyright 2026 The cornerlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "cornerlab/excursion.hpp"

#include <algorithm>
#include <cmath>

#include "cornerlab/errors.hpp"

namespace cornerlab {

const char* to_string(Direction d) noexcept { return d == Direction::Up ? "up" : "down"; }

bool is_excursion(std::span<const Index> values, Direction d) {
  if (values.size() < 3 || values.front() != values.back()) return false;
  const Index base = values.front();
  for (std::size_t k = 1; k < values.size(); ++k)
    if (std::abs(values[k] - values[k - 1]) != 1) return false;
  for (std::size_t k = 1; k + 1 < values.size(); ++k) {
    if (d == Direction::Up && values[k] <= base) return false;
    if (d == Direction::Down && values[k] >= base) return false;
  }
  return true;
}

Excursion make_excursion(Direction d, Index offset, std::vector<Index> values) {
  if (!is_excursion(values, d)) throw std::invalid_argument("values do not form an excursion");
  Excursion e;
  e.direction = d;
  e.offset = offset;
  e.base = values.front();
  e.length = static_cast<Index>(values.size()) - 1;
  for (Index v : values) e.height = std::max(e.height, std::abs(v - e.base));
  e.steps = std::move(values);
  return e;
}

Excursion slice_excursion(const Walk& w, Index a, Index c, Direction d) {
  if (a < w.lo || c > w.hi || c <= a) throw std::out_of_range("excursion range outside walk");
  std::vector<Index> v;
  v.reserve(static_cast<std::size_t>(c - a + 1));
  for (Index n = a; n <= c; ++n) v.push_back(w[n]);
  return make_excursion(d, a, std::move(v));
}

std::vector<Excursion> detect_excursions(const Walk& w, Index lo, Index hi, Direction d, bool nested) {
  if (lo < w.lo || hi > w.hi) throw std::out_of_range("range outside walk");
  const Index dir = d == Direction::Up ? 1 : -1;
  std::vector<Excursion> out;
  Index covered_until = lo - 1;
  for (Index a = lo; a < hi; ++a) {
    if (w[a + 1] - w[a] != dir) continue;
    if (!nested && a < covered_until) continue;
    Index c = a + 1;
    while (c <= hi && w[c] != w[a]) ++c;
    if (c > hi) continue;
    out.push_back(slice_excursion(w, a, c, d));
    covered_until = std::max(covered_until, c);
  }
  return out;
}

bool balanced_bracketing(std::span<const int> signs, Index first) {
  if (signs.empty()) return false;
  std::vector<int> stack;
  int away = 0;
  for (std::size_t k = 0; k < signs.size(); ++k) {
    const int s = signs[k];
    const int step = is_even(first + static_cast<Index>(k)) ? -s : s;
    if (k == 0) away = step;
    if (step == away) {
      stack.push_back(s);
    } else {
      if (stack.empty() || stack.back() != s) return false;
      stack.pop_back();
      if (stack.empty() && k + 1 != signs.size()) return false;
    }
  }
  return stack.empty();
}

bool is_compatible(const Excursion& e1, const Excursion& e2) {
  if (e1.direction != e2.direction || e1.height != e2.height || e1.height < 1) return false;
  const bool even = is_even(e1.base + e2.base + e1.height);
  return e1.direction == Direction::Up ? even : !even;
}

Index pair_level(const Excursion& e1, const Excursion& e2) {
  const Index s = e1.base + e2.base;
  if (e1.direction == Direction::Up) return (s + e1.height) / 2;
  return (s - e1.height - 1) / 2;
}

CompatiblePair make_pair(Excursion e1, Excursion e2) {
  if (!is_compatible(e1, e2)) throw std::invalid_argument("excursions are not a compatible pair");
  const Index level = pair_level(e1, e2);
  return {std::move(e1), std::move(e2), level};
}

Rational birth_death_hitting(std::span<const Rational> up, std::span<const Rational> down, Index x, Index a, Index b) {
  if (a > b || x < a || x > b) throw std::invalid_argument("need a <= x <= b");
  if (a < 0 || static_cast<std::size_t>(b) >= up.size() || static_cast<std::size_t>(b) >= down.size())
    throw std::invalid_argument("chain does not cover [a, b]");
  if (x == a) return Rational(1);
  if (x == b) return Rational(0);
  // phi(a) = 0, phi(m+1) - phi(m) = prod_{k=a+1}^{m} down/up.
  Rational phi_x, phi_b, incr(1), acc(0);
  for (Index m = a; m < b; ++m) {
    if (m > a) {
      const auto k = static_cast<std::size_t>(m);
      if (up[k] <= 0 || down[k] <= 0) throw std::invalid_argument("chain must move both ways inside (a, b)");
      incr *= down[k] / up[k];
    }
    if (m == x) phi_x = acc;
    acc += incr;
  }
  phi_b = acc;
  return (phi_b - phi_x) / phi_b;
}

std::vector<Rational> there_up(Index h) {
  std::vector<Rational> p(static_cast<std::size_t>(h + 2), Rational(0));
  for (Index i = 1; i <= h + 1; ++i) p[static_cast<std::size_t>(i)] = Rational(i + 1, 2 * i);
  return p;
}

std::vector<Rational> there_down(Index h) {
  std::vector<Rational> p(static_cast<std::size_t>(h + 2), Rational(0));
  for (Index i = 1; i <= h + 1; ++i) p[static_cast<std::size_t>(i)] = Rational(i - 1, 2 * i);
  return p;
}

std::vector<Rational> back_up(Index h) {
  std::vector<Rational> p(static_cast<std::size_t>(h + 2), Rational(0));
  for (Index j = 1; j <= h; ++j) p[static_cast<std::size_t>(j)] = Rational(h - j, 2 * (h + 1 - j));
  return p;
}

std::vector<Rational> back_down(Index h) {
  std::vector<Rational> p(static_cast<std::size_t>(h + 2), Rational(0));
  for (Index j = 1; j <= h; ++j) p[static_cast<std::size_t>(j)] = Rational(h + 2 - j, 2 * (h + 1 - j));
  return p;
}

Rational hit_prob_there(Index j, Index i, Index h) {
  if (!(1 <= i && i <= j && j <= h)) throw std::invalid_argument("need 1 <= i <= j <= h");
  if (i == h) return Rational(1);
  return Rational((h - j) * i, (h - i) * j);
}

Rational hit_prob_back(Index i, Index j, Index h) {
  if (!(0 <= i && i <= j && j <= h)) throw std::invalid_argument("need 0 <= i <= j <= h");
  if (j == 0) return Rational(1);
  return Rational((h + 1 - j) * i, (h + 1 - i) * j);
}

Rational hit_prob_there_martingale(Index j, Index i, Index h) {
  if (!(1 <= i && i <= j && j <= h)) throw std::invalid_argument("need 1 <= i <= j <= h");
  const auto up = there_up(h), down = there_down(h);
  return birth_death_hitting(up, down, j, i, h);
}

Rational hit_prob_back_martingale(Index i, Index j, Index h) {
  if (!(0 <= i && i <= j && j <= h)) throw std::invalid_argument("need 0 <= i <= j <= h");
  if (i == j) return Rational(1);
  const auto up = back_up(h), down = back_down(h);
  return Rational(1) - birth_death_hitting(up, down, i, 0, j);
}

bool simulate_there_hit(Index j, Index i, Index h, KeyedRng& rng) {
  if (!(1 <= i && i <= j && j <= h)) throw std::invalid_argument("need 1 <= i <= j <= h");
  Index x = j;
  while (true) {
    if (x == i) return true;
    if (x == h) return false;
    const double p_up = static_cast<double>(x + 1) / static_cast<double>(2 * x);
    x += rng.uniform() < p_up ? 1 : -1;
  }
}

bool simulate_back_hit(Index i, Index j, Index h, KeyedRng& rng) {
  if (!(0 <= i && i <= j && j <= h)) throw std::invalid_argument("need 0 <= i <= j <= h");
  Index x = i;
  while (true) {
    if (x == j) return true;
    if (x == 0) return false;
    const double p_up = static_cast<double>(h - x) / static_cast<double>(2 * (h + 1 - x));
    x += rng.uniform() < p_up ? 1 : -1;
  }
}

void sample_excursion_values(Index h, KeyedRng& rng, std::vector<Index>& out) {
  if (h < 1) throw std::invalid_argument("excursion height must be at least 1");
  out.clear();
  out.push_back(0);
  Index x = 1;
  out.push_back(x);
  // There-leg: the transition law does not involve h.
  while (x < h) {
    const double p_up = static_cast<double>(x + 1) / static_cast<double>(2 * x);
    x += rng.uniform() < p_up ? 1 : -1;
    out.push_back(x);
  }
  const double hp1 = static_cast<double>(h + 1);
  while (x > 0) {
    const double p_up = (static_cast<double>(h) - static_cast<double>(x)) / (2.0 * (hp1 - static_cast<double>(x)));
    x += rng.uniform() < p_up ? 1 : -1;
    out.push_back(x);
  }
}

Excursion sample_excursion(Index h, Direction d, KeyedRng& rng, Index base, Index offset) {
  std::vector<Index> v;
  sample_excursion_values(h, rng, v);
  const Index s = d == Direction::Up ? 1 : -1;
  for (Index& x : v) x = base + s * x;
  Excursion e;
  e.direction = d;
  e.offset = offset;
  e.base = base;
  e.height = h;
  e.length = static_cast<Index>(v.size()) - 1;
  e.steps = std::move(v);
  return e;
}

std::vector<std::pair<Index, Index>> subexcursions(std::span<const Index> values, Index i, Index j) {
  std::vector<std::pair<Index, Index>> out;
  const auto n = static_cast<Index>(values.size());
  for (Index s = 0; s + 1 < n; ++s) {
    if (values[static_cast<std::size_t>(s)] != i || values[static_cast<std::size_t>(s + 1)] != i + 1) continue;
    Index e = s + 1, mx = i;
    while (e < n && values[static_cast<std::size_t>(e)] != i) mx = std::max(mx, values[static_cast<std::size_t>(e++)]);
    if (e < n && mx == j) out.emplace_back(s, e);
  }
  return out;
}

namespace {

double ks_distance(std::vector<Index> a, std::vector<Index> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t ia = 0, ib = 0;
  double d = 0.0;
  while (ia < a.size() && ib < b.size()) {
    const Index v = std::min(a[ia], b[ib]);
    while (ia < a.size() && a[ia] == v) ++ia;
    while (ib < b.size() && b[ib] == v) ++ib;
    d = std::max(d, std::abs(static_cast<double>(ia) / static_cast<double>(a.size()) -
                             static_cast<double>(ib) / static_cast<double>(b.size())));
  }
  return d;
}

Index first_argmax(std::span<const Index> v) {
  return static_cast<Index>(std::max_element(v.begin(), v.end()) - v.begin());
}

}  // namespace

SubexcursionReport subexcursion_distribution_check(Index h, Index i, Index j, Index q, std::size_t samples,
                                                   std::uint64_t seed, double alpha) {
  if (!(0 <= i && i < j && j <= h) || q < 1) throw std::invalid_argument("need 0 <= i < j <= h and q >= 1");
  SubexcursionReport r{h, i, j, q, samples, 0, 0.0, 0.0, 0.0, false};
  std::vector<Index> len_a, arg_a, len_b, arg_b, buf;
  for (std::size_t k = 0; k < samples; ++k) {
    KeyedRng rng(seed, 1, k);
    sample_excursion_values(h, rng, buf);
    const auto subs = subexcursions(buf, i, j);
    if (static_cast<Index>(subs.size()) < q) continue;
    const auto [s, e] = subs[static_cast<std::size_t>(q - 1)];
    len_a.push_back(e - s);
    arg_a.push_back(first_argmax(std::span<const Index>(buf).subspan(static_cast<std::size_t>(s),
                                                                     static_cast<std::size_t>(e - s + 1))));
  }
  r.found = len_a.size();
  if (r.found < 30) throw InsufficientData("too few samples contain the requested sub-excursion");
  for (std::size_t k = 0; k < r.found; ++k) {
    KeyedRng rng(seed, 2, k);
    sample_excursion_values(j - i, rng, buf);
    len_b.push_back(static_cast<Index>(buf.size()) - 1);
    arg_b.push_back(first_argmax(buf));
  }
  r.ks_length = ks_distance(len_a, len_b);
  r.ks_argmax = ks_distance(arg_a, arg_b);
  const double n = static_cast<double>(r.found);
  r.critical = std::sqrt(-0.5 * std::log(alpha / 2.0)) * std::sqrt(2.0 / n);
  r.pass = r.ks_length <= r.critical && r.ks_argmax <= r.critical;
  return r;
}

}  // namespace cornerlab
