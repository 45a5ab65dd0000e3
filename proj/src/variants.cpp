// Copyright 2026 The cornerlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "cornerlab/variants.hpp"

#include <algorithm>
#include <boost/pending/disjoint_sets.hpp>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "cornerlab/errors.hpp"
#include "cornerlab/rng.hpp"

namespace cornerlab {

BitSource seeded_bits(std::uint64_t seed) {
  return [seed](std::size_t family, Index line) {
    return static_cast<std::uint8_t>(hash_words(seed, 0x7a0 + family, static_cast<std::uint64_t>(line)) >> 63);
  };
}

bool TwoXorField::open(const Edge& e) const {
  const Vertex v = e.from;
  if (e.vertical) return (xi_at(2 * v.x) ^ eta_at(2 * v.y + 1)) != 0;
  return (xi_at(2 * v.x + 1) ^ eta_at(2 * v.y)) != 0;
}

TwoXorField gen_2xor(Index x_lo, Index x_hi, Index y_lo, Index y_hi, const BitSource& bits) {
  if (x_hi < x_lo || y_hi < y_lo) throw std::invalid_argument("empty window");
  TwoXorField f{x_lo, x_hi, y_lo, y_hi, {}, {}};
  for (Index k = 2 * x_lo; k <= 2 * x_hi + 1; ++k) f.xi.push_back(bits(0, k));
  for (Index k = 2 * y_lo; k <= 2 * y_hi + 1; ++k) f.eta.push_back(bits(1, k));
  return f;
}

TwoXorField gen_2xor(Index x_lo, Index x_hi, Index y_lo, Index y_hi, std::uint64_t seed) {
  return gen_2xor(x_lo, x_hi, y_lo, y_hi, seeded_bits(seed));
}

std::vector<LineFamily> trixor_families() { return {{1, 0, 0, 1}, {0, 1, 0, 1}, {1, 1, 0, 1}}; }

std::vector<LineFamily> fourxor_families() {
  auto f = trixor_families();
  f.push_back({2, 1, 0, 1});
  return f;
}

TriField gen_kxor(const std::vector<LineFamily>& families, Index size, const BitSource& bits) {
  if (size < 1) throw std::invalid_argument("size must be positive");
  for (const auto& fam : families)
    if (fam.d == 0) throw InvalidGeometry("line family with zero divisor");
  TriField f{size, std::vector<std::uint8_t>(static_cast<std::size_t>(size * size))};
  for (Index v = 0; v < size; ++v)
    for (Index u = 0; u < size; ++u) {
      std::uint8_t s = 0;
      for (std::size_t i = 0; i < families.size(); ++i) {
        const LineFamily& fam = families[i];
        const Index num = fam.a * u + fam.b * v + fam.c;
        if (num % fam.d != 0)
          throw InvalidGeometry("vertex (" + std::to_string(u) + ", " + std::to_string(v) +
                                ") has a non-integral index in family " + std::to_string(i));
        s ^= bits(i, num / fam.d);
      }
      f.state[static_cast<std::size_t>(v * size + u)] = s;
    }
  return f;
}

TriField gen_kxor(const std::vector<LineFamily>& families, Index size, std::uint64_t seed) {
  return gen_kxor(families, size, seeded_bits(seed));
}

TriField gen_trixor(Index size, std::uint64_t seed) { return gen_kxor(trixor_families(), size, seed); }

Index even_neighborhood_violations(const TriField& f) {
  Index bad = 0;
  for (Index v = 1; v + 1 < f.size; ++v)
    for (Index u = 1; u + 1 < f.size; ++u) {
      int zeros = 0;
      for (const auto& d : kTriDirs) zeros += f.at(u + d[0], v + d[1]) == 0;
      bad += zeros % 2;
    }
  return bad;
}

namespace {

using DisjointSets = boost::disjoint_sets_with_storage<>;

struct Extent {
  Index lo[3] = {std::numeric_limits<Index>::max(), std::numeric_limits<Index>::max(),
                 std::numeric_limits<Index>::max()};
  Index hi[3] = {std::numeric_limits<Index>::min(), std::numeric_limits<Index>::min(),
                 std::numeric_limits<Index>::min()};
  void add(int k, Index x) {
    lo[k] = std::min(lo[k], x);
    hi[k] = std::max(hi[k], x);
  }
  [[nodiscard]] Index diameter(int axes) const {
    Index d = 0;
    for (int k = 0; k < axes; ++k) d = std::max(d, hi[k] - lo[k]);
    return d;
  }
};

// Gathers clusters from a labelling; `coords(i, ext)` widens the extent of
// site i along each axis.
template <class Coords, class Boundary, class Border>
ClusterStats collect(std::size_t n, DisjointSets& ds, int axes, Coords coords, Boundary boundary, Border border,
                     std::size_t centre) {
  ClusterStats out;
  std::vector<std::size_t> id(n, std::numeric_limits<std::size_t>::max());
  std::vector<Extent> ext;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = ds.find_set(i);
    if (id[r] == std::numeric_limits<std::size_t>::max()) {
      id[r] = out.clusters.size();
      out.clusters.emplace_back();
      ext.emplace_back();
    }
    Cluster& c = out.clusters[id[r]];
    ++c.size;
    c.boundary += boundary(i);
    c.touches_border = c.touches_border || border(i);
    coords(i, ext[id[r]]);
  }
  for (std::size_t k = 0; k < out.clusters.size(); ++k) {
    Cluster& c = out.clusters[k];
    c.diameter = ext[k].diameter(axes);
    ++out.size_histogram[c.size];
    ++out.boundary_histogram[c.boundary];
  }
  out.origin_cluster = id[ds.find_set(centre)];
  return out;
}

}  // namespace

ClusterStats variant_cluster_stats(const TriField& f) {
  const Index s = f.size;
  const auto n = static_cast<std::size_t>(s * s);
  DisjointSets ds(n);
  for (std::size_t i = 0; i < n; ++i) ds.make_set(i);
  auto idx = [s](Index u, Index v) { return static_cast<std::size_t>(v * s + u); };
  for (Index v = 0; v < s; ++v)
    for (Index u = 0; u < s; ++u)
      for (int k = 0; k < 6; k += 2) {
        const Index a = u + kTriDirs[k][0], b = v + kTriDirs[k][1];
        if (f.inside(a, b) && f.at(a, b) == f.at(u, v)) ds.union_set(idx(u, v), idx(a, b));
      }
  auto coords = [s](std::size_t i, Extent& e) {
    const auto u = static_cast<Index>(i) % s, v = static_cast<Index>(i) / s;
    e.add(0, u);
    e.add(1, v);
    e.add(2, u + v);
  };
  auto boundary = [&](std::size_t i) {
    const auto u = static_cast<Index>(i) % s, v = static_cast<Index>(i) / s;
    Index b = 0;
    for (const auto& d : kTriDirs)
      b += f.inside(u + d[0], v + d[1]) && f.at(u + d[0], v + d[1]) != f.at(u, v);
    return b;
  };
  auto border = [s](std::size_t i) {
    const auto u = static_cast<Index>(i) % s, v = static_cast<Index>(i) / s;
    return u == 0 || v == 0 || u == s - 1 || v == s - 1;
  };
  return collect(n, ds, 3, coords, boundary, border, idx(s / 2, s / 2));
}

ClusterStats variant_cluster_stats(const TwoXorField& f) {
  const Index w = f.x_hi - f.x_lo + 1, h = f.y_hi - f.y_lo + 1;
  const auto n = static_cast<std::size_t>(w * h);
  DisjointSets ds(n);
  for (std::size_t i = 0; i < n; ++i) ds.make_set(i);
  auto idx = [&](Index x, Index y) { return static_cast<std::size_t>((y - f.y_lo) * w + (x - f.x_lo)); };
  auto vert = [&](std::size_t i) { return Vertex{f.x_lo + static_cast<Index>(i) % w, f.y_lo + static_cast<Index>(i) / w}; };
  for (Index y = f.y_lo; y <= f.y_hi; ++y)
    for (Index x = f.x_lo; x <= f.x_hi; ++x) {
      if (x < f.x_hi && f.open(Edge{{x, y}, false})) ds.union_set(idx(x, y), idx(x + 1, y));
      if (y < f.y_hi && f.open(Edge{{x, y}, true})) ds.union_set(idx(x, y), idx(x, y + 1));
    }
  auto coords = [&](std::size_t i, Extent& e) {
    const Vertex v = vert(i);
    e.add(0, v.x);
    e.add(1, v.y);
  };
  // Closed edges at the site, each seen from both ends.
  auto boundary = [&](std::size_t i) {
    const Vertex v = vert(i);
    Index b = 0;
    if (v.x < f.x_hi) b += !f.open(Edge{v, false});
    if (v.y < f.y_hi) b += !f.open(Edge{v, true});
    if (v.x > f.x_lo) b += !f.open(Edge{{v.x - 1, v.y}, false});
    if (v.y > f.y_lo) b += !f.open(Edge{{v.x, v.y - 1}, true});
    return b;
  };
  auto border = [&](std::size_t i) {
    const Vertex v = vert(i);
    return v.x == f.x_lo || v.y == f.y_lo || v.x == f.x_hi || v.y == f.y_hi;
  };
  return collect(n, ds, 2, coords, boundary, border, idx(f.x_lo + w / 2, f.y_lo + h / 2));
}

VariantKind variant_from_name(const std::string& name) {
  if (name == "2xor" || name == "2-xor") return VariantKind::TwoXor;
  if (name == "trixor") return VariantKind::Trixor;
  if (name == "4xor" || name == "4-xor") return VariantKind::FourXor;
  throw std::invalid_argument("unknown variant: " + name);
}

const char* to_string(VariantKind k) noexcept {
  switch (k) {
    case VariantKind::TwoXor: return "2xor";
    case VariantKind::Trixor: return "trixor";
    case VariantKind::FourXor: return "4xor";
  }
  return "?";
}

VariantReport estimate_variant(VariantKind kind, Index size, std::size_t samples, std::uint64_t seed) {
  if (size < 16) throw std::invalid_argument("variant size must be at least 16");
  const auto t0 = std::chrono::steady_clock::now();
  struct One {
    Index centre = -1;  // -1 when the centre cluster touches the border
    std::vector<std::pair<Index, Index>> closed;
    std::map<Index, Index> sizes, bounds;
    Index violations = 0;
  };
  std::vector<One> res(samples);
  const auto m = static_cast<long>(samples);
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < m; ++k) {
    const auto s = sample_seed(seed, 61 + static_cast<std::uint64_t>(kind), static_cast<std::uint64_t>(k));
    ClusterStats st;
    One& o = res[static_cast<std::size_t>(k)];
    if (kind == VariantKind::TwoXor) {
      st = variant_cluster_stats(gen_2xor(0, size - 1, 0, size - 1, s));
    } else {
      const TriField f = gen_kxor(kind == VariantKind::Trixor ? trixor_families() : fourxor_families(), size, s);
      if (kind == VariantKind::Trixor) o.violations = even_neighborhood_violations(f);
      st = variant_cluster_stats(f);
    }
    const Cluster& c = st.clusters[st.origin_cluster];
    o.centre = c.touches_border ? -1 : c.diameter;
    for (const auto& cl : st.clusters)
      if (!cl.touches_border) o.closed.emplace_back(cl.diameter, cl.boundary);
    o.sizes = std::move(st.size_histogram);
    o.bounds = std::move(st.boundary_histogram);
  }

  VariantReport r;
  r.kind = kind;
  r.size = size;
  if (kind == VariantKind::Trixor) {
    r.band_gamma_lo = 0.16, r.band_gamma_hi = 0.2, r.band_delta_lo = 1.3, r.band_delta_hi = 1.34;
  } else if (kind == VariantKind::FourXor) {
    r.band_gamma_lo = 0.93, r.band_gamma_hi = 1.05, r.band_delta_lo = 1.74, r.band_delta_hi = 1.76;
  }
  r.gamma.name = std::string(to_string(kind)) + "_gamma";
  r.delta.name = std::string(to_string(kind)) + "_delta";
  for (FitReport* f : {&r.gamma, &r.delta}) {
    f->seed = seed;
    f->samples = samples;
    f->params["size"] = static_cast<double>(size);
  }
  r.gamma.target = (r.band_gamma_lo + r.band_gamma_hi) / 2;
  r.delta.target = (r.band_delta_lo + r.band_delta_hi) / 2;
  r.gamma.target_label = "simulation band midpoint";
  r.delta.target_label = "simulation band midpoint";

  std::size_t touched = 0;
  std::map<int, std::pair<double, double>> bins;  // sum, sum of squares
  std::map<int, std::pair<double, std::size_t>> bin_x;
  for (const One& o : res) {
    touched += o.centre < 0;
    r.constraint_violations += o.violations;
    for (const auto& [a, b] : o.sizes) r.size_histogram[a] += b;
    for (const auto& [a, b] : o.bounds) r.boundary_histogram[a] += b;
    for (const auto& [d, b] : o.closed) {
      if (d < 1) continue;
      const int k = static_cast<int>(std::floor(std::log2(static_cast<double>(d))));
      bins[k].first += static_cast<double>(b);
      bins[k].second += static_cast<double>(b) * static_cast<double>(b);
      bin_x[k].first += static_cast<double>(d);
      ++bin_x[k].second;
    }
  }
  r.centre_touch_fraction = static_cast<double>(touched) / static_cast<double>(samples);
  r.gamma.censored = touched;
  r.gamma.violations["even_neighborhood"] = r.constraint_violations;
  r.delta.violations["even_neighborhood"] = r.constraint_violations;
  for (Index nth = 2; nth <= size / 2; nth *= 2) {
    std::size_t above = touched;
    for (const One& o : res) above += o.centre > nth;
    const double p = static_cast<double>(above) / static_cast<double>(samples);
    r.gamma.points.push_back({static_cast<double>(nth), p, std::sqrt(p * (1 - p) / static_cast<double>(samples)), samples});
  }
  for (const auto& [k, sums] : bins) {
    const auto cnt = bin_x[k].second;
    if (cnt < 2) continue;
    const double c = static_cast<double>(cnt), mean = sums.first / c;
    const double var = std::max(0.0, (sums.second - c * mean * mean) / (c - 1));
    r.delta.points.push_back({bin_x[k].first / c, mean, std::sqrt(var / c), cnt});
  }
  const double hi = static_cast<double>(size) / 4;
  for (auto [f, decay] : {std::pair{&r.gamma, true}, std::pair{&r.delta, false}}) {
    try {
      fit_power_law(*f, 4, hi, decay);
    } catch (const InsufficientData& e) {
      f->warnings.emplace_back(e.what());
      f->exponent = std::nan("");
    }
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.gamma.wall_seconds = r.delta.wall_seconds = wall;
  return r;
}

}  // namespace cornerlab
