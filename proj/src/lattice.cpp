// Copyright 2026 The cornerlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "cornerlab/lattice.hpp"

#include <algorithm>
#include <deque>

#include "cornerlab/rng.hpp"

namespace cornerlab {

namespace {

constexpr std::uint64_t zigzag(Index n) noexcept {
  return (static_cast<std::uint64_t>(n) << 1) ^ static_cast<std::uint64_t>(n >> 63);
}

void check_bias(double bias) {
  if (!(bias >= 0.0 && bias <= 1.0)) throw std::invalid_argument("bias must lie in [0, 1]");
}

}  // namespace

Edge edge_between(Vertex a, Vertex b) {
  if (a.x == b.x && (b.y - a.y == 1 || a.y - b.y == 1)) return {{a.x, std::min(a.y, b.y)}, true};
  if (a.y == b.y && (b.x - a.x == 1 || a.x - b.x == 1)) return {{std::min(a.x, b.x), a.y}, false};
  throw std::invalid_argument("vertices are not lattice neighbours");
}

int sign_at(Axis axis, Index n, double bias, std::uint64_t seed, BiasMode mode) {
  const double u = to_unit(hash_words(seed, static_cast<std::uint64_t>(axis) + 0x5eed, zigzag(n)));
  if (mode == BiasMode::Signs || !is_even(n)) return u < bias ? +1 : -1;
  // Walk step xi*(n) = (-1)^{n+1} xi(n) is +1 iff u >= 1 - bias. At p = 1/2
  // this is the Signs configuration of the same seed.
  return u >= 1.0 - bias ? -1 : +1;
}

SignSequence gen_signs(Axis axis, Index lo, Index hi, double bias, std::uint64_t seed, BiasMode mode) {
  if (hi < lo) throw std::invalid_argument("empty sign range");
  check_bias(bias);
  SignSequence s{axis, lo, hi, bias, seed, mode, {}};
  s.values.resize(static_cast<std::size_t>(hi - lo + 1));
  for (Index n = lo; n <= hi; ++n) s.values[static_cast<std::size_t>(n - lo)] = static_cast<std::int8_t>(sign_at(axis, n, bias, seed, mode));
  return s;
}

SignSequence signs_from_values(Axis axis, Index lo, std::span<const int> values) {
  if (values.empty()) throw std::invalid_argument("empty sign range");
  SignSequence s{axis, lo, lo + static_cast<Index>(values.size()) - 1, 0.5, 0, BiasMode::Signs, {}};
  for (int v : values) {
    if (v != 1 && v != -1) throw std::invalid_argument("signs must be +1 or -1");
    s.values.push_back(static_cast<std::int8_t>(v));
  }
  return s;
}

Walk walk_from_signs(const SignSequence& signs) {
  if (signs.lo > 0 || signs.hi < 0) throw std::invalid_argument("sign range must contain index 0");
  Walk w{signs.lo, signs.hi, std::vector<Index>(static_cast<std::size_t>(signs.size()))};
  auto star = [&](Index j) { return is_even(j) ? -signs.at(j) : signs.at(j); };
  auto slot = [&](Index n) -> Index& { return w.values[static_cast<std::size_t>(n - w.lo)]; };
  slot(0) = 0;
  for (Index n = 1; n <= w.hi; ++n) slot(n) = slot(n - 1) + star(n);
  for (Index n = -1; n >= w.lo; --n) slot(n) = slot(n + 1) - star(n + 1);
  return w;
}

WindowSpec WindowSpec::centered(std::uint64_t seed, Index half, double bias, BiasMode mode) {
  return {seed, bias, bias, -half, half, -half, half, mode};
}

LatticeWindow::LatticeWindow(const WindowSpec& spec) : spec_(spec) {
  if (spec.x_hi < spec.x_lo || spec.y_hi < spec.y_lo) throw std::invalid_argument("empty window");
  xi_ = gen_signs(Axis::Xi, std::min<Index>(spec.x_lo - 1, 0), std::max<Index>(spec.x_hi + 1, 0), spec.bias_xi,
                  spec.seed, spec.mode);
  eta_ = gen_signs(Axis::Eta, std::min<Index>(spec.y_lo - 1, 0), std::max<Index>(spec.y_hi + 1, 0),
                   spec.bias_eta, spec.seed, spec.mode);
  build_walks();
}

LatticeWindow::LatticeWindow(SignSequence xi, SignSequence eta, Index x_lo, Index x_hi, Index y_lo, Index y_hi)
    : spec_{0, xi.bias, eta.bias, x_lo, x_hi, y_lo, y_hi, BiasMode::Signs}, xi_(std::move(xi)), eta_(std::move(eta)) {
  if (x_hi < x_lo || y_hi < y_lo) throw std::invalid_argument("empty window");
  if (xi_.lo > std::min<Index>(x_lo - 1, 0) || xi_.hi < std::max<Index>(x_hi, 0) ||
      eta_.lo > std::min<Index>(y_lo - 1, 0) || eta_.hi < std::max<Index>(y_hi, 0))
    throw std::invalid_argument("sign sequences do not cover the window");
  build_walks();
}

void LatticeWindow::build_walks() {
  X_ = walk_from_signs(xi_);
  Y_ = walk_from_signs(eta_);
}

int LatticeWindow::degree(Vertex v) const {
  if (!contains(v)) throw std::out_of_range("vertex outside window");
  return static_cast<int>(contains(vertical_neighbor(v))) + static_cast<int>(contains(horizontal_neighbor(v)));
}

bool edge_present(const LatticeWindow& w, const Edge& e) {
  if (!w.contains(e)) throw std::out_of_range("edge outside window");
  if (e.vertical) return is_even(e.from.y) == (w.xi().at(e.from.x) > 0);
  return is_even(e.from.x) == (w.eta().at(e.from.y) > 0);
}

Index tilde_height(const LatticeWindow& w, Face f) {
  if (!w.contains(f)) throw std::out_of_range("face outside window");
  return w.tilde(f);
}

Index height(const LatticeWindow& w, Face f) {
  // Ceiling of half the tilde height; the crossing rule fixes the rounding.
  return (tilde_height(w, f) + 1) >> 1;
}

namespace {

Edge separating_edge(Face f, Face g) {
  if (g.m == f.m && g.n == f.n + 1) return {{f.n + 1, f.m}, true};
  if (g.m == f.m && g.n == f.n - 1) return {{f.n, f.m}, true};
  if (g.n == f.n && g.m == f.m + 1) return {{f.n, f.m + 1}, false};
  if (g.n == f.n && g.m == f.m - 1) return {{f.n, f.m}, false};
  throw std::invalid_argument("dual path steps must join adjacent faces");
}

Index crossing_increment(const LatticeWindow& w, Face f, Face g) {
  if (!edge_present(w, separating_edge(f, g))) return 0;
  return f.black() ? 1 : -1;
}

}  // namespace

Index height_along_path(const LatticeWindow& w, std::span<const Face> path) {
  if (path.empty() || path.front() != Face{0, 0}) throw std::invalid_argument("dual path must start at face (0,0)");
  Index h = 0;
  for (std::size_t k = 0; k < path.size(); ++k) {
    if (!w.contains(path[k])) throw std::out_of_range("dual path leaves the window");
    if (k > 0) h += crossing_increment(w, path[k - 1], path[k]);
  }
  return h;
}

Index height_by_path(const LatticeWindow& w, Face f) {
  if (!w.contains(Face{0, 0}) || !w.contains(f)) throw std::out_of_range("face unreachable within window");
  std::vector<Face> path{{0, 0}};
  const Index sn = f.n >= 0 ? 1 : -1, sm = f.m >= 0 ? 1 : -1;
  for (Index n = sn; n != f.n + sn; n += sn) path.push_back({n, 0});
  for (Index m = sm; m != f.m + sm; m += sm) path.push_back({f.n, m});
  return height_along_path(w, path);
}

HeightField height_field_by_path(const LatticeWindow& w) {
  if (!w.contains(Face{0, 0})) throw std::out_of_range("window does not contain face (0,0)");
  HeightField field{w.x_lo(), w.x_hi() - 1, w.y_lo(), w.y_hi() - 1, {}};
  const Index width = field.n_hi - field.n_lo + 1;
  const Index rows = field.m_hi - field.m_lo + 1;
  field.values.assign(static_cast<std::size_t>(width * rows), 0);
  std::vector<char> seen(field.values.size(), 0);
  auto idx = [&](Face f) { return static_cast<std::size_t>((f.m - field.m_lo) * width + (f.n - field.n_lo)); };
  std::deque<Face> queue{{0, 0}};
  seen[idx({0, 0})] = 1;
  while (!queue.empty()) {
    const Face f = queue.front();
    queue.pop_front();
    const Index hf = field.values[idx(f)];
    for (Face g : {Face{f.n + 1, f.m}, Face{f.n - 1, f.m}, Face{f.n, f.m + 1}, Face{f.n, f.m - 1}}) {
      if (!w.contains(g) || seen[idx(g)]) continue;
      seen[idx(g)] = 1;
      field.values[idx(g)] = hf + crossing_increment(w, f, g);
      queue.push_back(g);
    }
  }
  return field;
}

}  // namespace cornerlab
