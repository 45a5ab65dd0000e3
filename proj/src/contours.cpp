// Copyright 2026 The cornerlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "cornerlab/contours.hpp"

#include <algorithm>
#include <map>

#include "cornerlab/errors.hpp"

namespace cornerlab {

const char* to_string(CycleDirection d) noexcept {
  switch (d) {
    case CycleDirection::Up:
      return "up";
    case CycleDirection::Down:
      return "down";
    default:
      return "unknown";
  }
}

void normalize(std::vector<Vertex>& cycle) {
  if (cycle.size() < 3) return;
  Index twice_area = 0;
  for (std::size_t k = 0; k < cycle.size(); ++k) {
    const Vertex& p = cycle[k];
    const Vertex& q = cycle[(k + 1) % cycle.size()];
    twice_area += p.x * q.y - q.x * p.y;
  }
  if (twice_area < 0) std::reverse(cycle.begin(), cycle.end());
  std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
}

Rect bounding_rect(const std::vector<Vertex>& cycle) {
  if (cycle.empty()) throw std::invalid_argument("empty cycle");
  Rect r{cycle[0].x - 1, cycle[0].x, cycle[0].y - 1, cycle[0].y};
  for (const Vertex& v : cycle) {
    r.a = std::min(r.a, v.x - 1);
    r.c = std::max(r.c, v.x);
    r.b = std::min(r.b, v.y - 1);
    r.d = std::max(r.d, v.y);
  }
  return r;
}

std::vector<Edge> edge_set(const std::vector<Vertex>& cycle) {
  std::vector<Edge> edges;
  edges.reserve(cycle.size());
  for (std::size_t k = 0; k < cycle.size(); ++k) edges.push_back(edge_between(cycle[k], cycle[(k + 1) % cycle.size()]));
  std::sort(edges.begin(), edges.end());
  return edges;
}

namespace {

std::vector<Vertex> walk_component(const LatticeWindow& w, Vertex start, bool horizontal_first, bool& closed) {
  std::vector<Vertex> path{start};
  closed = false;
  if (!w.contains(start)) return path;
  Vertex cur = start;
  bool horizontal = horizontal_first;
  while (true) {
    const Vertex next = horizontal ? w.horizontal_neighbor(cur) : w.vertical_neighbor(cur);
    if (!w.contains(next)) return path;
    const Vertex back = horizontal ? w.horizontal_neighbor(next) : w.vertical_neighbor(next);
    if (back != cur) throw CorruptConfiguration("neighbour relation is not symmetric");
    if (next == start) {
      closed = true;
      return path;
    }
    path.push_back(next);
    cur = next;
    horizontal = !horizontal;
  }
}

}  // namespace

std::vector<Vertex> trace_path(const LatticeWindow& w, Vertex start, bool& closed) {
  return walk_component(w, start, true, closed);
}

std::optional<Cycle> trace_cycle(const LatticeWindow& w, Vertex start) {
  bool closed = false;
  auto path = walk_component(w, start, true, closed);
  if (!closed) return std::nullopt;
  if (path.size() < 4 || path.size() % 2 != 0) throw CorruptConfiguration("traced cycle has odd or tiny length");
  Cycle c;
  c.vertices = std::move(path);
  normalize(c.vertices);
  c.rect = bounding_rect(c.vertices);
  return c;
}

namespace {

struct SideFaces {
  Face left;
  Face right;
};

/// Faces on either side of a directed unit step p -> q.
SideFaces sides(Vertex p, Vertex q) {
  if (q.x == p.x + 1) return {{p.x, p.y}, {p.x, p.y - 1}};
  if (q.x == p.x - 1) return {{q.x, p.y - 1}, {q.x, p.y}};
  if (q.y == p.y + 1) return {{p.x - 1, p.y}, {p.x, p.y}};
  return {{p.x, q.y}, {p.x - 1, q.y}};
}

Index ceil_half(Index t) { return (t + 1) >> 1; }

}  // namespace

Classification classify(const LatticeWindow& w, const Cycle& cycle, bool flip_colors) {
  if (cycle.vertices.size() < 4) throw std::invalid_argument("cycle too short");
  const SideFaces s = sides(cycle.vertices[0], cycle.vertices[1]);
  const bool inner_black = s.left.black() != flip_colors;
  Classification out;
  out.direction = inner_black ? CycleDirection::Down : CycleDirection::Up;
  const Face black = s.left.black() ? s.left : s.right;
  out.level = ceil_half(w.tilde(black));
  return out;
}

CompatiblePair marginals(const LatticeWindow& w, const Cycle& cycle) {
  const Direction d = cycle.direction == CycleDirection::Down ? Direction::Down : Direction::Up;
  if (cycle.direction == CycleDirection::Unknown) throw std::invalid_argument("cycle must be classified first");
  try {
    Excursion ex = slice_excursion(w.X(), cycle.rect.a, cycle.rect.c, d);
    Excursion ey = slice_excursion(w.Y(), cycle.rect.b, cycle.rect.d, d);
    if (!is_compatible(ex, ey)) throw ViolatedBijection("marginals are not a compatible pair");
    return make_pair(std::move(ex), std::move(ey));
  } catch (const std::invalid_argument&) {
    throw ViolatedBijection("marginals are not excursions");
  }
}

void passages(Cycle& cycle) {
  const Rect& r = cycle.rect;
  std::map<Index, std::vector<Index>> horiz, vert;
  const auto& vs = cycle.vertices;
  for (std::size_t k = 0; k < vs.size(); ++k) {
    const Edge e = edge_between(vs[k], vs[(k + 1) % vs.size()]);
    if (e.vertical)
      vert[e.from.y].push_back(e.from.x);
    else
      horiz[e.from.x].push_back(e.from.y);
  }
  cycle.passage_columns.clear();
  cycle.passage_rows.clear();
  for (Index n = r.a + 1; n <= r.c - 1; ++n) {
    auto it = horiz.find(n);
    if (it == horiz.end() || it->second.size() != 2) continue;
    auto ys = it->second;
    std::sort(ys.begin(), ys.end());
    if (ys[0] == r.b + 1 && ys[1] == r.d) cycle.passage_columns.push_back(n);
  }
  for (Index m = r.b + 1; m <= r.d - 1; ++m) {
    auto it = vert.find(m);
    if (it == vert.end() || it->second.size() != 2) continue;
    auto xs = it->second;
    std::sort(xs.begin(), xs.end());
    if (xs[0] == r.a + 1 && xs[1] == r.c) cycle.passage_rows.push_back(m);
  }
}

namespace {

/// Crossings of the ray y = row, x > x0 with vertical cycle edges whose lower
/// end sits on `row`.
Index crossings(const Cycle& cycle, Index row, Index x0) {
  Index count = 0;
  const auto& vs = cycle.vertices;
  for (std::size_t k = 0; k < vs.size(); ++k) {
    const Vertex& p = vs[k];
    const Vertex& q = vs[(k + 1) % vs.size()];
    if (p.x == q.x && std::min(p.y, q.y) == row && p.x > x0) ++count;
  }
  return count;
}

}  // namespace

bool face_inside(const Cycle& cycle, Face f) { return crossings(cycle, f.m, f.n) % 2 == 1; }

bool vertex_inside(const Cycle& cycle, Vertex v) { return crossings(cycle, v.y, v.x) % 2 == 1; }

std::vector<Face> interior_faces(const Cycle& cycle) {
  std::map<Index, std::vector<Index>> rows;
  const auto& vs = cycle.vertices;
  for (std::size_t k = 0; k < vs.size(); ++k) {
    const Vertex& p = vs[k];
    const Vertex& q = vs[(k + 1) % vs.size()];
    if (p.x == q.x) rows[std::min(p.y, q.y)].push_back(p.x);
  }
  std::vector<Face> out;
  for (auto& [m, xs] : rows) {
    std::sort(xs.begin(), xs.end());
    for (std::size_t k = 0; k + 1 < xs.size(); k += 2)
      for (Index n = xs[k]; n < xs[k + 1]; ++n) out.push_back({n, m});
  }
  return out;
}

void complete(const LatticeWindow& w, Cycle& cycle) {
  const Classification cl = classify(w, cycle);
  cycle.direction = cl.direction;
  cycle.level = cl.level;
  const CompatiblePair pair = marginals(w, cycle);
  cycle.height = pair.first.height;
  const Index s = pair.first.base + pair.second.base;
  cycle.tilde_level = cycle.direction == CycleDirection::Up ? s + cycle.height : s - cycle.height - 1;
  if (pair.level != cycle.level || cycle.tilde_level != 2 * cycle.level)
    throw ViolatedBijection("level from face heights disagrees with the marginal formula");
  passages(cycle);
}

OriginResult cycle_of_origin(std::uint64_t seed, double bias, BiasMode mode, const OriginOptions& opts) {
  if (opts.start_size < 2 || opts.max_size < opts.start_size) throw std::invalid_argument("bad window sizes");
  for (Index size = opts.start_size; size <= opts.max_size; size *= 2) {
    const Index half = size / 2;
    LatticeWindow w(WindowSpec{seed, bias, bias, -half, half, -half, half, mode});
    if (auto c = trace_cycle(w, {0, 0})) {
      complete(w, *c);
      return {std::move(*c), size};
    }
  }
  throw BudgetExceeded("cycle of the origin did not close within the window budget");
}

namespace {

/// Level of the contour through v, from the faces on both sides of its
/// horizontal edge.
Index vertex_level(const LatticeWindow& w, Vertex v) {
  const Vertex u = w.horizontal_neighbor(v);
  const Index x = std::min(u.x, v.x);
  const Index t = std::min(w.tilde({x, v.y - 1}), w.tilde({x, v.y}));
  return t >> 1;
}

bool rects_ok(const Rect& r, const Rect& s) {
  const bool apart = r.c <= s.a || s.c <= r.a || r.d <= s.b || s.d <= r.b;
  const bool r_in_s = s.a <= r.a && r.c <= s.c && s.b <= r.b && r.d <= s.d;
  const bool s_in_r = r.a <= s.a && s.c <= r.c && r.b <= s.b && s.d <= r.d;
  return apart || r_in_s || s_in_r;
}

// Marginal spans of same-direction cycles are disjoint or nested on each
// axis; rectangles of any two cycles are disjoint or nested.
void check_level(Census& cen, const std::vector<std::size_t>& idx, const std::vector<Cycle>& all) {
  for (CycleDirection dir : {CycleDirection::Up, CycleDirection::Down})
    for (int axis = 0; axis < 2; ++axis) {
      auto lo = [&](std::size_t k) { return axis == 0 ? all[k].rect.a : all[k].rect.b; };
      auto hi = [&](std::size_t k) { return axis == 0 ? all[k].rect.c : all[k].rect.d; };
      std::vector<std::size_t> order;
      for (std::size_t k : idx)
        if (all[k].direction == dir) order.push_back(k);
      std::sort(order.begin(), order.end(), [&](std::size_t p, std::size_t q) {
        return lo(p) != lo(q) ? lo(p) < lo(q) : hi(p) > hi(q);
      });
      std::vector<std::size_t> stack;
      for (std::size_t k : order) {
        while (!stack.empty() && hi(stack.back()) <= lo(k)) stack.pop_back();
        if (!stack.empty() && hi(k) > hi(stack.back())) ++cen.trichotomy_violations;
        stack.push_back(k);
      }
    }

  std::vector<std::size_t> order(idx);
  std::sort(order.begin(), order.end(), [&](std::size_t p, std::size_t q) { return all[p].rect.a < all[q].rect.a; });
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const Rect& q = all[order[j]].rect;
      if (q.a >= all[order[i]].rect.c) break;
      if (!rects_ok(all[order[i]].rect, q)) ++cen.trichotomy_violations;
    }
}

}  // namespace

namespace {

std::vector<Census> census_impl(const LatticeWindow& w, std::optional<Index> only) {
  const Index W = w.x_hi() - w.x_lo() + 1, H = w.y_hi() - w.y_lo() + 1;
  std::vector<long> id(static_cast<std::size_t>(W * H), -1);
  auto slot = [&](Vertex v) -> long& {
    return id[static_cast<std::size_t>((v.y - w.y_lo()) * W + (v.x - w.x_lo()))];
  };
  std::map<Index, Census> by_level;
  std::vector<Cycle> all;
  std::vector<Index> level_of;
  std::vector<char> bad;

  for (Index y = w.y_lo(); y <= w.y_hi(); ++y)
    for (Index x = w.x_lo(); x <= w.x_hi(); ++x) {
      const Vertex v{x, y};
      if (slot(v) != -1) continue;
      const Index lvl = vertex_level(w, v);
      if (only && *only != lvl) continue;
      Census& cen = by_level[lvl];
      cen.level = lvl;
      bool closed = false;
      auto path = walk_component(w, v, true, closed);
      if (!closed) {
        for (const Vertex& p : path) slot(p) = -2;
        for (const Vertex& p : walk_component(w, v, false, closed)) slot(p) = -2;
        ++cen.escaped;
        continue;
      }
      const auto k = static_cast<long>(all.size());
      for (const Vertex& p : path) slot(p) = k;
      Cycle c;
      c.vertices = std::move(path);
      normalize(c.vertices);
      c.rect = bounding_rect(c.vertices);
      bool ok = true;
      try {
        complete(w, c);
        if (c.level != lvl) throw ViolatedBijection("cycle level differs from its edge level");
      } catch (const ViolatedBijection&) {
        ok = false;
        ++cen.bijection_violations;
      }
      all.push_back(std::move(c));
      level_of.push_back(lvl);
      bad.push_back(!ok);
    }

  for (auto& [lvl, cen] : by_level) {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < all.size(); ++k)
      if (level_of[k] == lvl) idx.push_back(k);
    check_level(cen, idx, all);

    // No other cycle of this level may touch a rectangle boundary.
    for (std::size_t k : idx) {
      const Rect& r = all[k].rect;
      auto probe = [&](Vertex v) {
        if (!w.contains(v)) return;
        const long o = slot(v);
        if (o >= 0 && static_cast<std::size_t>(o) != k && level_of[static_cast<std::size_t>(o)] == lvl)
          ++cen.rectangle_violations;
      };
      for (Index x = r.a + 1; x <= r.c; ++x) {
        probe({x, r.b + 1});
        if (r.d != r.b + 1) probe({x, r.d});
      }
      for (Index y = r.b + 2; y <= r.d - 1; ++y) {
        probe({r.a + 1, y});
        if (r.c != r.a + 1) probe({r.c, y});
      }
    }

    // Innermost enclosing cycle via the x-nesting stack.
    std::vector<std::size_t> order(idx);
    std::sort(order.begin(), order.end(), [&](std::size_t p, std::size_t q) {
      const Rect &rp = all[p].rect, &rq = all[q].rect;
      if (rp.a != rq.a) return rp.a < rq.a;
      if (rp.c != rq.c) return rp.c > rq.c;
      return (rp.d - rp.b) > (rq.d - rq.b);
    });
    std::map<std::size_t, long> parent_of;
    std::vector<std::size_t> stack;
    for (std::size_t k : order) {
      const Rect& rk = all[k].rect;
      while (!stack.empty() && all[stack.back()].rect.c <= rk.a) stack.pop_back();
      long parent = -1;
      for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
        const Rect& rp = all[*it].rect;
        if (rp.b <= rk.b && rk.d <= rp.d && vertex_inside(all[*it], all[k].vertices[0])) {
          parent = static_cast<long>(*it);
          break;
        }
      }
      parent_of[k] = parent;
      stack.push_back(k);
    }

    std::map<std::size_t, long> local;
    for (std::size_t k : idx) {
      local[k] = static_cast<long>(cen.cycles.size());
      cen.total_length += all[k].length();
      cen.cycles.push_back(all[k]);
    }
    for (std::size_t k : idx) {
      const long p = parent_of[k];
      cen.parent.push_back(p < 0 ? -1 : local[static_cast<std::size_t>(p)]);
      if (p >= 0 && !bad[k] && !bad[static_cast<std::size_t>(p)] &&
          all[k].direction == all[static_cast<std::size_t>(p)].direction)
        ++cen.alternation_violations;
    }
  }

  std::vector<Census> out;
  for (auto& [lvl, cen] : by_level) out.push_back(std::move(cen));
  return out;
}

}  // namespace

Census level_set_census(const LatticeWindow& w, Index level) {
  auto all = census_impl(w, level);
  if (all.empty()) {
    Census empty;
    empty.level = level;
    return empty;
  }
  return std::move(all.front());
}

std::vector<Census> full_census(const LatticeWindow& w) { return census_impl(w, std::nullopt); }

Index level_edge_count(const LatticeWindow& w, Index level) {
  Index count = 0;
  for (Index x = w.x_lo(); x <= w.x_hi(); ++x)
    for (Index y = w.y_lo(); y <= w.y_hi(); ++y) {
      if (y < w.y_hi() && edge_present(w, {{x, y}, true})) {
        const Index t = std::min(w.tilde({x - 1, y}), w.tilde({x, y}));
        count += t == 2 * level;
      }
      if (x < w.x_hi() && edge_present(w, {{x, y}, false})) {
        const Index t = std::min(w.tilde({x, y - 1}), w.tilde({x, y}));
        count += t == 2 * level;
      }
    }
  return count;
}

}  // namespace cornerlab
