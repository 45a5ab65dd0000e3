// Copyright 2026 The cornerlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "cornerlab/builders.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

#include "cornerlab/errors.hpp"

namespace cornerlab {

namespace {

// f(n, m) = A(n - a) - B(m - b); the cycle separates f = 0 from f = 1.
struct Profiles {
  Index a = 0, b = 0, h = 0;
  std::vector<Index> A, B;

  explicit Profiles(const CompatiblePair& p) : a(p.first.offset), b(p.second.offset), h(p.first.height) {
    if (!is_compatible(p.first, p.second)) throw std::invalid_argument("pair is not compatible");
    for (Index k = 0; k <= p.first.length; ++k) A.push_back(p.first.profile(k));
    for (Index k = 0; k <= p.second.length; ++k) B.push_back(h - p.second.profile(k));
  }
  [[nodiscard]] Index lenA() const { return static_cast<Index>(A.size()) - 1; }
  [[nodiscard]] Index lenB() const { return static_cast<Index>(B.size()) - 1; }
  [[nodiscard]] Index f(Index i, Index j) const { return A[static_cast<std::size_t>(i)] - B[static_cast<std::size_t>(j)]; }
};

Edge face_edge(Face f, Face g) {
  if (f.m == g.m) return Edge{{std::max(f.n, g.n), f.m}, true};
  return Edge{{f.n, std::max(f.m, g.m)}, false};
}

std::vector<Vertex> chain(const std::set<Edge>& edges) {
  std::map<Vertex, std::vector<Vertex>> adj;
  for (const Edge& e : edges) {
    adj[e.from].push_back(e.to());
    adj[e.to()].push_back(e.from);
  }
  for (const auto& [v, ns] : adj)
    if (ns.size() != 2) throw AlgorithmViolation("marked edges do not form a cycle");
  std::vector<Vertex> out;
  Vertex prev = adj.begin()->first, cur = adj.begin()->second[0];
  out.push_back(prev);
  while (cur != out.front()) {
    out.push_back(cur);
    const auto& ns = adj[cur];
    const Vertex next = ns[0] == prev ? ns[1] : ns[0];
    prev = cur;
    cur = next;
  }
  if (out.size() != adj.size()) throw AlgorithmViolation("marked edges form more than one cycle");
  normalize(out);
  return out;
}

Cycle finish(std::vector<Vertex> vertices, const CompatiblePair& p) {
  Cycle c;
  c.vertices = std::move(vertices);
  c.rect = Rect{p.first.offset, p.first.end(), p.second.offset, p.second.end()};
  if (bounding_rect(c.vertices) != c.rect) throw AlgorithmViolation("cycle does not span the rectangle");
  c.direction = p.first.direction == Direction::Up ? CycleDirection::Up : CycleDirection::Down;
  c.level = p.level;
  c.height = p.first.height;
  const Index s = p.first.base + p.second.base;
  c.tilde_level = c.direction == CycleDirection::Up ? s + c.height : s - c.height - 1;
  passages(c);
  return c;
}

}  // namespace

Cycle cycle_from_pair_trace(const CompatiblePair& pair) {
  const Profiles P(pair);
  const Index W = P.lenA() + 1, H = P.lenB() + 1;
  auto at = [&](Index i, Index j) { return static_cast<std::size_t>(j * W + i); };
  std::vector<char> comp(static_cast<std::size_t>(W * H), 0);

  const auto i0 = static_cast<Index>(std::find(P.A.begin(), P.A.end(), P.h) - P.A.begin());
  const auto j0 = static_cast<Index>(std::find(P.B.begin(), P.B.end(), 0) - P.B.begin());
  const std::array<std::pair<Index, Index>, 4> nb{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};

  std::deque<std::pair<Index, Index>> q{{i0, j0}};
  comp[at(i0, j0)] = 1;
  while (!q.empty()) {
    auto [i, j] = q.front();
    q.pop_front();
    for (auto [di, dj] : nb) {
      const Index u = i + di, v = j + dj;
      if (u < 0 || v < 0 || u >= W || v >= H || comp[at(u, v)] || P.f(u, v) <= 0) continue;
      comp[at(u, v)] = 1;
      q.emplace_back(u, v);
    }
  }

  // Fill holes: whatever the outside cannot reach belongs to the region.
  std::vector<char> outside(comp.size(), 0);
  for (Index i = 0; i < W; ++i)
    for (Index j = 0; j < H; ++j)
      if ((i == 0 || j == 0 || i == W - 1 || j == H - 1) && !comp[at(i, j)]) {
        outside[at(i, j)] = 1;
        q.emplace_back(i, j);
      }
  while (!q.empty()) {
    auto [i, j] = q.front();
    q.pop_front();
    for (auto [di, dj] : nb) {
      const Index u = i + di, v = j + dj;
      if (u < 0 || v < 0 || u >= W || v >= H || outside[at(u, v)] || comp[at(u, v)]) continue;
      outside[at(u, v)] = 1;
      q.emplace_back(u, v);
    }
  }

  std::set<Edge> edges;
  for (Index i = 0; i < W; ++i)
    for (Index j = 0; j < H; ++j) {
      if (outside[at(i, j)]) continue;
      const Face f{P.a + i, P.b + j};
      for (auto [di, dj] : nb)
        if (outside[at(i + di, j + dj)]) edges.insert(face_edge(f, Face{f.n + di, f.m + dj}));
    }
  return finish(chain(edges), pair);
}

std::vector<std::pair<Index, Index>> cautious_hike(std::span<const Index> xavier, std::span<const Index> yvonne) {
  const auto I = static_cast<Index>(xavier.size()) - 1, J = static_cast<Index>(yvonne.size()) - 1;
  if (I < 1 || J < 1) throw std::invalid_argument("mountain needs at least one step");
  const Index lo = xavier.front(), hi = xavier.back();
  if (yvonne.front() != lo || yvonne.back() != hi || hi <= lo) throw std::invalid_argument("mountains do not match");
  auto check = [&](std::span<const Index> w) {
    for (std::size_t k = 1; k < w.size(); ++k) {
      if (std::abs(w[k] - w[k - 1]) != 1) throw std::invalid_argument("mountain step is not +-1");
      if (k + 1 < w.size() && (w[k] <= lo || w[k] >= hi)) throw std::invalid_argument("mountain leaves its band");
    }
  };
  check(xavier);
  check(yvonne);

  auto x = [&](Index i) { return xavier[static_cast<std::size_t>(i)]; };
  auto y = [&](Index j) { return yvonne[static_cast<std::size_t>(j)]; };
  auto moves = [&](Index i, Index j) {
    std::vector<std::pair<Index, Index>> out;
    for (Index di : {-1, 1})
      for (Index dj : {-1, 1}) {
        const Index u = i + di, v = j + dj;
        if (u < 0 || v < 0 || u > I || v > J) continue;
        if (x(u) - x(i) == y(v) - y(j)) out.emplace_back(di, dj);
      }
    return out;
  };

  // Degree structure of (V, E).
  std::map<Index, std::vector<Index>> xs, ys;
  for (Index i = 0; i <= I; ++i) xs[x(i)].push_back(i);
  for (Index j = 0; j <= J; ++j) ys[y(j)].push_back(j);
  std::size_t edges = 0;
  for (const auto& [level, is] : xs) {
    auto it = ys.find(level);
    if (it == ys.end()) continue;
    for (Index i : is)
      for (Index j : it->second) {
        const std::size_t deg = moves(i, j).size();
        const bool end = (i == 0 && j == 0) || (i == I && j == J);
        if (end ? deg != 1 : (deg != 0 && deg != 2 && deg != 4))
          throw AlgorithmViolation("hiking graph has a vertex of unexpected degree");
        edges += deg;
      }
  }
  edges /= 2;

  using Key = std::array<Index, 4>;
  auto key = [](Index i, Index j, Index u, Index v) {
    return std::min(Key{i, j, u, v}, Key{u, v, i, j});
  };
  std::set<Key> used;
  std::set<std::pair<Index, Index>> seen;
  std::vector<std::pair<Index, Index>> path{{0, 0}};
  Index i = 0, j = 0, ei = 0, ej = 0;
  while (!(i == I && j == J)) {
    if (path.size() > edges + 1) throw AlgorithmViolation("hike longer than its graph");
    const auto all = moves(i, j);
    std::vector<std::pair<Index, Index>> free;
    for (auto m : all)
      if (!used.count(key(i, j, i + m.first, j + m.second))) free.push_back(m);
    std::pair<Index, Index> step;
    if (all.size() == 4 && !seen.count({i, j})) {
      // Fresh crossing: both at a valley means they continue upward and
      // Xavier turns back; both at a peak, Yvonne does.
      const bool upward = x(i - 1) > x(i);
      step = upward ? std::pair{-ei, ej} : std::pair{ei, -ej};
      if (std::find(free.begin(), free.end(), step) == free.end()) throw AlgorithmViolation("cautious move already used");
    } else {
      if (free.size() != 1) throw AlgorithmViolation("hikers are stuck");
      step = free.front();
    }
    seen.insert({i, j});
    used.insert(key(i, j, i + step.first, j + step.second));
    ei = step.first;
    ej = step.second;
    i += ei;
    j += ej;
    path.emplace_back(i, j);
  }
  return path;
}

namespace {

class Walker {
 public:
  explicit Walker(const CompatiblePair& pair) : P_(pair) {}

  HikersResult run(const CompatiblePair& pair) {
    const auto m1 = static_cast<Index>(std::find(P_.A.begin(), P_.A.end(), P_.h) - P_.A.begin());
    const auto n1 = static_cast<Index>(std::find(P_.B.begin(), P_.B.end(), 0) - P_.B.begin());

    // Corner mountain pair X[a, a + m1] against Y[b, b + n1] read backwards.
    std::vector<Index> xav(P_.A.begin(), P_.A.begin() + m1 + 1), yvo;
    for (Index t = 0; t <= n1; ++t) yvo.push_back(P_.B[static_cast<std::size_t>(n1 - t)]);
    HikerPiece first{true, {}};
    for (auto [t, u] : cautious_hike(xav, yvo)) first.path.push_back({t, n1 - u});
    add(first);

    const Face start = first.path.front();
    const std::size_t cap = 4 * static_cast<std::size_t>((P_.lenA() + 1) * (P_.lenB() + 1));
    while (result_.pieces.back().path.back() != start) {
      if (steps_ > cap) throw AlgorithmViolation("hike does not close");
      add(next_piece());
    }

    std::vector<Face> loop;
    for (const auto& piece : result_.pieces)
      loop.insert(loop.end(), piece.path.begin() + (loop.empty() ? 0 : 1), piece.path.end());
    loop.pop_back();
    std::set<Edge> edges;
    const std::size_t N = loop.size();
    for (std::size_t k = 0; k < N; ++k) {
      const Face prev = loop[(k + N - 1) % N], z = loop[k], next = loop[(k + 1) % N];
      const Face in = mark(prev, z, edges), out = corner(z, next);
      // Arriving and leaving on opposite sides: the third side is on the cycle too.
      if (in.n - z.n == z.n - out.n && in.m - z.m == z.m - out.m) {
        int found = 0;
        for (const Face t : {Face{z.n + 1, z.m}, Face{z.n - 1, z.m}, Face{z.n, z.m + 1}, Face{z.n, z.m - 1}}) {
          if (t == in || t == out || P_.f(t.n, t.m) != 1) continue;
          edges.insert(face_edge(shift(z), shift(t)));
          ++found;
        }
        if (found != 1) throw AlgorithmViolation("path face without a third positive side");
      }
    }
    for (auto& piece : result_.pieces)
      for (Face& f : piece.path) f = shift(f);
    result_.steps = static_cast<Index>(N);
    result_.cycle = finish(chain(edges), pair);
    return std::move(result_);
  }

 private:
  using Key = std::array<Index, 4>;

  void add(HikerPiece piece) {
    const auto& p = piece.path;
    for (std::size_t k = 0; k + 1 < p.size(); ++k) {
      used_.insert(std::min(Key{p[k].n, p[k].m, p[k + 1].n, p[k + 1].m}, Key{p[k + 1].n, p[k + 1].m, p[k].n, p[k].m}));
      ++visits_[p[k + 1]];
    }
    if (result_.pieces.empty()) ++visits_[p.front()];
    steps_ += p.size() - 1;
    result_.pieces.push_back(std::move(piece));
  }

  std::vector<std::pair<Index, Index>> moves(Index i, Index j) const {
    std::vector<std::pair<Index, Index>> out;
    for (Index di : {-1, 1})
      for (Index dj : {-1, 1}) {
        const Index u = i + di, v = j + dj;
        if (u < 0 || v < 0 || u > P_.lenA() || v > P_.lenB()) continue;
        if (P_.f(u, v) == 0) out.emplace_back(di, dj);
      }
    return out;
  }

  // Same rule as inside a hike, at the face where two pieces meet.
  std::pair<Index, Index> junction(Face f, Index ei, Index ej) const {
    const auto all = moves(f.n, f.m);
    std::vector<std::pair<Index, Index>> free;
    for (auto [di, dj] : all) {
      const Key k = std::min(Key{f.n, f.m, f.n + di, f.m + dj}, Key{f.n + di, f.m + dj, f.n, f.m});
      if (!used_.count(k)) free.emplace_back(di, dj);
    }
    const auto it = visits_.find(f);
    if (all.size() == 4 && it != visits_.end() && it->second == 1) {
      const bool upward = P_.A[static_cast<std::size_t>(f.n - 1)] > P_.A[static_cast<std::size_t>(f.n)];
      return upward ? std::pair{-ei, ej} : std::pair{ei, -ej};
    }
    if (free.size() != 1) throw AlgorithmViolation("hikers are stuck between pieces");
    return free.front();
  }

  // Walk from `from` in direction `d` while strictly beyond `level`; the
  // extreme value reached.
  static Index reach(const std::vector<Index>& w, Index from, Index d, bool up) {
    const Index level = w[static_cast<std::size_t>(from)];
    Index ext = level;
    for (Index k = from + d; k >= 0 && k < static_cast<Index>(w.size()); k += d) {
      const Index v = w[static_cast<std::size_t>(k)];
      if (up ? v <= level : v >= level) break;
      ext = up ? std::max(ext, v) : std::min(ext, v);
    }
    return ext;
  }

  static std::vector<Index> segment(const std::vector<Index>& w, Index from, Index d, Index target) {
    std::vector<Index> idx{from};
    while (w[static_cast<std::size_t>(idx.back())] != target) idx.push_back(idx.back() + d);
    return idx;
  }

  HikerPiece next_piece() {
    const auto& last = result_.pieces.back().path;
    const Face f = last.back(), g = last[last.size() - 2];
    const auto [di, dj] = junction(f, f.n - g.n, f.m - g.m);
    const bool up = P_.A[static_cast<std::size_t>(f.n + di)] > P_.A[static_cast<std::size_t>(f.n)];
    const Index ra = reach(P_.A, f.n, di, up), rb = reach(P_.B, f.m, dj, up);
    const Index target = up ? std::min(ra, rb) : std::max(ra, rb);
    auto sa = segment(P_.A, f.n, di, target), sb = segment(P_.B, f.m, dj, target);
    if (!up) {
      std::reverse(sa.begin(), sa.end());
      std::reverse(sb.begin(), sb.end());
    }
    std::vector<Index> xav, yvo;
    for (Index k : sa) xav.push_back(P_.A[static_cast<std::size_t>(k)]);
    for (Index k : sb) yvo.push_back(P_.B[static_cast<std::size_t>(k)]);
    HikerPiece piece{up, {}};
    for (auto [t, u] : cautious_hike(xav, yvo))
      piece.path.push_back({sa[static_cast<std::size_t>(t)], sb[static_cast<std::size_t>(u)]});
    if (!up) std::reverse(piece.path.begin(), piece.path.end());
    return piece;
  }

  [[nodiscard]] Face shift(Face f) const { return Face{f.n + P_.a, f.m + P_.b}; }

  // The +1 face passed on the step p -> q.
  [[nodiscard]] Face corner(Face p, Face q) const {
    if (std::abs(p.n - q.n) != 1 || std::abs(p.m - q.m) != 1 || P_.f(p.n, p.m) != 0 || P_.f(q.n, q.m) != 0)
      throw AlgorithmViolation("hike step leaves the zero set");
    const Face r{q.n, p.m}, s{p.n, q.m};
    const Index fr = P_.f(r.n, r.m), fs = P_.f(s.n, s.m);
    if (fr + fs != 0 || std::abs(fr) != 1) throw AlgorithmViolation("hike step without a +1/-1 corner");
    return fr == 1 ? r : s;
  }

  Face mark(Face p, Face q, std::set<Edge>& edges) {
    const Face one = corner(p, q);
    edges.insert(face_edge(shift(p), shift(one)));
    edges.insert(face_edge(shift(one), shift(q)));
    result_.marks += 2;
    return one;
  }

  Profiles P_;
  HikersResult result_;
  std::set<Key> used_;
  std::map<Face, int> visits_;
  std::size_t steps_ = 0;
};

}  // namespace

HikersResult hike_pair(const CompatiblePair& pair) { return Walker(pair).run(pair); }

Cycle cycle_from_pair_hikers(const CompatiblePair& pair) { return hike_pair(pair).cycle; }

Index pair_cycle_length(const CompatiblePair& pair) {
  const Profiles P(pair);
  // Vertex (x, y) in rectangle-local coordinates; faces (x-1 | x) x (y-1 | y).
  auto level = [&](Index n, Index m) {
    const Index v = P.f(n, m);
    return v == 0 || v == 1 ? v : -1;
  };
  auto on = [&](Index n1, Index m1, Index n2, Index m2) {
    const Index u = level(n1, m1), v = level(n2, m2);
    return u >= 0 && v >= 0 && u != v;
  };
  const auto x0 = static_cast<Index>(std::find(P.A.begin(), P.A.end(), P.h) - P.A.begin());
  Index x = x0, y = 1, px = x0 + 1, py = 1, len = 0;
  do {
    const std::array<std::pair<Index, Index>, 4> nb{{{x + 1, y}, {x - 1, y}, {x, y + 1}, {x, y - 1}}};
    const std::array<bool, 4> edge{on(x, y - 1, x, y), on(x - 1, y - 1, x - 1, y), on(x - 1, y, x, y),
                                   on(x - 1, y - 1, x, y - 1)};
    int k = 0;
    while (k < 4 && (!edge[static_cast<std::size_t>(k)] || nb[static_cast<std::size_t>(k)] == std::pair{px, py})) ++k;
    if (k == 4) throw AlgorithmViolation("level edges do not continue");
    px = x;
    py = y;
    std::tie(x, y) = nb[static_cast<std::size_t>(k)];
    ++len;
  } while (!(x == x0 && y == 1));
  return len;
}

LevelEdges pair_level_edges(const CompatiblePair& pair) {
  const Profiles P(pair);
  auto sep = [&](Index u, Index v) { return (u == 0 && v == 1) || (u == 1 && v == 0); };
  LevelEdges out;
  for (Index i = 0; i <= P.lenA(); ++i)
    for (Index j = 0; j + 1 <= P.lenB(); ++j) {
      if (sep(P.f(i, j), P.f(i, j + 1))) ++out.horizontal;
    }
  for (Index i = 0; i + 1 <= P.lenA(); ++i)
    for (Index j = 0; j <= P.lenB(); ++j)
      if (sep(P.f(i, j), P.f(i + 1, j))) ++out.vertical;
  return out;
}

}  // namespace cornerlab
