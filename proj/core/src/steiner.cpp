#include "okc/steiner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace okc {

std::size_t SteinerTree::degree(std::size_t k) const {
  return static_cast<std::size_t>(
      std::count_if(edges.begin(), edges.end(), [k](const auto& e) { return e.first == k || e.second == k; }));
}

double mst_length(std::span<const Point> points) {
  const std::size_t n = points.size();
  if (n < 2) return 0.0;
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<bool> in_tree(n, false);
  best[0] = 0.0;
  double total = 0.0;
  for (std::size_t it = 0; it < n; ++it) {
    std::size_t u = n;
    for (std::size_t k = 0; k < n; ++k)
      if (!in_tree[k] && (u == n || best[k] < best[u])) u = k;
    in_tree[u] = true;
    total += best[u];
    for (std::size_t k = 0; k < n; ++k)
      if (!in_tree[k]) best[k] = std::min(best[k], distance(points[u], points[k]));
  }
  return total;
}

namespace {

using Edge = std::pair<std::size_t, std::size_t>;

// Full topology on terminals 0..k-1 with Steiner points k.. (indices in the
// combined point array of size n_terminals + n_terminals - 2).
struct Topology {
  std::vector<Edge> edges;
};

class SmithOptimizer {
 public:
  SmithOptimizer(std::span<const Point> terminals, double scale) : terminals_(terminals), scale_(scale) {}

  // Optimizes the Steiner points of `topo` in `pts` in place; returns the tree
  // length. Points [0, nt) are terminals, [nt, nt + ns) Steiner points.
  // Smith's reweighted iteration crawls when the optimum puts a Steiner point
  // on a terminal, so such points are pinned there when that is shorter.
  double optimize(const Topology& topo, std::vector<Point>& pts, std::size_t ns) const {
    const std::size_t nt = terminals_.size();
    std::array<bool, 6> pinned{};
    double len = iterate(topo, pts, ns, pinned);
    for (bool improved = true; improved;) {
      improved = false;
      for (const auto& [p, q] : topo.edges) {
        // Orient the edge as (free Steiner point, fixed point).
        std::size_t s = p, f = q;
        if (!is_free(s, nt, pinned)) std::swap(s, f);
        if (!is_free(s, nt, pinned) || is_free(f, nt, pinned)) continue;
        if (distance(pts[s], pts[f]) > kPinRadius * scale_) continue;
        std::vector<Point> trial = pts;
        std::array<bool, 6> trial_pinned = pinned;
        trial[s] = trial[f];
        trial_pinned[s - nt] = true;
        const double trial_len = iterate(topo, trial, ns, trial_pinned);
        if (trial_len < len) {
          pts = std::move(trial);
          pinned = trial_pinned;
          len = trial_len;
          improved = true;
          break;
        }
      }
    }
    return len;
  }

  static double length(const Topology& topo, const std::vector<Point>& pts) {
    double s = 0.0;
    for (const auto& [p, q] : topo.edges) s += distance(pts[p], pts[q]);
    return s;
  }

 private:
  static constexpr double kPinRadius = 0.05;

  static bool is_free(std::size_t k, std::size_t nt, const std::array<bool, 6>& pinned) {
    return k >= nt && !pinned[k - nt];
  }

  double iterate(const Topology& topo, std::vector<Point>& pts, std::size_t ns, const std::array<bool, 6>& pinned) const {
    const std::size_t nt = terminals_.size();
    constexpr int kMaxIterations = 4000;
    // Dense indices of the free Steiner points.
    std::array<std::size_t, 6> slot{};
    std::size_t nf = 0;
    for (std::size_t i = 0; i < ns; ++i) slot[i] = pinned[i] ? 6 : nf++;
    if (nf == 0) return length(topo, pts);
    // A Steiner point sitting on a neighbor is a fixed point of the iteration
    // even when it is not optimal there; restart such points from the
    // centroid of their neighbors.
    for (std::size_t i = 0; i < ns; ++i) {
      if (pinned[i]) continue;
      const std::size_t k = nt + i;
      Point sum{};
      double count = 0.0, closest = std::numeric_limits<double>::infinity();
      for (const auto& [p, q] : topo.edges) {
        if (p != k && q != k) continue;
        const std::size_t o = p == k ? q : p;
        sum = sum + pts[o];
        count += 1.0;
        closest = std::min(closest, distance(pts[k], pts[o]));
      }
      if (closest <= 1e-9 * scale_) pts[k] = (1.0 / count) * sum;
    }
    double prev = length(topo, pts);
    std::array<double, 36> a{};
    std::array<double, 6> bx{}, by{};
    for (int it = 0; it < kMaxIterations; ++it) {
      a.fill(0.0);
      bx.fill(0.0);
      by.fill(0.0);
      for (const auto& [p, q] : topo.edges) {
        const double w = 1.0 / std::max(distance(pts[p], pts[q]), 1e-13 * scale_);
        const bool pf = is_free(p, nt, pinned);
        const bool qf = is_free(q, nt, pinned);
        auto couple = [&](std::size_t self, std::size_t other, bool other_free) {
          const std::size_t i = slot[self - nt];
          a[i * 6 + i] += w;
          if (other_free) {
            a[i * 6 + slot[other - nt]] -= w;
          } else {
            bx[i] += w * pts[other].x;
            by[i] += w * pts[other].y;
          }
        };
        if (pf) couple(p, q, qf);
        if (qf) couple(q, p, pf);
      }
      solve(a, bx, by, nf);
      for (std::size_t i = 0; i < ns; ++i)
        if (!pinned[i]) pts[nt + i] = {bx[slot[i]], by[slot[i]]};
      const double cur = length(topo, pts);
      if (prev - cur <= 1e-15 * scale_) {
        prev = std::min(prev, cur);
        break;
      }
      prev = cur;
    }
    return prev;
  }

  // Gaussian elimination on the SPD weighted-Laplacian block (n <= 6).
  static void solve(std::array<double, 36>& a, std::array<double, 6>& bx, std::array<double, 6>& by, std::size_t n) {
    for (std::size_t c = 0; c < n; ++c) {
      const double piv = a[c * 6 + c];
      for (std::size_t r = c + 1; r < n; ++r) {
        const double f = a[r * 6 + c] / piv;
        if (f == 0.0) continue;
        for (std::size_t k = c; k < n; ++k) a[r * 6 + k] -= f * a[c * 6 + k];
        bx[r] -= f * bx[c];
        by[r] -= f * by[c];
      }
    }
    for (std::size_t c = n; c-- > 0;) {
      double sx = bx[c];
      double sy = by[c];
      for (std::size_t k = c + 1; k < n; ++k) {
        sx -= a[c * 6 + k] * bx[k];
        sy -= a[c * 6 + k] * by[k];
      }
      bx[c] = sx / a[c * 6 + c];
      by[c] = sy / a[c * 6 + c];
    }
  }

  std::span<const Point> terminals_;
  double scale_;
};

struct Search {
  std::span<const Point> terminals;
  SmithOptimizer opt;
  double best = std::numeric_limits<double>::infinity();
  Topology best_topo;
  std::vector<Point> best_pts;

  // Topology over terminals [0, k) with k - 2 Steiner points at indices
  // nt + 0 .. nt + k - 3.
  void expand(const Topology& topo, std::vector<Point> pts, std::size_t k) {
    const std::size_t nt = terminals.size();
    const double len = opt.optimize(topo, pts, k - 2);
    if (len >= best * (1.0 + 1e-12)) return;
    if (k == nt) {
      best = len;
      best_topo = topo;
      best_pts = pts;
      return;
    }
    // Insert terminal k on every edge through a new Steiner point.
    const std::size_t s = nt + (k - 2);
    for (std::size_t e = 0; e < topo.edges.size(); ++e) {
      Topology next = topo;
      const auto [p, q] = topo.edges[e];
      next.edges[e] = {p, s};
      next.edges.push_back({s, q});
      next.edges.push_back({s, k});
      std::vector<Point> npts = pts;
      npts[s] = (1.0 / 3.0) * (pts[p] + pts[q] + terminals[k]);
      expand(next, std::move(npts), k + 1);
    }
  }
};

// Contracts edges shorter than tol, preferring terminals as representatives.
SteinerTree clean_tree(std::span<const Point> terminals, const std::vector<Point>& pts, const std::vector<Edge>& edges,
                       double tol) {
  const std::size_t nt = terminals.size();
  std::vector<std::size_t> parent(pts.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [p, q] : edges) {
    if (distance(pts[p], pts[q]) > tol) continue;
    std::size_t a = find(p);
    std::size_t b = find(q);
    if (a == b) continue;
    if (b < a) std::swap(a, b);
    parent[b] = a;  // lower index (terminals first) represents
  }
  SteinerTree tree;
  tree.terminal_count = nt;
  std::vector<std::size_t> remap(pts.size(), std::numeric_limits<std::size_t>::max());
  for (std::size_t k = 0; k < nt; ++k) {
    tree.points.push_back(terminals[k]);
    remap[k] = k;
  }
  for (std::size_t k = nt; k < pts.size(); ++k) {
    if (find(k) == k) {
      remap[k] = tree.points.size();
      tree.points.push_back(pts[k]);
    }
  }
  for (const auto& [p, q] : edges) {
    const std::size_t a = remap[find(p)];
    const std::size_t b = remap[find(q)];
    if (a == b) continue;
    tree.edges.push_back({a, b});
    tree.length += distance(tree.points[a], tree.points[b]);
  }
  return tree;
}

SteinerTree triangle_tree(std::span<const Point> t) {
  const double a = distance(t[1], t[2]);
  const double b = distance(t[0], t[2]);
  const double c = distance(t[0], t[1]);
  const std::array<double, 3> side_opposite{a, b, c};
  // Angle at vertex k from the law of cosines.
  for (std::size_t k = 0; k < 3; ++k) {
    const double opp = side_opposite[k];
    const double s1 = side_opposite[(k + 1) % 3];
    const double s2 = side_opposite[(k + 2) % 3];
    const double cosang = (s1 * s1 + s2 * s2 - opp * opp) / (2.0 * s1 * s2);
    if (s1 == 0.0 || s2 == 0.0 || cosang <= -0.5) {
      SteinerTree tree;
      tree.points.assign(t.begin(), t.end());
      tree.terminal_count = 3;
      tree.edges = {{k, (k + 1) % 3}, {k, (k + 2) % 3}};
      tree.length = s1 + s2;
      return tree;
    }
  }
  // Fermat point: all angles below 120 degrees. It lies on the segment from
  // each vertex to the apex of the equilateral triangle erected outward on
  // the opposite side.
  const double orient = (t[1].x - t[0].x) * (t[2].y - t[0].y) - (t[2].x - t[0].x) * (t[1].y - t[0].y);
  auto apex = [&](const Point& p, const Point& q) {
    // Rotate q - p by -60 degrees for counterclockwise triangles.
    const double s = orient > 0 ? -std::sqrt(3.0) / 2 : std::sqrt(3.0) / 2;
    const double dx = q.x - p.x, dy = q.y - p.y;
    return Point{p.x + 0.5 * dx - s * dy, p.y + s * dx + 0.5 * dy};
  };
  const Point a0 = apex(t[1], t[2]);
  const Point b0 = apex(t[2], t[0]);
  const Point d1 = a0 - t[0];
  const Point d2 = b0 - t[1];
  const double det = d1.x * (-d2.y) - d1.y * (-d2.x);
  const double rx = t[1].x - t[0].x, ry = t[1].y - t[0].y;
  const double u = (rx * (-d2.y) - ry * (-d2.x)) / det;
  const Point f{t[0].x + u * d1.x, t[0].y + u * d1.y};
  double len = 0.0;
  for (const Point& p : t) len += distance(f, p);
  SteinerTree tree;
  tree.points = {t[0], t[1], t[2], f};
  tree.terminal_count = 3;
  tree.edges = {{0, 3}, {1, 3}, {2, 3}};
  tree.length = len;
  return tree;
}

SteinerTree mst_tree(std::span<const Point> t) {
  const std::size_t n = t.size();
  SteinerTree tree;
  tree.points.assign(t.begin(), t.end());
  tree.terminal_count = n;
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> from(n, 0);
  std::vector<bool> in_tree(n, false);
  best[0] = 0.0;
  for (std::size_t it = 0; it < n; ++it) {
    std::size_t u = n;
    for (std::size_t k = 0; k < n; ++k)
      if (!in_tree[k] && (u == n || best[k] < best[u])) u = k;
    in_tree[u] = true;
    if (it > 0) {
      tree.edges.push_back({from[u], u});
      tree.length += best[u];
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (in_tree[k]) continue;
      const double d = distance(t[u], t[k]);
      if (d < best[k]) {
        best[k] = d;
        from[k] = u;
      }
    }
  }
  return tree;
}

}  // namespace

SteinerTree steiner_tree(std::span<const Point> terminals) {
  const std::size_t n = terminals.size();
  if (n == 0) throw std::invalid_argument("steiner tree needs at least one terminal");
  if (n > kMaxSteinerTerminals)
    throw std::invalid_argument("steiner tree supports at most 8 terminals, got " + std::to_string(n));
  if (n <= 2) return mst_tree(terminals);
  if (n == 3) return triangle_tree(terminals);

  double scale = 0.0;
  for (const Point& p : terminals)
    for (const Point& q : terminals) scale = std::max(scale, distance(p, q));
  if (scale == 0.0) return mst_tree(terminals);

  Search search{terminals, SmithOptimizer(terminals, scale), std::numeric_limits<double>::infinity(), {}, {}};
  const SteinerTree mst = mst_tree(terminals);
  search.best = mst.length * (1.0 + 1e-9);

  const std::size_t nt = n;
  std::vector<Point> pts(nt + nt - 2);
  std::copy(terminals.begin(), terminals.end(), pts.begin());
  pts[nt] = (1.0 / 3.0) * (terminals[0] + terminals[1] + terminals[2]);
  Topology root{{{0, nt}, {1, nt}, {2, nt}}};
  search.expand(root, pts, 3);

  if (search.best_pts.empty() || search.best >= mst.length) return mst;
  SteinerTree tree = clean_tree(terminals, search.best_pts, search.best_topo.edges, 1e-7 * scale);
  return tree.length < mst.length ? tree : mst;
}

double steiner_length(std::span<const Point> terminals) { return steiner_tree(terminals).length; }

}  // namespace okc
