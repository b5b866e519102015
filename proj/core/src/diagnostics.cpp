#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

#include "okc/oracle.hpp"

namespace okc {

std::vector<int> label_components(const ScalarField& u, double threshold, int* count) {
  const Grid2D& g = u.grid;
  std::vector<int> label(g.size(), -1);
  int next = 0;
  std::queue<std::size_t> q;
  for (std::size_t start = 0; start < g.size(); ++start) {
    if (label[start] >= 0 || !(u[start] > threshold)) continue;
    label[start] = next;
    q.push(start);
    while (!q.empty()) {
      const std::size_t k = q.front();
      q.pop();
      const int i = g.col(k);
      const int j = g.row(k);
      for (int dj = -1; dj <= 1; ++dj)
        for (int di = -1; di <= 1; ++di) {
          const int a = i + di;
          const int b = j + dj;
          if (a < 0 || a >= g.nx() || b < 0 || b >= g.ny()) continue;
          const std::size_t m = g.index(a, b);
          if (label[m] < 0 && u[m] > threshold) {
            label[m] = next;
            q.push(m);
          }
        }
    }
    ++next;
  }
  if (count) *count = next;
  return label;
}

namespace {

double cross(Point o, Point a, Point b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

std::vector<Point> convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Point& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

struct ContourMeasure {
  double area = 0.0;
  double length = 0.0;
};

// Marching squares over the dual grid of cell centers, padded with one ring
// of below-threshold values so contours close at the domain boundary.
ContourMeasure measure_contour(const ScalarField& u, double threshold) {
  const Grid2D& g = u.grid;
  const int nx = g.nx();
  const int ny = g.ny();
  const double outside = threshold - 1.0;
  auto value = [&](int i, int j) {
    if (i < 0 || i >= nx || j < 0 || j >= ny) return outside;
    return u(i, j);
  };
  auto pos = [&](int i, int j) { return Point{g.x(0) + i * g.hx(), g.y(0) + j * g.hy()}; };

  ContourMeasure m;
  struct Vertex {
    Point p;
    bool exit;
  };
  for (int j = -1; j < ny; ++j) {
    for (int i = -1; i < nx; ++i) {
      const std::array<Point, 4> p{pos(i, j), pos(i + 1, j), pos(i + 1, j + 1), pos(i, j + 1)};
      const std::array<double, 4> v{value(i, j), value(i + 1, j), value(i + 1, j + 1), value(i, j + 1)};
      int inside = 0;
      for (double x : v) inside += x > threshold;
      if (inside == 0) continue;
      if (inside == 4) {
        m.area += g.hx() * g.hy();
        continue;
      }
      std::vector<Vertex> poly;
      std::vector<bool> is_cut;
      for (int e = 0; e < 4; ++e) {
        const int f = (e + 1) % 4;
        const bool in_e = v[e] > threshold;
        const bool in_f = v[f] > threshold;
        if (in_e) {
          poly.push_back({p[e], false});
          is_cut.push_back(false);
        }
        if (in_e != in_f) {
          const double t = (threshold - v[e]) / (v[f] - v[e]);
          poly.push_back({p[e] + t * (p[f] - p[e]), in_e});
          is_cut.push_back(true);
        }
      }
      double twice = 0.0;
      for (std::size_t k = 0; k < poly.size(); ++k) {
        const Point a = poly[k].p;
        const Point b = poly[(k + 1) % poly.size()].p;
        twice += a.x * b.y - b.x * a.y;
        if (is_cut[k] && poly[k].exit) m.length += distance(a, b);
      }
      m.area += 0.5 * std::abs(twice);
    }
  }
  return m;
}

}  // namespace

Diagnostics diagnostics(const ScalarField& u, double threshold, double concentration_radius) {
  const Grid2D& g = u.grid;
  Diagnostics d;
  d.concentration_radius = concentration_radius;
  std::vector<int> labels = label_components(u, threshold, &d.components);
  if (d.components == 0) return d;
  d.empty = false;

  std::vector<Point> cells;
  for (std::size_t k = 0; k < g.size(); ++k)
    if (labels[k] >= 0) cells.push_back({g.x(g.col(k)), g.y(g.row(k))});
  const std::vector<Point> hull = convex_hull(cells);
  for (std::size_t a = 0; a < hull.size(); ++a)
    for (std::size_t b = a + 1; b < hull.size(); ++b) d.diameter = std::max(d.diameter, distance(hull[a], hull[b]));

  const ContourMeasure cm = measure_contour(u, threshold);
  d.area = cm.area;
  d.perimeter = cm.length;
  d.deficit = cm.area > 0.0 ? cm.length / (2.0 * std::sqrt(std::numbers::pi * cm.area)) - 1.0 : 0.0;

  // Largest superlevel area within B_r(x) over nodes x.
  const int ri = static_cast<int>(std::floor(concentration_radius / g.hx()));
  const int rj = static_cast<int>(std::floor(concentration_radius / g.hy()));
  std::vector<std::pair<int, int>> stencil;
  for (int dj = -rj; dj <= rj; ++dj)
    for (int di = -ri; di <= ri; ++di)
      if (std::hypot(di * g.hx(), dj * g.hy()) <= concentration_radius) stencil.emplace_back(di, dj);
  double best = 0.0;
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      int count = 0;
      for (const auto& [di, dj] : stencil) {
        const int a = i + di;
        const int b = j + dj;
        if (a >= 0 && a < g.nx() && b >= 0 && b < g.ny() && labels[g.index(a, b)] >= 0) ++count;
      }
      best = std::max(best, count * g.cell_area());
    }
  d.concentration = best;
  return d;
}

}  // namespace okc
