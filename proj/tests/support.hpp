// Independent reference implementations used as test oracles.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "okc/geodesic.hpp"
#include "okc/grid.hpp"
#include "okc/shape.hpp"

namespace okc::testing {

// Label-correcting shortest paths by repeated full sweeps. Distances are
// relaxed to a fixed point first; hop counts and predecessors are then the
// fewest hops over tight edges (d[u] + c(u, v) == d[v]), lowest index first.
// Ordering both at once would let rounding leave stale hop counts behind.
inline GeodesicResult bellman_ford(std::size_t source, const ScalarField& weight) {
  const Grid2D& g = weight.grid;
  const std::size_t n = g.size();
  const double inf = std::numeric_limits<double>::infinity();
  GeodesicResult r;
  r.source = source;
  r.dist.assign(n, inf);
  r.pred.assign(n, -1);
  r.hops.assign(n, std::numeric_limits<std::int32_t>::max());
  r.dist[source] = 0.0;
  r.hops[source] = 0;
  const double hd = std::hypot(g.hx(), g.hy());
  auto sweep = [&](auto&& relax) {
    bool changed = false;
    for (std::size_t v = 0; v < n; ++v) {
      if (v == source) continue;
      const int iv = g.col(v), jv = g.row(v);
      for (int dj = -1; dj <= 1; ++dj)
        for (int di = -1; di <= 1; ++di) {
          if (di == 0 && dj == 0) continue;
          const int iu = iv + di, ju = jv + dj;
          if (iu < 0 || iu >= g.nx() || ju < 0 || ju >= g.ny()) continue;
          const std::size_t u = g.index(iu, ju);
          if (r.dist[u] == inf) continue;
          const double len = (di != 0 && dj != 0) ? hd : (di != 0 ? g.hx() : g.hy());
          changed = relax(u, v, r.dist[u] + len * ((weight[u] + weight[v]) * 0.5)) || changed;
        }
    }
    return changed;
  };
  while (sweep([&](std::size_t, std::size_t v, double d) {
    if (d >= r.dist[v]) return false;
    r.dist[v] = d;
    return true;
  })) {
  }
  while (sweep([&](std::size_t u, std::size_t v, double d) {
    if (d != r.dist[v] || r.hops[u] == std::numeric_limits<std::int32_t>::max()) return false;
    const std::int32_t h = r.hops[u] + 1;
    const auto p = static_cast<std::int64_t>(u);
    if (h < r.hops[v] || (h == r.hops[v] && p < r.pred[v])) {
      r.hops[v] = h;
      r.pred[v] = p;
      return true;
    }
    return false;
  })) {
  }
  return r;
}

// Smooth field with values spread over [lo, hi]: a few random low modes.
inline ScalarField random_smooth_field(const Grid2D& g, std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> amp(-1.0, 1.0), phase(0.0, 2.0 * std::numbers::pi);
  const double w = g.extents().width(), h = g.extents().height();
  struct Mode {
    double a, kx, ky, ph;
  };
  std::vector<Mode> modes;
  for (int k = 0; k < 5; ++k)
    modes.push_back({amp(rng), std::numbers::pi * (1 + k % 3) / w, std::numbers::pi * (1 + (k + 1) % 3) / h, phase(rng)});
  ScalarField f = ScalarField::from_function(g, [&](double x, double y) {
    double s = 0.0;
    for (const Mode& m : modes) s += m.a * std::cos(m.kx * x + m.ph) * std::cos(m.ky * y - 0.5 * m.ph);
    return s;
  });
  double mn = f[0], mx = f[0];
  for (double v : f.values) mn = std::min(mn, v), mx = std::max(mx, v);
  for (double& v : f.values) v = lo + (hi - lo) * (v - mn) / (mx - mn);
  return f;
}

struct Estimate {
  double mean;
  double stderr_;
};

// Monte Carlo estimate of the double integral of log(1/|x - y|) over E x E by
// rejection sampling in the bounding box.
inline Estimate monte_carlo_log_interaction(const ShapeSpec& shape, std::size_t pairs, std::uint64_t seed) {
  const BoundingBox b = bounding_box(shape);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(b.x_min, b.x_max), uy(b.y_min, b.y_max);
  auto sample = [&] {
    for (;;) {
      const Point p{ux(rng), uy(rng)};
      if (signed_distance(shape, p) < 0.0) return p;
    }
  };
  double sum = 0.0, sum2 = 0.0;
  for (std::size_t k = 0; k < pairs; ++k) {
    const double v = -std::log(distance(sample(), sample()));
    sum += v;
    sum2 += v * v;
  }
  const double m = sum / static_cast<double>(pairs);
  const double var = sum2 / static_cast<double>(pairs) - m * m;
  const double a2 = area(shape) * area(shape);
  return {a2 * m, a2 * std::sqrt(var / static_cast<double>(pairs))};
}

}  // namespace okc::testing
