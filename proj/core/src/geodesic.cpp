#include "okc/geodesic.hpp"

#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace okc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::int32_t kNoHops = std::numeric_limits<std::int32_t>::max();

struct HeapEntry {
  double dist;
  std::int32_t hops;
  std::size_t node;
  bool operator>(const HeapEntry& o) const { return std::tie(dist, hops, node) > std::tie(o.dist, o.hops, o.node); }
};

}  // namespace

GeodesicSolver::GeodesicSolver(const Grid2D& grid)
    : grid_(grid),
      dist_(grid.size(), kInf),
      pred_(grid.size(), -1),
      hops_(grid.size(), kNoHops),
      settled_(grid.size(), 0) {
  const double hx = grid.hx();
  const double hy = grid.hy();
  const double hd = std::hypot(hx, hy);
  stencil_ = {{{-1, -1, hd}, {0, -1, hy}, {1, -1, hd}, {-1, 0, hx}, {1, 0, hx}, {-1, 1, hd}, {0, 1, hy}, {1, 1, hd}}};
  order_.reserve(grid.size());
  touched_.reserve(grid.size());
}

double GeodesicSolver::edge_length(std::size_t a, std::size_t b) const {
  const int di = std::abs(grid_.col(a) - grid_.col(b));
  const int dj = std::abs(grid_.row(a) - grid_.row(b));
  if (di == 1 && dj == 1) return stencil_[0].length;
  if (di == 1) return grid_.hx();
  return grid_.hy();
}

void GeodesicSolver::run(std::size_t source, std::span<const double> weight, std::span<const std::uint8_t> targets,
                         std::size_t target_count) {
  const std::size_t n = grid_.size();
  if (source >= n) throw std::out_of_range("geodesic source index out of range");
  if (weight.size() != n) throw std::invalid_argument("weight size does not match grid");

  // Reset only what the previous run touched.
  for (std::size_t k : touched_) {
    dist_[k] = kInf;
    pred_[k] = -1;
    hops_[k] = kNoHops;
    settled_[k] = 0;
  }
  touched_.clear();
  order_.clear();

  const bool early_stop = !targets.empty();
  std::size_t targets_left = target_count;

  std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>> heap;
  dist_[source] = 0.0;
  hops_[source] = 0;
  touched_.push_back(source);
  heap.push({0.0, 0, source});

  const int nx = grid_.nx();
  const int ny = grid_.ny();
  while (!heap.empty()) {
    const HeapEntry top = heap.top();
    heap.pop();
    const std::size_t u = top.node;
    if (settled_[u] || top.dist != dist_[u] || top.hops != hops_[u]) continue;
    settled_[u] = 1;
    order_.push_back(u);
    if (early_stop && targets[u] && --targets_left == 0) break;

    const int iu = grid_.col(u);
    const int ju = grid_.row(u);
    const double wu = weight[u];
    const double du = dist_[u];
    const std::int32_t hv = hops_[u] + 1;
    for (const Neighbor& nb : stencil_) {
      const int iv = iu + nb.di;
      const int jv = ju + nb.dj;
      if (iv < 0 || iv >= nx || jv < 0 || jv >= ny) continue;
      const std::size_t v = grid_.index(iv, jv);
      if (settled_[v]) continue;
      const double dv = du + nb.length * ((wu + weight[v]) * 0.5);
      if (dist_[v] == kInf) touched_.push_back(v);
      if (dv < dist_[v] || (dv == dist_[v] && hv < hops_[v])) {
        dist_[v] = dv;
        hops_[v] = hv;
        pred_[v] = static_cast<std::int64_t>(u);
        heap.push({dv, hv, v});
      } else if (dv == dist_[v] && hv == hops_[v] && static_cast<std::int64_t>(u) < pred_[v]) {
        pred_[v] = static_cast<std::int64_t>(u);
      }
    }
  }
}

GeodesicResult geodesic_from(std::size_t source, const ScalarField& weight) {
  for (double w : weight.values)
    if (!(w >= 0.0)) throw std::invalid_argument("geodesic weights must be non-negative");
  GeodesicSolver solver(weight.grid);
  solver.run(source, weight.values);
  GeodesicResult r;
  r.source = source;
  r.dist.assign(solver.dist().begin(), solver.dist().end());
  r.pred.assign(solver.pred().begin(), solver.pred().end());
  r.hops.assign(solver.hops().begin(), solver.hops().end());
  r.order.assign(solver.order().begin(), solver.order().end());
  return r;
}

}  // namespace okc
