#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "okc/grid.hpp"

namespace okc {

// Shortest-path tree of the weighted 8-neighbor grid graph from one source.
// Edge cost between adjacent nodes a, b is |x_a - x_b| * (w_a + w_b) / 2 with
// |x_a - x_b| one of hx, hy, hypot(hx, hy).
//
// Labels are ordered lexicographically by (distance, hop count); among equal
// labels the lower node index is settled first and wins as predecessor. This
// keeps pred well defined on zero-weight plateaus. Hop counts are minimal over
// neighbors u with dist[u] + cost(u, v) == dist[v] exactly in floating point.
struct GeodesicResult {
  std::size_t source = 0;
  std::vector<double> dist;
  std::vector<std::int64_t> pred;  // -1 at the source and at unreached nodes
  std::vector<std::int32_t> hops;
  std::vector<std::size_t> order;  // settle order, source first
};

GeodesicResult geodesic_from(std::size_t source, const ScalarField& weight);

// Reusable Dijkstra state for repeated runs on one grid.
class GeodesicSolver {
 public:
  struct Neighbor {
    int di;
    int dj;
    double length;
  };

  explicit GeodesicSolver(const Grid2D& grid);

  const Grid2D& grid() const { return grid_; }
  const std::array<Neighbor, 8>& stencil() const { return stencil_; }

  // Runs from `source` with node weights `weight`. When `targets` is non-empty
  // the search stops once `target_count` flagged nodes have been settled.
  void run(std::size_t source, std::span<const double> weight, std::span<const std::uint8_t> targets = {},
           std::size_t target_count = 0);

  std::span<const double> dist() const { return dist_; }
  std::span<const std::int64_t> pred() const { return pred_; }
  std::span<const std::int32_t> hops() const { return hops_; }
  std::span<const std::size_t> order() const { return order_; }
  // Length of the grid edge between adjacent nodes a and b.
  double edge_length(std::size_t a, std::size_t b) const;

 private:
  Grid2D grid_;
  std::array<Neighbor, 8> stencil_;
  std::vector<double> dist_;
  std::vector<std::int64_t> pred_;
  std::vector<std::int32_t> hops_;
  std::vector<std::uint8_t> settled_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> touched_;
};

}  // namespace okc
