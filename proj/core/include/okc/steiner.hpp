#pragma once

#include <span>
#include <utility>
#include <vector>

#include "okc/shape.hpp"

namespace okc {

inline constexpr std::size_t kMaxSteinerTerminals = 8;

struct SteinerTree {
  // Terminals first (in input order), then Steiner points. Steiner points that
  // collapsed onto a terminal or onto each other have been merged away.
  std::vector<Point> points;
  std::size_t terminal_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  double length = 0.0;

  // Number of edges incident to point k.
  std::size_t degree(std::size_t k) const;
};

// Euclidean minimum spanning tree length (Prim).
double mst_length(std::span<const Point> points);

// Shortest network connecting 1 <= n <= 8 terminals. Exact closed forms for
// n <= 3; for larger n a branch-and-bound over full Steiner topologies with
// Smith's iteration for the Steiner point positions. Degenerate topologies
// (Steiner points on terminals) cover the non-full trees. The result never
// exceeds the MST length.
SteinerTree steiner_tree(std::span<const Point> terminals);
double steiner_length(std::span<const Point> terminals);

}  // namespace okc
