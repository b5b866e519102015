#include "okc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "okc/steiner.hpp"

namespace okc {

double connected_perimeter(const ShapeSpec& shape) {
  const double p = perimeter(shape);
  const auto* u = std::get_if<UnionOfDisks>(&shape);
  if (u == nullptr || u->disks.size() < 2) return p;
  std::vector<Point> centers;
  for (const Disk& d : u->disks) centers.push_back(d.center);
  const SteinerTree tree = steiner_tree(centers);
  // Spokes start on the disk boundary, not at the center.
  double connector = tree.length;
  for (const auto& [a, b] : tree.edges) {
    const double len = distance(tree.points[a], tree.points[b]);
    double cut = 0.0;
    if (a < tree.terminal_count) cut += u->disks[a].radius;
    if (b < tree.terminal_count) cut += u->disks[b].radius;
    connector -= std::min(len, cut);
  }
  return p + 2.0 * std::max(connector, 0.0);
}

double sharp_energy(const ShapeSpec& shape, double lambda, int n_quad) {
  const double cp = connected_perimeter(shape);
  if (lambda == 0.0) return cp;
  return cp + lambda * log_interaction(shape, n_quad);
}

BoundReport scaling_bounds(double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
  constexpr double pi = std::numbers::pi;
  const double a = pi * pi * lambda;
  BoundReport r;
  r.lambda = lambda;
  r.leading = -a * std::log(a / 2.0);
  r.lower = a * (1.0 - std::log(a / 2.0));
  r.upper = r.lower + 2.0 * a + 2.0 * pi / lambda;
  return r;
}

Rectangle scaling_competitor(double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
  const double r = std::numbers::pi * std::numbers::pi * lambda;
  return Rectangle{{0.0, 0.0}, r, std::numbers::pi / r};
}

}  // namespace okc
