#include "okc/initial.hpp"

#include <cmath>
#include <stdexcept>

#include "okc/field_io.hpp"

namespace okc {
namespace {

double profile(double inside_distance, double eps, Smoothing smoothing) {
  if (smoothing == Smoothing::none) return inside_distance > 0.0 ? 1.0 : 0.0;
  return 0.5 * (1.0 + std::tanh(inside_distance / (2.0 * std::sqrt(2.0) * eps)));
}

}  // namespace

ScalarField realize(const InitialCondition& ic, const Grid2D& grid, double eps) {
  if (const auto* pc = std::get_if<PolarCosine>(&ic.kind)) {
    return ScalarField::from_function(grid, [&](double x, double y) {
      const double r = std::hypot(x, y);
      const double theta = std::atan2(y, x);
      return profile(pc->r0 + pc->a * std::cos(pc->k * theta) - r, eps, ic.smoothing);
    });
  }
  if (const auto* d = std::get_if<DiskInitial>(&ic.kind)) {
    if (!(d->radius > 0.0)) throw std::invalid_argument("initial.radius must be > 0");
    return ScalarField::from_function(grid, [&](double x, double y) {
      return profile(d->radius - std::hypot(x - d->center.x, y - d->center.y), eps, ic.smoothing);
    });
  }
  const auto& file = std::get<FieldFile>(ic.kind);
  ScalarField f = read_field(file.path);
  if (!(f.grid == grid))
    throw std::invalid_argument("initial field " + file.path.string() + " does not match the configured grid");
  for (double v : f.values)
    if (v < 0.0 || v > 1.0) throw std::invalid_argument("initial field " + file.path.string() + " has values outside [0, 1]");
  return f;
}

}  // namespace okc
