#pragma once

#include <filesystem>
#include <variant>

#include "okc/grid.hpp"
#include "okc/shape.hpp"

namespace okc {

// The set {r < r0 + a cos(k theta)} in polar coordinates about the origin.
struct PolarCosine {
  double r0 = 0.0;
  double a = 0.0;
  int k = 2;
  bool operator==(const PolarCosine&) const = default;
};

struct DiskInitial {
  Point center;
  double radius = 0.1;
  bool operator==(const DiskInitial&) const = default;
};

struct FieldFile {
  std::filesystem::path path;
  bool operator==(const FieldFile&) const = default;
};

enum class Smoothing { tanh, none };

struct InitialCondition {
  std::variant<PolarCosine, DiskInitial, FieldFile> kind = PolarCosine{};
  Smoothing smoothing = Smoothing::tanh;
  bool operator==(const InitialCondition&) const = default;
};

// Samples the initial condition on the grid. Sets become either a sharp
// indicator or the optimal profile (1 + tanh(d / (2 sqrt2 eps))) / 2 of the
// signed inside distance d. Field files must match the grid and lie in [0, 1].
ScalarField realize(const InitialCondition& ic, const Grid2D& grid, double eps);

}  // namespace okc
