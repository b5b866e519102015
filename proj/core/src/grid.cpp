#include "okc/grid.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace okc {

Grid2D::Grid2D(int nx, int ny, Extents extents) : nx_(nx), ny_(ny), extents_(extents) {
  if (nx <= 0 || ny <= 0)
    throw std::invalid_argument("grid dimensions must be positive, got " + std::to_string(nx) + "x" +
                                std::to_string(ny));
  if (!(extents.x_max > extents.x_min) || !(extents.y_max > extents.y_min))
    throw std::invalid_argument("grid extents must satisfy x_max > x_min and y_max > y_min");
  hx_ = extents.width() / nx;
  hy_ = extents.height() / ny;
}

Grid2D create_grid(int nx, int ny, Extents extents) { return Grid2D(nx, ny, extents); }

ScalarField::ScalarField(const Grid2D& g, std::vector<double> v) : grid(g), values(std::move(v)) {
  if (values.size() != grid.size())
    throw std::invalid_argument("field size " + std::to_string(values.size()) + " does not match grid size " +
                                std::to_string(grid.size()));
}

double integrate(const ScalarField& f) {
  return std::accumulate(f.values.begin(), f.values.end(), 0.0) * f.grid.cell_area();
}

double mean(const ScalarField& f) { return integrate(f) / f.grid.area(); }

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

bool all_finite(std::span<const double> v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

void apply_laplacian_neumann(const Grid2D& g, std::span<const double> in, std::span<double> out) {
  const int nx = g.nx();
  const int ny = g.ny();
  const double cx = 1.0 / (g.hx() * g.hx());
  const double cy = 1.0 / (g.hy() * g.hy());
  for (int j = 0; j < ny; ++j) {
    const std::size_t row = static_cast<std::size_t>(j) * nx;
    const double* c = in.data() + row;
    // Reflected ghosts: f_{-1} = f_0 and f_{n} = f_{n-1}.
    const double* s = j > 0 ? c - nx : c;
    const double* n = j + 1 < ny ? c + nx : c;
    double* o = out.data() + row;
    for (int i = 0; i < nx; ++i) {
      const double w = i > 0 ? c[i - 1] : c[i];
      const double e = i + 1 < nx ? c[i + 1] : c[i];
      o[i] = cx * (w - 2.0 * c[i] + e) + cy * (s[i] - 2.0 * c[i] + n[i]);
    }
  }
}

ScalarField laplacian_neumann(const ScalarField& f) {
  ScalarField out(f.grid);
  apply_laplacian_neumann(f.grid, f.values, out.values);
  return out;
}

}  // namespace okc
