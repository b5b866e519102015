#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace okc {

struct Extents {
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  double area() const { return width() * height(); }

  bool operator==(const Extents&) const = default;
};

// Uniform cell-centered grid. Node (i, j) sits at the center of cell (i, j):
// x_i = x_min + (i + 1/2) hx. Storage is row-major with x fastest,
// index(i, j) = j * nx + i.
class Grid2D {
 public:
  Grid2D(int nx, int ny, Extents extents);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  const Extents& extents() const { return extents_; }
  double hx() const { return hx_; }
  double hy() const { return hy_; }
  double cell_area() const { return hx_ * hy_; }
  double area() const { return extents_.area(); }
  std::size_t size() const { return static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_); }

  double x(int i) const { return extents_.x_min + (i + 0.5) * hx_; }
  double y(int j) const { return extents_.y_min + (j + 0.5) * hy_; }

  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx_) + static_cast<std::size_t>(i);
  }
  int col(std::size_t idx) const { return static_cast<int>(idx % static_cast<std::size_t>(nx_)); }
  int row(std::size_t idx) const { return static_cast<int>(idx / static_cast<std::size_t>(nx_)); }

  bool operator==(const Grid2D& other) const {
    return nx_ == other.nx_ && ny_ == other.ny_ && extents_ == other.extents_;
  }

 private:
  int nx_;
  int ny_;
  Extents extents_;
  double hx_;
  double hy_;
};

Grid2D create_grid(int nx, int ny, Extents extents);

// Nodal values on a Grid2D. Every public operation keeps values finite.
struct ScalarField {
  Grid2D grid;
  std::vector<double> values;

  explicit ScalarField(const Grid2D& g, double fill = 0.0) : grid(g), values(g.size(), fill) {}
  ScalarField(const Grid2D& g, std::vector<double> v);

  double& operator()(int i, int j) { return values[grid.index(i, j)]; }
  double operator()(int i, int j) const { return values[grid.index(i, j)]; }
  double& operator[](std::size_t k) { return values[k]; }
  double operator[](std::size_t k) const { return values[k]; }
  std::size_t size() const { return values.size(); }

  template <typename F>
  static ScalarField from_function(const Grid2D& g, F&& f) {
    ScalarField out(g);
    for (int j = 0; j < g.ny(); ++j)
      for (int i = 0; i < g.nx(); ++i) out(i, j) = f(g.x(i), g.y(j));
    return out;
  }
};

// Midpoint rule: sum(values) * hx * hy.
double integrate(const ScalarField& f);
double mean(const ScalarField& f);
double max_abs(std::span<const double> v);
bool all_finite(std::span<const double> v);

// 5-point Laplacian with reflecting ghost cells (zero normal derivative).
ScalarField laplacian_neumann(const ScalarField& f);
// Same operator on raw storage; out must not alias in.
void apply_laplacian_neumann(const Grid2D& g, std::span<const double> in, std::span<double> out);

}  // namespace okc
