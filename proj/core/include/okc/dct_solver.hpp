#pragma once

#include <memory>
#include <span>
#include <vector>

#include "okc/grid.hpp"

namespace okc {

// Diagonalizes the cell-centered Neumann Laplacian with a 2-D DCT-II.
// Applies polynomials p(K) of K = -L and their inverses in O(N log N).
class NeumannSpectral {
 public:
  explicit NeumannSpectral(const Grid2D& grid);
  ~NeumannSpectral();
  NeumannSpectral(NeumannSpectral&&) noexcept;
  NeumannSpectral& operator=(NeumannSpectral&&) noexcept;
  NeumannSpectral(const NeumannSpectral&) = delete;
  NeumannSpectral& operator=(const NeumannSpectral&) = delete;

  const Grid2D& grid() const { return grid_; }
  // Eigenvalues of K in DCT coefficient layout (row-major like the field).
  std::span<const double> eigenvalues() const { return eigenvalues_; }

  // out = (c0 + c1 K + c2 K^2)^{-1} in. Modes with a zero symbol are zeroed.
  void solve_quadratic(std::span<const double> in, std::span<double> out, double c0, double c1, double c2) const;

 private:
  struct Plans;
  Grid2D grid_;
  std::vector<double> eigenvalues_;
  std::unique_ptr<Plans> plans_;
};

}  // namespace okc
