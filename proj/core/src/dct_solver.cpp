#include "okc/dct_solver.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace okc {

struct NeumannSpectral::Plans {
  double* buf = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  Plans(int nx, int ny) {
    buf = fftw_alloc_real(static_cast<std::size_t>(nx) * ny);
    forward = fftw_plan_r2r_2d(ny, nx, buf, buf, FFTW_REDFT10, FFTW_REDFT10, FFTW_ESTIMATE);
    backward = fftw_plan_r2r_2d(ny, nx, buf, buf, FFTW_REDFT01, FFTW_REDFT01, FFTW_ESTIMATE);
  }
  ~Plans() {
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
    fftw_free(buf);
  }
  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;
};

NeumannSpectral::NeumannSpectral(const Grid2D& grid)
    : grid_(grid), eigenvalues_(grid.size()), plans_(std::make_unique<Plans>(grid.nx(), grid.ny())) {
  const int nx = grid.nx();
  const int ny = grid.ny();
  for (int q = 0; q < ny; ++q) {
    const double sy = std::sin(std::numbers::pi * q / (2.0 * ny));
    const double ey = 4.0 * sy * sy / (grid.hy() * grid.hy());
    for (int p = 0; p < nx; ++p) {
      const double sx = std::sin(std::numbers::pi * p / (2.0 * nx));
      eigenvalues_[grid.index(p, q)] = 4.0 * sx * sx / (grid.hx() * grid.hx()) + ey;
    }
  }
}

NeumannSpectral::~NeumannSpectral() = default;
NeumannSpectral::NeumannSpectral(NeumannSpectral&&) noexcept = default;
NeumannSpectral& NeumannSpectral::operator=(NeumannSpectral&&) noexcept = default;

void NeumannSpectral::solve_quadratic(std::span<const double> in, std::span<double> out, double c0, double c1,
                                      double c2) const {
  const std::size_t n = grid_.size();
  double* buf = plans_->buf;
  std::copy(in.begin(), in.end(), buf);
  fftw_execute(plans_->forward);
  // FFTW's REDFT10 followed by REDFT01 scales by 4 nx ny.
  const double norm = 1.0 / (4.0 * grid_.nx() * grid_.ny());
  for (std::size_t k = 0; k < n; ++k) {
    const double mu = eigenvalues_[k];
    const double symbol = c0 + mu * (c1 + mu * c2);
    buf[k] = symbol != 0.0 ? buf[k] * norm / symbol : 0.0;
  }
  fftw_execute(plans_->backward);
  std::copy(buf, buf + n, out.begin());
}

}  // namespace okc
