#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "okc/oracle.hpp"

namespace okc {
namespace {

constexpr int kSubsamples = 16;

// Covered area fraction of every cell of an n x n tiling of the bounding box.
std::vector<double> coverage(const ShapeSpec& shape, const BoundingBox& bb, int n) {
  const double hx = (bb.x_max - bb.x_min) / n;
  const double hy = (bb.y_max - bb.y_min) / n;
  const double half_diag = 0.5 * std::hypot(hx, hy);
  std::vector<double> w(static_cast<std::size_t>(n) * n, 0.0);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const Point c{bb.x_min + (i + 0.5) * hx, bb.y_min + (j + 0.5) * hy};
      const double sd = signed_distance(shape, c);
      double frac;
      if (sd <= -half_diag) {
        frac = 1.0;
      } else if (sd >= half_diag) {
        frac = 0.0;
      } else {
        int inside = 0;
        for (int b = 0; b < kSubsamples; ++b)
          for (int a = 0; a < kSubsamples; ++a) {
            const Point q{bb.x_min + (i + (a + 0.5) / kSubsamples) * hx, bb.y_min + (j + (b + 0.5) / kSubsamples) * hy};
            if (signed_distance(shape, q) < 0.0) ++inside;
          }
        frac = static_cast<double>(inside) / (kSubsamples * kSubsamples);
      }
      w[static_cast<std::size_t>(j) * n + i] = frac;
    }
  }
  return w;
}

double quadrature(const ShapeSpec& shape, int n) {
  const BoundingBox bb = bounding_box(shape);
  const double hx = (bb.x_max - bb.x_min) / n;
  const double hy = (bb.y_max - bb.y_min) / n;
  const double cell = hx * hy;
  const std::vector<double> w = coverage(shape, bb, n);

  // Autocorrelation of the weights by zero-padded FFT.
  const int m = 2 * n;
  const std::size_t real_size = static_cast<std::size_t>(m) * m;
  const std::size_t complex_size = static_cast<std::size_t>(m) * (m / 2 + 1);
  double* buf = fftw_alloc_real(real_size);
  fftw_complex* spec = fftw_alloc_complex(complex_size);
  fftw_plan fwd = fftw_plan_dft_r2c_2d(m, m, buf, spec, FFTW_ESTIMATE);
  fftw_plan bwd = fftw_plan_dft_c2r_2d(m, m, spec, buf, FFTW_ESTIMATE);
  std::fill(buf, buf + real_size, 0.0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) buf[static_cast<std::size_t>(j) * m + i] = w[static_cast<std::size_t>(j) * n + i];
  fftw_execute(fwd);
  for (std::size_t k = 0; k < complex_size; ++k) {
    const double re = spec[k][0];
    const double im = spec[k][1];
    spec[k][0] = re * re + im * im;
    spec[k][1] = 0.0;
  }
  fftw_execute(bwd);
  const double norm = 1.0 / static_cast<double>(real_size);

  const double rho = std::sqrt(cell / std::numbers::pi);
  const double self = disk_log_interaction(rho);
  double sum = 0.0;
  for (int dj = -(n - 1); dj <= n - 1; ++dj) {
    const int row = (dj + m) % m;
    for (int di = -(n - 1); di <= n - 1; ++di) {
      const int col = (di + m) % m;
      const double r = buf[static_cast<std::size_t>(row) * m + col] * norm;
      if (di == 0 && dj == 0) {
        sum += r * self;
      } else {
        sum -= r * cell * cell * std::log(std::hypot(di * hx, dj * hy));
      }
    }
  }
  fftw_destroy_plan(fwd);
  fftw_destroy_plan(bwd);
  fftw_free(buf);
  fftw_free(spec);
  return sum;
}

}  // namespace

double disk_log_interaction(double radius) {
  const double r2 = radius * radius;
  return std::numbers::pi * std::numbers::pi * r2 * r2 * (0.25 - std::log(radius));
}

LogInteraction log_interaction_levels(const ShapeSpec& shape, int n_quad) {
  validate(shape);
  if (n_quad < 16) throw std::invalid_argument("n_quad must be >= 16");
  LogInteraction li;
  li.coarse = quadrature(shape, n_quad);
  li.fine = quadrature(shape, 2 * n_quad);
  // Second-order Richardson step.
  li.value = li.fine + (li.fine - li.coarse) / 3.0;
  return li;
}

double log_interaction(const ShapeSpec& shape, int n_quad) { return log_interaction_levels(shape, n_quad).value; }

}  // namespace okc
