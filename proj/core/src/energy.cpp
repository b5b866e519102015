#include "okc/energy.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "okc/poisson.hpp"

namespace okc {

void ModelParams::validate() const {
  auto fail = [](const std::string& field, const std::string& why) {
    throw std::invalid_argument("params." + field + ": " + why);
  };
  if (!(eps > 0.0)) fail("eps", "must be > 0");
  if (!(lambda >= 0.0)) fail("lambda", "must be >= 0");
  if (!(tau > 0.0)) fail("tau", "must be > 0");
  if (!(kappa > 0.0)) fail("kappa", "must be > 0");
  if (!(zeta1 >= 0.0)) fail("zeta1", "must be >= 0");
  if (!(zeta2 >= 0.0)) fail("zeta2", "must be >= 0");
  if (!(s_exponent > 0.0 && s_exponent < 0.5)) fail("s_exponent", "must lie in (0, 1/2)");
  const double a = alpha_value();
  if (!(a > 0.0 && a < 0.5)) fail("alpha", "must lie in (0, 1/2), got " + std::to_string(a));
  if (!std::isfinite(m_bar)) fail("m_bar", "must be finite");
}

double interface_energy(const ScalarField& u, double eps) {
  const Grid2D& g = u.grid;
  // Face jumps squared / h^2, times the cell area: hy/hx for x-faces, hx/hy for y-faces.
  const double wx = g.hy() / g.hx();
  const double wy = g.hx() / g.hy();
  double sx = 0.0;
  double sy = 0.0;
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i + 1 < g.nx(); ++i) {
      const double d = u(i + 1, j) - u(i, j);
      sx += d * d;
    }
  }
  for (int j = 0; j + 1 < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      const double d = u(i, j + 1) - u(i, j);
      sy += d * d;
    }
  }
  return (eps / (2.0 * kC0)) * (wx * sx + wy * sy);
}

EnergyBreakdown ok_energy(const ScalarField& u, const ModelParams& p, double tol) {
  EnergyBreakdown e;
  e.interface = interface_energy(u, p.eps);

  double well = 0.0;
  for (double s : u.values) well += double_well(s);
  e.well = well * u.grid.cell_area() / (kC0 * p.eps);

  if (p.lambda > 0.0) {
    ScalarField v(u.grid);
    for (std::size_t k = 0; k < u.size(); ++k) v[k] = u[k] - p.m_bar;
    e.nonlocal = 0.5 * p.lambda * std::max(0.0, hminus1_norm_sq(v, tol));
  }
  e.mass = integrate(u);
  e.refresh_total();
  return e;
}

}  // namespace okc
