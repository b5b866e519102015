#pragma once

#include "okc/grid.hpp"
#include "okc/params.hpp"

namespace okc {

struct EnergyBreakdown {
  double interface = 0.0;
  double well = 0.0;
  double nonlocal = 0.0;
  double c1_term = 0.0;
  double c2_term = 0.0;
  double total = 0.0;
  double mass = 0.0;

  void refresh_total() { total = interface + well + nonlocal + c1_term + c2_term; }
};

// W(s) = s^2 (s-1)^2 / 4
inline double double_well(double s) {
  const double t = s * (s - 1.0);
  return 0.25 * t * t;
}
inline double double_well_prime(double s) { return 0.5 * s * (s - 1.0) * (2.0 * s - 1.0); }

// Interface, well and nonlocal terms; connectedness terms are left at zero.
EnergyBreakdown ok_energy(const ScalarField& u, const ModelParams& p, double tol = 1e-10);

// (eps / 2 c0) * sum over interior faces of squared value jumps, scaled by the
// face-to-cell aspect ratio. Equals -(eps / 2 c0) * integrate(u * Lu).
double interface_energy(const ScalarField& u, double eps);

}  // namespace okc
