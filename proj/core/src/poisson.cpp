#include "okc/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace okc {
namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

void remove_mean(std::vector<double>& v) {
  const double m = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  for (double& x : v) x -= m;
}

}  // namespace

PoissonSolution solve_neumann_poisson(const ScalarField& rhs, double tol, int max_iterations) {
  const Grid2D& g = rhs.grid;
  const std::size_t n = g.size();
  PoissonSolution sol{ScalarField(g), 0, 0.0, false};

  std::vector<double> b = rhs.values;
  if (std::abs(integrate(rhs)) > tol * g.area()) sol.projected = true;
  remove_mean(b);

  const double bnorm = std::sqrt(dot(b, b));
  if (bnorm == 0.0) return sol;

  if (max_iterations <= 0) max_iterations = static_cast<int>(std::max<std::size_t>(1000, 4 * n));

  // CG on K = -L, which is SPD on the zero-mean subspace.
  std::vector<double>& x = sol.phi.values;
  std::vector<double> r = b;
  std::vector<double> p = r;
  std::vector<double> kp(n);
  double rr = dot(r, r);
  int it = 0;
  while (std::sqrt(rr) > tol * bnorm) {
    if (it >= max_iterations) {
      const double res = std::sqrt(rr) / bnorm;
      throw SolverError("Neumann Poisson solve did not converge (relative residual " + std::to_string(res) + ")",
                        res, it);
    }
    apply_laplacian_neumann(g, p, kp);
    for (double& v : kp) v = -v;
    const double pkp = dot(p, kp);
    const double alpha = rr / pkp;
    for (std::size_t k = 0; k < n; ++k) {
      x[k] += alpha * p[k];
      r[k] -= alpha * kp[k];
    }
    remove_mean(r);
    const double rr_new = dot(r, r);
    const double beta = rr_new / rr;
    rr = rr_new;
    for (std::size_t k = 0; k < n; ++k) p[k] = r[k] + beta * p[k];
    ++it;
  }
  remove_mean(x);
  sol.iterations = it;
  sol.residual = std::sqrt(rr) / bnorm;
  return sol;
}

double hminus1_inner(const ScalarField& v, const ScalarField& w, double tol) {
  const PoissonSolution sol = solve_neumann_poisson(v, tol);
  double s = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) s += sol.phi[k] * w[k];
  return s * v.grid.cell_area();
}

double hminus1_norm_sq(const ScalarField& v, double tol) { return hminus1_inner(v, v, tol); }

}  // namespace okc
