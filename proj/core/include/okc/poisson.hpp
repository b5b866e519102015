#pragma once

#include <stdexcept>

#include "okc/grid.hpp"

namespace okc {

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double residual, int iterations)
      : std::runtime_error(what), residual_(residual), iterations_(iterations) {}
  double residual() const { return residual_; }
  int iterations() const { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

struct PoissonSolution {
  ScalarField phi;
  int iterations = 0;
  double residual = 0.0;  // relative L2 residual
  // Set when the source violated the compatibility condition and was projected to zero mean.
  bool projected = false;
};

// Solves -L phi = rhs with the Neumann Laplacian by conjugate gradients in the
// zero-mean subspace. The returned phi has zero integral.
PoissonSolution solve_neumann_poisson(const ScalarField& rhs, double tol = 1e-10, int max_iterations = 0);

// integrate(phi * v) with phi = (-L)^{-1} v.
double hminus1_norm_sq(const ScalarField& v, double tol = 1e-10);
double hminus1_inner(const ScalarField& v, const ScalarField& w, double tol = 1e-10);

}  // namespace okc
