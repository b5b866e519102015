#pragma once

#include <vector>

#include "okc/grid.hpp"
#include "okc/shape.hpp"

namespace okc {

// P(E) + 2 St(E). For a union of disks the connector is the Steiner tree of
// the centers with each spoke shortened by the radius of the disk it leaves.
double connected_perimeter(const ShapeSpec& shape);

struct LogInteraction {
  double value = 0.0;   // Richardson extrapolation of the two levels
  double coarse = 0.0;  // n_quad tiling
  double fine = 0.0;    // 2 n_quad tiling
};

// Integral of log(1/|x - y|) over E x E by midpoint quadrature on an
// n_quad x n_quad tiling of the bounding box, with cells weighted by their
// covered area fraction. The self-cell term uses the closed form for a disk
// of equal area, pi^2 rho^4 (1/4 - log rho).
LogInteraction log_interaction_levels(const ShapeSpec& shape, int n_quad);
double log_interaction(const ShapeSpec& shape, int n_quad);

// pi^2 R^4 (1/4 - log R): exact value for a disk of radius R.
double disk_log_interaction(double radius);

// connected_perimeter + lambda * log_interaction
double sharp_energy(const ShapeSpec& shape, double lambda, int n_quad);

struct BoundReport {
  double lambda = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double leading = 0.0;
};

// Two-sided bound on the minimal connected energy at mass pi for large lambda.
BoundReport scaling_bounds(double lambda);

// The thin rectangle [0, r] x [0, pi/r] with r = pi^2 lambda.
Rectangle scaling_competitor(double lambda);

struct Diagnostics {
  bool empty = true;
  int components = 0;
  double diameter = 0.0;
  double area = 0.0;       // area enclosed by the threshold contour
  double perimeter = 0.0;  // length of the threshold contour
  double deficit = 0.0;    // P / (2 sqrt(pi A)) - 1, meaningful for one component
  double concentration = 0.0;
  double concentration_radius = 0.0;
};

// Superlevel-set diagnostics of a field: 8-connected components of
// {u > threshold}, the maximal distance between superlevel cell centers, the
// isoperimetric deficit from a marching-squares contour, and the largest
// superlevel area inside any ball of the given radius centered at a node.
Diagnostics diagnostics(const ScalarField& u, double threshold = 0.5, double concentration_radius = 0.1);

// Per-node component labels (-1 outside the superlevel set).
std::vector<int> label_components(const ScalarField& u, double threshold, int* count = nullptr);

}  // namespace okc
