#pragma once

#include <cstdint>
#include <optional>

#include "okc/grid.hpp"
#include "okc/params.hpp"

namespace okc {

// Which phase the penalty keeps connected: `one` is {u ~ 1}, `zero` is {u ~ 0}
// (evaluated on 1 - u).
enum class Phase { one, zero };

struct PairSampling {
  enum class Mode { all, stratified };
  Mode mode = Mode::stratified;
  int max_sources = 64;
  std::uint64_t rng_seed = 0;

  void validate() const;
  bool operator==(const PairSampling&) const = default;
};

// Phase detector: zero up to 1 - alpha, then (c1/2)(s - 1 + alpha)^2.
inline double beta_eps(double s, double alpha, double c1) {
  const double t = s - 1.0 + alpha;
  return t > 0.0 ? 0.5 * c1 * t * t : 0.0;
}
inline double beta_eps_prime(double s, double alpha, double c1) {
  const double t = s - 1.0 + alpha;
  return t > 0.0 ? c1 * t : 0.0;
}

// Path cost weight: (1/2)(s - 1 + alpha)^2 below 1 - alpha, zero above.
inline double psi_eps(double s, double alpha) {
  const double t = s - 1.0 + alpha;
  return t < 0.0 ? 0.5 * t * t : 0.0;
}
inline double psi_eps_prime(double s, double alpha) {
  const double t = s - 1.0 + alpha;
  return t < 0.0 ? t : 0.0;
}

struct ConnectednessResult {
  double value = 0.0;
  // L2 representative of the variation: integrate(gradient * phi) is the
  // directional derivative of `value` along phi. Present when requested.
  std::optional<ScalarField> gradient;
  // Diagonal of the Hessian with the shortest-path trees held fixed, in the
  // same units as the gradient. Nonnegative; used to stabilize the flow.
  std::optional<ScalarField> curvature;
  int sources = 0;
  int candidates = 0;  // nodes with beta > 0
};

// Discrete C(u) = sum_x sum_y beta(x) beta(y) d(x, y) hx^2 hy^2 with d the
// grid geodesic distance weighted by psi. With stratified sampling the outer
// sum runs over a random subset of sources, reweighted to stay unbiased;
// `stream` decorrelates repeated draws with the same seed.
ConnectednessResult connectedness(const ScalarField& u, Phase phase, const ModelParams& p,
                                  const PairSampling& sampling, bool with_gradient, std::uint64_t stream = 0);

double connectedness_value(const ScalarField& u, Phase phase, const ModelParams& p, const PairSampling& sampling);
ScalarField connectedness_gradient(const ScalarField& u, Phase phase, const ModelParams& p,
                                   const PairSampling& sampling);

}  // namespace okc
