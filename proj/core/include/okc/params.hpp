#pragma once

#include <cmath>
#include <optional>

namespace okc {

// Modica-Mortola normalization 1/(6 sqrt 2): one flat interface costs its length.
inline const double kC0 = 1.0 / (6.0 * std::sqrt(2.0));

struct ModelParams {
  double eps = 0.02;
  double lambda = 0.0;
  double tau = 1e-6;
  double kappa = 2.0;
  double zeta1 = 0.0;
  double zeta2 = 0.0;
  // Threshold of the connectedness weights; when unset, eps^s_exponent is used.
  std::optional<double> alpha;
  double s_exponent = 0.25;
  double m_bar = 0.0;

  static double c0() { return kC0; }
  double alpha_value() const { return alpha ? *alpha : std::pow(eps, s_exponent); }
  // Normalizes the integral of beta over [1 - alpha, 1] to one.
  double c1() const {
    const double a = alpha_value();
    return 6.0 / (a * a * a);
  }
  // zeta_k * eps^{-kappa}
  double penalty_scale(double zeta) const { return zeta * std::pow(eps, -kappa); }

  // Throws std::invalid_argument naming the offending field.
  void validate() const;

  bool operator==(const ModelParams&) const = default;
};

}  // namespace okc
