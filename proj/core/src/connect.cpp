#include "okc/connect.hpp"

#include <random>
#include <stdexcept>
#include <vector>

#include "okc/geodesic.hpp"

namespace okc {

void PairSampling::validate() const {
  if (max_sources < 1) throw std::invalid_argument("sampling.max_sources must be >= 1");
}

namespace {

struct Source {
  std::size_t node;
  double weight;  // inverse inclusion probability
};

std::vector<Source> choose_sources(const std::vector<std::size_t>& candidates, const PairSampling& sampling,
                                   std::uint64_t stream) {
  std::vector<Source> out;
  const std::size_t n = candidates.size();
  const std::size_t k = static_cast<std::size_t>(sampling.max_sources);
  if (sampling.mode == PairSampling::Mode::all || n <= k) {
    out.reserve(n);
    for (std::size_t c : candidates) out.push_back({c, 1.0});
    return out;
  }
  // One uniform pick per contiguous block of the index-sorted candidates;
  // row-major order makes the blocks horizontal bands.
  std::seed_seq seq{static_cast<std::uint32_t>(sampling.rng_seed), static_cast<std::uint32_t>(sampling.rng_seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::mt19937_64 rng(seq);
  out.reserve(k);
  for (std::size_t s = 0; s < k; ++s) {
    const std::size_t lo = s * n / k;
    const std::size_t hi = (s + 1) * n / k;
    std::uniform_int_distribution<std::size_t> pick(lo, hi - 1);
    out.push_back({candidates[pick(rng)], static_cast<double>(hi - lo)});
  }
  return out;
}

}  // namespace

ConnectednessResult connectedness(const ScalarField& u, Phase phase, const ModelParams& p,
                                  const PairSampling& sampling, bool with_gradient, std::uint64_t stream) {
  sampling.validate();
  const Grid2D& g = u.grid;
  const std::size_t n = g.size();
  const double alpha = p.alpha_value();
  const double c1 = p.c1();
  const double sign = phase == Phase::one ? 1.0 : -1.0;

  std::vector<double> beta(n), dbeta(n), psi(n), dpsi(n);
  std::vector<std::uint8_t> is_target(n, 0);
  std::vector<std::size_t> candidates;
  for (std::size_t k = 0; k < n; ++k) {
    const double s = phase == Phase::one ? u[k] : 1.0 - u[k];
    beta[k] = beta_eps(s, alpha, c1);
    dbeta[k] = sign * beta_eps_prime(s, alpha, c1);
    psi[k] = psi_eps(s, alpha);
    dpsi[k] = sign * psi_eps_prime(s, alpha);
    if (beta[k] > 0.0) {
      is_target[k] = 1;
      candidates.push_back(k);
    }
  }

  ConnectednessResult result;
  result.candidates = static_cast<int>(candidates.size());
  if (with_gradient) {
    result.gradient.emplace(g);
    result.curvature.emplace(g);
  }
  if (candidates.empty()) return result;

  const std::vector<Source> sources = choose_sources(candidates, sampling, stream);
  result.sources = static_cast<int>(sources.size());
  const bool symmetrized = sources.size() < candidates.size();

  GeodesicSolver solver(g);
  std::vector<double> subtree(n, 0.0);
  std::vector<double> acc(with_gradient ? n : 0, 0.0);
  std::vector<double> curv(with_gradient ? n : 0, 0.0);
  // beta' and psi' are linear on their supports, so each deposit c * f'(u_k)
  // has second derivative c * f'' with f'' = c1 or 1 there.
  auto beta_curv = [&](std::size_t k) { return beta[k] > 0.0 ? c1 : 0.0; };
  auto psi_curv = [&](std::size_t k) { return psi[k] > 0.0 ? 1.0 : 0.0; };
  double value = 0.0;

  for (const Source& src : sources) {
    const std::size_t x = src.node;
    solver.run(x, psi, is_target, candidates.size());
    const auto dist = solver.dist();
    const auto pred = solver.pred();
    const auto order = solver.order();

    double pair_sum = 0.0;
    for (std::size_t y : order)
      if (is_target[y]) pair_sum += beta[y] * dist[y];
    value += src.weight * beta[x] * pair_sum;
    if (!with_gradient) continue;

    const double wb = src.weight * beta[x];
    // Chain rule through beta. With every source present the source-side term
    // is deposited exactly; under subsampling the target-side term is doubled,
    // which has the same expectation because d is symmetric.
    if (!symmetrized) {
      acc[x] += src.weight * dbeta[x] * pair_sum;
      curv[x] += src.weight * beta_curv(x) * pair_sum;
    }
    const double target_factor = symmetrized ? 2.0 * wb : wb;
    for (std::size_t y : order)
      if (is_target[y]) {
        acc[y] += target_factor * dbeta[y] * dist[y];
        curv[y] += target_factor * beta_curv(y) * dist[y];
      }

    // Path terms: each tree edge (pred(v), v) carries the beta mass of the
    // subtree below v; its cost depends on psi at both ends.
    for (std::size_t y : order) subtree[y] = is_target[y] ? beta[y] : 0.0;
    for (std::size_t k = order.size(); k-- > 1;) {
      const std::size_t v = order[k];
      const std::size_t q = static_cast<std::size_t>(pred[v]);
      subtree[q] += subtree[v];
      if (subtree[v] == 0.0) continue;
      const double t = wb * subtree[v] * 0.5 * solver.edge_length(q, v);
      acc[q] += t * dpsi[q];
      acc[v] += t * dpsi[v];
      curv[q] += t * psi_curv(q);
      curv[v] += t * psi_curv(v);
    }
  }

  const double a = g.cell_area();
  result.value = value * a * a;
  if (with_gradient) {
    // d value / d u_k divided by the cell area.
    auto& grad = result.gradient->values;
    auto& diag = result.curvature->values;
    for (std::size_t k = 0; k < n; ++k) {
      grad[k] = acc[k] * a;
      diag[k] = curv[k] * a;
    }
  }
  return result;
}

double connectedness_value(const ScalarField& u, Phase phase, const ModelParams& p, const PairSampling& sampling) {
  return connectedness(u, phase, p, sampling, false).value;
}

ScalarField connectedness_gradient(const ScalarField& u, Phase phase, const ModelParams& p,
                                   const PairSampling& sampling) {
  return std::move(*connectedness(u, phase, p, sampling, true).gradient);
}

}  // namespace okc
