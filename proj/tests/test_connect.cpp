#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "okc/connect.hpp"
#include "okc/geodesic.hpp"
#include "support.hpp"

using namespace okc;

namespace {

ModelParams params_with_alpha(double alpha) {
  ModelParams p;
  p.alpha = alpha;
  return p;
}

const PairSampling kAll{PairSampling::Mode::all, 64, 0};

// Two unit plateaus on the left and right, joined by nothing: u = 0 in a
// vertical channel of the given width (in cells) between them.
ScalarField two_bumps(const Grid2D& g, int channel) {
  ScalarField u(g, 0.0);
  const int mid = g.nx() / 2;
  for (int j = 8; j < g.ny() - 8; ++j)
    for (int i = 2; i < g.nx() - 2; ++i)
      if (i < mid - channel / 2 - channel % 2 || i >= mid + channel / 2) u(i, j) = 1.0;
  return u;
}

}  // namespace

TEST_CASE("beta and psi profiles") {
  const double alpha = 0.35;
  const double c1 = 6.0 / (alpha * alpha * alpha);
  CHECK(c1 == doctest::Approx(139.9417).epsilon(1e-6));
  CHECK(beta_eps(1.0 - alpha, alpha, c1) == 0.0);
  CHECK(beta_eps(0.2, alpha, c1) == 0.0);
  CHECK(beta_eps(1.0, alpha, c1) == doctest::Approx(8.5714).epsilon(1e-4));
  CHECK(psi_eps(1.0, alpha) == 0.0);
  CHECK(psi_eps(1.0 - alpha, alpha) == 0.0);
  CHECK(psi_eps(0.0, alpha) == doctest::Approx(0.21125).epsilon(1e-14));

  // Simpson's rule is exact for the quadratic piece.
  const int n = 64;
  const double a = 1.0 - alpha, h = alpha / n;
  double s = beta_eps(a, alpha, c1) + beta_eps(1.0, alpha, c1);
  for (int k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * beta_eps(a + k * h, alpha, c1);
  CHECK(s * h / 3.0 == doctest::Approx(1.0).epsilon(1e-12));

  for (double x : {0.1, 0.5, 0.8, 0.95}) {
    const double d = 1e-6;
    CHECK(beta_eps_prime(x, alpha, c1) ==
          doctest::Approx((beta_eps(x + d, alpha, c1) - beta_eps(x - d, alpha, c1)) / (2 * d)).epsilon(1e-6));
    CHECK(psi_eps_prime(x, alpha) == doctest::Approx((psi_eps(x + d, alpha) - psi_eps(x - d, alpha)) / (2 * d)).epsilon(1e-6));
  }
}

TEST_CASE("geodesic distances on simple weights") {
  const Grid2D g = create_grid(8, 8, {0, 1, 0, 1});
  const double h = g.hx();
  const GeodesicResult zero = geodesic_from(0, ScalarField(g, 0.0));
  for (double d : zero.dist) CHECK(d == 0.0);

  const GeodesicResult one = geodesic_from(0, ScalarField(g, 1.0));
  CHECK(one.dist[g.index(1, 1)] == doctest::Approx(std::sqrt(2.0) * h).epsilon(1e-15));
  CHECK(one.dist[g.index(7, 7)] == doctest::Approx(7 * std::sqrt(2.0) * h).epsilon(1e-14));
  CHECK(one.dist[g.index(7, 0)] == doctest::Approx(7 * h).epsilon(1e-14));
  CHECK(one.pred[0] == -1);
  CHECK(one.order.front() == 0);
  CHECK(one.order.size() == g.size());

  ScalarField neg(g, 1.0);
  neg[5] = -0.1;
  CHECK_THROWS_AS(geodesic_from(0, neg), std::invalid_argument);
}

TEST_CASE("geodesic solver matches Bellman-Ford including ties") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> dim(1, 8), level(0, 3);
  for (int trial = 0; trial < 60; ++trial) {
    const int nx = dim(rng), ny = dim(rng);
    const Grid2D g = create_grid(nx, ny, {0, 1.0 * nx, 0, 1.0 * ny});
    ScalarField w(g);
    for (double& v : w.values) v = 0.5 * level(rng);
    std::uniform_int_distribution<std::size_t> src(0, g.size() - 1);
    const std::size_t s = src(rng);
    const GeodesicResult a = geodesic_from(s, w);
    const GeodesicResult b = testing::bellman_ford(s, w);
    CHECK(a.dist == b.dist);
    CHECK(a.pred == b.pred);
    CHECK(a.hops == b.hops);
  }
}

TEST_CASE("geodesic metric axioms") {
  std::mt19937_64 rng(77);
  const Grid2D g = create_grid(12, 10, {0, 1.2, 0, 1});
  const ScalarField u = testing::random_smooth_field(g, rng);
  ScalarField w(g);
  for (std::size_t k = 0; k < g.size(); ++k) w[k] = psi_eps(u[k], 0.35);
  std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
  for (int t = 0; t < 20; ++t) {
    const std::size_t x = pick(rng), y = pick(rng), z = pick(rng);
    const GeodesicResult dx = geodesic_from(x, w), dy = geodesic_from(y, w);
    CHECK(dx.dist[x] == 0.0);
    CHECK(std::abs(dx.dist[y] - dy.dist[x]) <= 1e-12);
    CHECK(dx.dist[z] <= dx.dist[y] + dy.dist[z] + 1e-12);
  }
}

TEST_CASE("connectedness value") {
  const Grid2D g = create_grid(32, 32, {0, 1, 0, 1});
  const ModelParams p = params_with_alpha(0.35);

  SUBCASE("pure phase has no cost") {
    CHECK(connectedness_value(ScalarField(g, 1.0), Phase::one, p, kAll) == 0.0);
    CHECK(connectedness_value(ScalarField(g, 0.0), Phase::one, p, kAll) == 0.0);
    CHECK(connectedness_value(ScalarField(g, 0.0), Phase::zero, p, kAll) == 0.0);
    const ScalarField grad = connectedness_gradient(ScalarField(g, 1.0), Phase::one, p, kAll);
    CHECK(max_abs(grad.values) == 0.0);
  }
  SUBCASE("a connected phase costs nothing") {
    const ScalarField u = ScalarField::from_function(g, [](double x, double y) {
      return (std::abs(x - 0.5) < 0.1 || std::abs(y - 0.5) < 0.1) ? 1.0 : 0.0;
    });
    CHECK(connectedness_value(u, Phase::one, p, kAll) == 0.0);
  }
  SUBCASE("separated plateaus cost more when further apart") {
    const double narrow = connectedness_value(two_bumps(g, 2), Phase::one, p, kAll);
    const double wide = connectedness_value(two_bumps(g, 4), Phase::one, p, kAll);
    CHECK(narrow > 0.0);
    CHECK(wide > narrow);
  }
  SUBCASE("phase zero is phase one of the complement") {
    std::mt19937_64 rng(4);
    const ScalarField u = testing::random_smooth_field(g, rng);
    ScalarField c = u;
    for (double& v : c.values) v = 1.0 - v;
    CHECK(connectedness_value(u, Phase::zero, p, kAll) == doctest::Approx(connectedness_value(c, Phase::one, p, kAll)).epsilon(1e-14));
    const ScalarField gz = connectedness_gradient(u, Phase::zero, p, kAll);
    const ScalarField go = connectedness_gradient(c, Phase::one, p, kAll);
    for (std::size_t k = 0; k < g.size(); ++k) CHECK(gz[k] == doctest::Approx(-go[k]).epsilon(1e-12));
  }
}

TEST_CASE("connectedness gradient pushes the channel up") {
  const Grid2D g = create_grid(32, 32, {0, 1, 0, 1});
  const ModelParams p = params_with_alpha(0.35);
  const ScalarField u = two_bumps(g, 4);
  const ScalarField grad = connectedness_gradient(u, Phase::one, p, kAll);
  double channel_min = 0.0;
  for (int j = 8; j < 24; ++j)
    for (int i = 14; i < 18; ++i) {
      CHECK(grad(i, j) <= 0.0);
      channel_min = std::min(channel_min, grad(i, j));
    }
  CHECK(channel_min < 0.0);
}

TEST_CASE("connectedness gradient matches finite differences") {
  const Grid2D g = create_grid(16, 16, {0, 1, 0, 1});
  const ModelParams p = params_with_alpha(0.3);
  std::mt19937_64 rng(99);
  const ScalarField u = testing::random_smooth_field(g, rng, -0.05, 1.05);
  const ScalarField bump = testing::random_smooth_field(g, rng, -1.0, 1.0);
  const ScalarField grad = connectedness_gradient(u, Phase::one, p, kAll);
  const double h = 1e-6;
  ScalarField up = u, um = u;
  for (std::size_t k = 0; k < g.size(); ++k) {
    up[k] += h * bump[k];
    um[k] -= h * bump[k];
  }
  const double fd = (connectedness_value(up, Phase::one, p, kAll) - connectedness_value(um, Phase::one, p, kAll)) / (2 * h);
  double an = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) an += grad[k] * bump[k];
  an *= g.cell_area();
  CHECK(std::abs(fd) > 0.0);
  CHECK(an == doctest::Approx(fd).epsilon(1e-3));
}

TEST_CASE("curvature is the diagonal second derivative") {
  const Grid2D g = create_grid(16, 16, {0, 1, 0, 1});
  const ModelParams p = params_with_alpha(0.3);
  std::mt19937_64 rng(5);
  const ScalarField u = testing::random_smooth_field(g, rng, -0.05, 1.05);
  const ConnectednessResult r = connectedness(u, Phase::one, p, kAll, true);
  REQUIRE(r.curvature);
  for (double c : r.curvature->values) CHECK(c >= 0.0);
  // Away from the knee at 1 - alpha the gradient is locally linear in u_k.
  int checked = 0;
  for (std::size_t k = 0; k < g.size() && checked < 8; k += 7) {
    if (std::abs(u[k] - 0.7) < 0.05) continue;
    ScalarField v = u;
    const double h = 1e-5;
    v[k] += h;
    const ConnectednessResult rv = connectedness(v, Phase::one, p, kAll, true);
    const double fd = ((*rv.gradient)[k] - (*r.gradient)[k]) / h;
    const double c = (*r.curvature)[k];
    CHECK(std::abs(c - fd) <= 1e-4 * std::max(std::abs(c), std::abs(fd)) + 1e-9);
    ++checked;
  }
  CHECK(checked > 0);
}

TEST_CASE("stratified sampling is unbiased") {
  const Grid2D g = create_grid(24, 24, {0, 1, 0, 1});
  const ModelParams p = params_with_alpha(0.35);
  std::mt19937_64 rng(8);
  const ScalarField u = testing::random_smooth_field(g, rng);
  const ConnectednessResult exact = connectedness(u, Phase::one, p, kAll, false);
  REQUIRE(exact.candidates > 16);
  PairSampling s{PairSampling::Mode::stratified, 8, 42};
  double sum = 0.0;
  const int draws = 400;
  for (int k = 0; k < draws; ++k) {
    const ConnectednessResult r = connectedness(u, Phase::one, p, s, false, static_cast<std::uint64_t>(k));
    CHECK(r.sources == 8);
    sum += r.value;
  }
  CHECK(sum / draws == doctest::Approx(exact.value).epsilon(0.05));

  // Same seed and stream give the same estimate.
  CHECK(connectedness_value(u, Phase::one, p, s) == connectedness_value(u, Phase::one, p, s));
}

TEST_CASE("sampling validation") {
  PairSampling s;
  s.max_sources = 0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}
