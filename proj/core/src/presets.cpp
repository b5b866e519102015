#include "okc/presets.hpp"

#include <cmath>
#include <stdexcept>

namespace okc {

std::vector<std::string> preset_names() { return {"exp1", "exp2", "exp3"}; }

RunConfig preset(std::string_view name) {
  RunConfig c;
  c.params.kappa = 2.0;
  c.stop = StopRule{};
  c.sampling = PairSampling{};
  c.log_every = 100;
  c.snapshot_every = 5000;
  if (name == "exp1") {
    c.grid = {214, 214, {-0.5, 0.5, -0.5, 0.5}};
    c.params.eps = 8e-3;
    c.params.tau = 9.5e-9;
    c.params.lambda = 10606;
    c.params.alpha = 0.35;
    c.params.zeta1 = 3.0;
    c.params.zeta2 = 0.0;
    c.initial.kind = PolarCosine{0.02, 0.45, 2};
  } else if (name == "exp2") {
    c.grid = {214, 214, {-0.5, 0.5, -0.5, 0.5}};
    c.params.eps = 4e-3;
    c.params.tau = 4.7e-9;
    c.params.lambda = 14849;
    c.params.alpha = 0.35;
    c.params.zeta1 = 1.0;
    c.params.zeta2 = 0.0;
    c.initial.kind = PolarCosine{0.01, 0.35, 2};
  } else if (name == "exp3") {
    c.grid = {374, 374, {-1.0, 1.0, -1.0, 1.0}};
    c.params.eps = 3e-3;
    c.params.tau = 3e-9;
    c.params.lambda = 20000;
    c.params.alpha = 0.068;
    c.params.zeta1 = 0.01;
    c.params.zeta2 = 0.01;
    c.initial.kind = PolarCosine{0.4, 0.2, 2};
  } else {
    throw std::invalid_argument("unknown preset '" + std::string(name) + "' (expected exp1, exp2 or exp3)");
  }
  c.initial.smoothing = Smoothing::tanh;
  c.output_dir = std::string("out/") + std::string(name);
  realize_mean(c);
  return c;
}

void apply_scale(RunConfig& config, int k) {
  if (k < 1) throw std::invalid_argument("scale must be >= 1");
  if (k == 1) return;
  config.grid.nx = std::max(4, static_cast<int>(std::lround(config.grid.nx / static_cast<double>(k))));
  config.grid.ny = std::max(4, static_cast<int>(std::lround(config.grid.ny / static_cast<double>(k))));
  config.params.tau *= static_cast<double>(k) * k;
  realize_mean(config);
}

}  // namespace okc
