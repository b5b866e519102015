#include "okc/flow.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numeric>

#include "okc/dct_solver.hpp"
#include "okc/field_io.hpp"
#include "okc/poisson.hpp"

namespace okc {

void StopRule::validate() const {
  if (max_steps < 0) throw std::invalid_argument("stop.max_steps must be >= 0");
  if (!(du_tol > 0.0)) throw std::invalid_argument("stop.du_tol must be > 0");
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace

struct FlowStepper::Impl {
  Grid2D grid;
  NeumannSpectral spectral;
  double tol;
  std::size_t n;
  // BiCGStab work vectors.
  std::vector<double> x, b, r, rhat, p, phat, v, s, shat, t, tmp, diag, forcing, stab;

  Impl(const Grid2D& g, double solver_tol) : grid(g), spectral(g), tol(solver_tol), n(g.size()) {
    for (auto* vec : {&x, &b, &r, &rhat, &p, &phat, &v, &s, &shat, &t, &tmp, &diag, &forcing, &stab}) vec->assign(n, 0.0);
  }

  // out = alpha_t in - L(-(eps/c0) L in + diag * in)
  void apply(std::span<const double> in, std::span<double> out, double alpha_t, double ecoef) {
    apply_laplacian_neumann(grid, in, tmp);
    for (std::size_t k = 0; k < n; ++k) tmp[k] = -ecoef * tmp[k] + diag[k] * in[k];
    apply_laplacian_neumann(grid, tmp, out);
    for (std::size_t k = 0; k < n; ++k) out[k] = alpha_t * in[k] - out[k];
  }
};

FlowStepper::FlowStepper(const Grid2D& grid, double solver_tol) : impl_(std::make_unique<Impl>(grid, solver_tol)) {}
FlowStepper::~FlowStepper() = default;
FlowStepper::FlowStepper(FlowStepper&&) noexcept = default;
FlowStepper& FlowStepper::operator=(FlowStepper&&) noexcept = default;

StepInfo FlowStepper::advance(FlowState& state, const PairSampling& sampling) {
  Impl& m = *impl_;
  if (!(state.u.grid == m.grid)) throw std::invalid_argument("flow state grid does not match stepper grid");
  const ModelParams& prm = state.params;
  const std::size_t n = m.n;
  const double tau = prm.tau;
  const double alpha_t = 1.0 / tau + prm.lambda;
  const double ecoef = prm.eps / kC0;
  const double well_scale = 1.0 / (kC0 * prm.eps);
  const std::vector<double>& u_old = state.u.values;

  // Connectedness forcing at u^{n-1}, linearized about u^{n-1} with its
  // diagonal curvature: f + S (u^n - u^{n-1}). The S u^n part joins the
  // implicit diagonal, so the forcing stored here is f - S u^{n-1}.
  std::fill(m.forcing.begin(), m.forcing.end(), 0.0);
  std::fill(m.stab.begin(), m.stab.end(), 0.0);
  const std::uint64_t stream = static_cast<std::uint64_t>(state.step) * 2;
  auto add_penalty = [&](double zeta, Phase phase, std::uint64_t offset) {
    if (zeta <= 0.0) return;
    const ConnectednessResult c = connectedness(state.u, phase, prm, sampling, true, stream + offset);
    const double scale = prm.penalty_scale(zeta);
    for (std::size_t k = 0; k < n; ++k) {
      const double sk = scale * (*c.curvature)[k];
      m.forcing[k] += scale * (*c.gradient)[k] - sk * u_old[k];
      m.stab[k] += sk;
    }
  };
  add_penalty(prm.zeta1, Phase::one, 0);
  add_penalty(prm.zeta2, Phase::zero, 1);

  double diag_mean = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    m.diag[k] = well_scale * linearized_well_coefficient(u_old[k]) + m.stab[k];
    diag_mean += m.diag[k];
  }
  diag_mean = std::max(0.0, diag_mean / static_cast<double>(n));

  // b = u_old / tau + lambda m_bar + L forcing
  apply_laplacian_neumann(m.grid, m.forcing, m.b);
  for (std::size_t k = 0; k < n; ++k) m.b[k] += u_old[k] / tau + prm.lambda * prm.m_bar;

  auto precondition = [&](std::span<const double> in, std::span<double> out) {
    m.spectral.solve_quadratic(in, out, alpha_t, diag_mean, ecoef);
  };

  // Right-preconditioned BiCGStab from x0 = u_old.
  StepInfo info;
  std::copy(u_old.begin(), u_old.end(), m.x.begin());
  m.apply(m.x, m.r, alpha_t, ecoef);
  for (std::size_t k = 0; k < n; ++k) m.r[k] = m.b[k] - m.r[k];
  m.rhat = m.r;
  std::fill(m.p.begin(), m.p.end(), 0.0);
  std::fill(m.v.begin(), m.v.end(), 0.0);
  const double bnorm = norm(m.b);
  const double target = m.tol * (bnorm > 0.0 ? bnorm : 1.0);
  double rho = 1.0, alpha = 1.0, omega = 1.0;
  double rnorm = norm(m.r);
  constexpr int kMaxIterations = 1000;
  int it = 0;
  while (rnorm > target) {
    if (it >= kMaxIterations)
      throw FlowError(fmt::format("linear solve failed at step {} (relative residual {:.3e})", state.step + 1,
                                  rnorm / bnorm),
                      state.step + 1);
    const double rho_new = dot(m.rhat, m.r);
    if (rho_new == 0.0 || omega == 0.0) {
      // Breakdown: restart with the current residual as shadow vector.
      m.rhat = m.r;
      std::fill(m.p.begin(), m.p.end(), 0.0);
      std::fill(m.v.begin(), m.v.end(), 0.0);
      rho = alpha = omega = 1.0;
      ++it;
      continue;
    }
    const double beta = (rho_new / rho) * (alpha / omega);
    rho = rho_new;
    for (std::size_t k = 0; k < n; ++k) m.p[k] = m.r[k] + beta * (m.p[k] - omega * m.v[k]);
    precondition(m.p, m.phat);
    m.apply(m.phat, m.v, alpha_t, ecoef);
    alpha = rho / dot(m.rhat, m.v);
    for (std::size_t k = 0; k < n; ++k) m.s[k] = m.r[k] - alpha * m.v[k];
    ++it;
    if (norm(m.s) <= target) {
      for (std::size_t k = 0; k < n; ++k) m.x[k] += alpha * m.phat[k];
      m.r = m.s;
      rnorm = norm(m.r);
      break;
    }
    precondition(m.s, m.shat);
    m.apply(m.shat, m.t, alpha_t, ecoef);
    const double tt = dot(m.t, m.t);
    omega = tt > 0.0 ? dot(m.t, m.s) / tt : 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      m.x[k] += alpha * m.phat[k] + omega * m.shat[k];
      m.r[k] = m.s[k] - omega * m.t[k];
    }
    rnorm = norm(m.r);
  }
  info.krylov_iterations = it;
  info.residual = bnorm > 0.0 ? rnorm / bnorm : rnorm;

  // The constant mode of the exact solution is known in closed form; pin it so
  // mass is conserved to round-off rather than to the solver tolerance.
  const double old_sum = std::accumulate(u_old.begin(), u_old.end(), 0.0);
  const double target_sum = (old_sum / tau + static_cast<double>(n) * prm.lambda * prm.m_bar) / alpha_t;
  const double shift = (target_sum - std::accumulate(m.x.begin(), m.x.end(), 0.0)) / static_cast<double>(n);
  for (double& val : m.x) val += shift;

  if (!all_finite(m.x))
    throw FlowError(fmt::format("non-finite values in u at step {}", state.step + 1), state.step + 1);

  double du = 0.0;
  for (std::size_t k = 0; k < n; ++k) du = std::max(du, std::abs(m.x[k] - u_old[k]));
  info.du_max = du;

  // w = -(eps/c0) L u + diag u + forcing
  apply_laplacian_neumann(m.grid, m.x, state.w.values);
  for (std::size_t k = 0; k < n; ++k)
    state.w[k] = -ecoef * state.w[k] + m.diag[k] * m.x[k] + m.forcing[k];

  std::copy(m.x.begin(), m.x.end(), state.u.values.begin());
  state.step += 1;
  state.time += tau;
  return info;
}

FlowState step(const FlowState& state, const PairSampling& sampling) {
  FlowStepper stepper(state.u.grid);
  FlowState next = state;
  stepper.advance(next, sampling);
  return next;
}

EnergyRow energy_row(const FlowState& state, const PairSampling& sampling) {
  EnergyRow row;
  row.step = state.step;
  row.time = state.time;
  const ModelParams& p = state.params;
  row.energy = ok_energy(state.u, p);
  const std::uint64_t stream = static_cast<std::uint64_t>(state.step) * 2;
  if (p.zeta1 > 0.0)
    row.energy.c1_term = p.penalty_scale(p.zeta1) *
                         connectedness(state.u, Phase::one, p, sampling, false, stream).value;
  if (p.zeta2 > 0.0)
    row.energy.c2_term = p.penalty_scale(p.zeta2) *
                         connectedness(state.u, Phase::zero, p, sampling, false, stream + 1).value;
  row.energy.refresh_total();
  return row;
}

Trajectory run(const ScalarField& initial, ModelParams p, const StopRule& stop, const PairSampling& sampling,
               const RunOptions& options) {
  stop.validate();
  sampling.validate();
  p.m_bar = mean(initial);
  p.validate();

  Trajectory traj{FlowState(initial, p), {}, StopReason::max_steps, 0.0};
  FlowState& state = traj.final_state;
  FlowStepper stepper(initial.grid);

  const bool snapshots = options.snapshot_every > 0 && !options.snapshot_dir.empty();
  auto snapshot = [&] {
    if (snapshots)
      write_field(options.snapshot_dir / fmt::format("u_{}.dat", state.step), state.u);
  };
  auto log = [&] {
    traj.rows.push_back(energy_row(state, sampling));
    return options.on_log ? options.on_log(state, traj.rows.back()) : true;
  };

  snapshot();
  bool keep_going = log();
  while (keep_going && state.step < stop.max_steps) {
    const StepInfo info = stepper.advance(state, sampling);
    traj.last_du_rate = info.du_max / p.tau;
    const bool converged = traj.last_du_rate < stop.du_tol;
    const bool last = converged || state.step >= stop.max_steps;
    if (snapshots && (state.step % options.snapshot_every == 0 || last)) snapshot();
    if ((options.log_every > 0 && state.step % options.log_every == 0) || last) keep_going = log();
    if (converged) {
      traj.reason = StopReason::converged;
      break;
    }
  }
  return traj;
}

std::string energy_csv_header() { return "step,time,interface,well,nonlocal,c1,c2,total,mass"; }

std::string energy_csv_row(const EnergyRow& row) {
  const EnergyBreakdown& e = row.energy;
  return fmt::format("{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}", row.step, row.time,
                     e.interface, e.well, e.nonlocal, e.c1_term, e.c2_term, e.total, e.mass);
}

}  // namespace okc
