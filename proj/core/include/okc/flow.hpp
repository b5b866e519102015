#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "okc/connect.hpp"
#include "okc/energy.hpp"
#include "okc/grid.hpp"
#include "okc/params.hpp"

namespace okc {

struct FlowState {
  ScalarField u;
  ScalarField w;  // chemical potential
  std::int64_t step = 0;
  double time = 0.0;
  ModelParams params;

  FlowState(ScalarField u0, const ModelParams& p) : u(std::move(u0)), w(u.grid), params(p) {}
};

struct StopRule {
  std::int64_t max_steps = 200000;
  double du_tol = 1e-6;  // stop when max|u^n - u^{n-1}| / tau < du_tol

  void validate() const;
  bool operator==(const StopRule&) const = default;
};

class FlowError : public std::runtime_error {
 public:
  FlowError(const std::string& what, std::int64_t step) : std::runtime_error(what), step_(step) {}
  std::int64_t step() const { return step_; }

 private:
  std::int64_t step_;
};

// W'(u^n) is replaced by a(u^{n-1}) u^n with this coefficient.
inline double linearized_well_coefficient(double u_prev) {
  return 0.5 * ((u_prev - 1.0) * (u_prev - 1.0) + u_prev * (u_prev - 1.0));
}

struct StepInfo {
  int krylov_iterations = 0;
  double residual = 0.0;
  double du_max = 0.0;  // max |u^n - u^{n-1}|
};

// Semi-implicit stepper. Owns the spectral preconditioner for its grid.
//
//   (u^n - u^{n-1}) / tau = L w^n - lambda (u^n - m_bar)
//   w^n = -(eps/c0) L u^n + a(u^{n-1}) u^n / (c0 eps) + forcing(u^{n-1})
//
// where the forcing collects the connectedness variations evaluated at the
// previous iterate. Eliminating w leaves one nonsymmetric system in u, solved
// by BiCGStab preconditioned with the constant-coefficient part.
class FlowStepper {
 public:
  explicit FlowStepper(const Grid2D& grid, double solver_tol = 1e-9);
  ~FlowStepper();
  FlowStepper(FlowStepper&&) noexcept;
  FlowStepper& operator=(FlowStepper&&) noexcept;

  StepInfo advance(FlowState& state, const PairSampling& sampling);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Convenience wrapper constructing a one-off stepper.
FlowState step(const FlowState& state, const PairSampling& sampling);

struct EnergyRow {
  std::int64_t step = 0;
  double time = 0.0;
  EnergyBreakdown energy;
};

enum class StopReason { max_steps, converged };

struct RunOptions {
  int log_every = 100;
  int snapshot_every = 0;                // 0 disables snapshots
  std::filesystem::path snapshot_dir;    // u_<step>.dat files go here
  // Called after each logged row; return false to stop early.
  std::function<bool(const FlowState&, const EnergyRow&)> on_log;
};

struct Trajectory {
  FlowState final_state;
  std::vector<EnergyRow> rows;
  StopReason reason = StopReason::max_steps;
  double last_du_rate = 0.0;  // max|du| / tau of the final step
};

// Full energy including the weighted connectedness terms.
EnergyRow energy_row(const FlowState& state, const PairSampling& sampling);

// Iterates until the stop rule fires. m_bar is reset to the initial mean.
Trajectory run(const ScalarField& initial, ModelParams p, const StopRule& stop, const PairSampling& sampling,
               const RunOptions& options);

// CSV header and row in the normative column order.
std::string energy_csv_header();
std::string energy_csv_row(const EnergyRow& row);

}  // namespace okc
