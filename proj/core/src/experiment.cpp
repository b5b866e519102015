#include "okc/experiment.hpp"

#include <fmt/format.h>

#include <filesystem>
#include <fstream>
#include <ostream>

#include "okc/field_io.hpp"

namespace okc {

RunSummary execute(const RunConfig& config, std::ostream* progress) {
  config.validate();
  namespace fs = std::filesystem;
  const fs::path dir = config.output_dir;
  fs::create_directories(dir);
  {
    std::ofstream os(dir / "config.ini");
    os << render_config(config);
  }

  const Grid2D grid = config.grid.make();
  const ScalarField u0 = realize(config.initial, grid, config.params.eps);

  std::ofstream csv(dir / "energies.csv");
  if (!csv) throw std::runtime_error("cannot write " + (dir / "energies.csv").string());
  csv << energy_csv_header() << '\n';

  RunOptions options;
  options.log_every = config.log_every;
  options.snapshot_every = config.snapshot_every;
  options.snapshot_dir = dir;
  options.on_log = [&](const FlowState& s, const EnergyRow& row) {
    csv << energy_csv_row(row) << '\n';
    if (progress)
      *progress << fmt::format("step {:>8}  t={:.4e}  E={:.8e}  mass={:.12e}\n", s.step, s.time, row.energy.total,
                               row.energy.mass);
    return true;
  };

  RunSummary summary{run(u0, config.params, config.stop, config.sampling, options), {}};
  const FlowState& fin = summary.trajectory.final_state;
  if (config.snapshot_every <= 0) write_field(dir / fmt::format("u_{}.dat", fin.step), fin.u);
  summary.final_diagnostics = diagnostics(fin.u, 0.5);

  const Diagnostics& d = summary.final_diagnostics;
  std::ofstream sum(dir / "summary.txt");
  sum << fmt::format("steps = {}\n", fin.step);
  sum << fmt::format("time = {:.17g}\n", fin.time);
  sum << fmt::format("stop_reason = {}\n",
                     summary.trajectory.reason == StopReason::converged ? "du_tol" : "max_steps");
  sum << fmt::format("stop_rule = max_steps {} du_tol {:.17g}\n", config.stop.max_steps, config.stop.du_tol);
  sum << fmt::format("last_du_rate = {:.17g}\n", summary.trajectory.last_du_rate);
  sum << fmt::format("m_bar = {:.17g}\n", fin.params.m_bar);
  sum << fmt::format("components = {}\n", d.components);
  sum << fmt::format("diameter = {:.17g}\n", d.diameter);
  sum << fmt::format("deficit = {:.17g}\n", d.deficit);
  sum << fmt::format("area = {:.17g}\n", d.area);
  if (progress)
    *progress << fmt::format("done: {} steps, {} component(s), diameter {:.4f}\n", fin.step, d.components,
                             d.diameter);
  return summary;
}

}  // namespace okc
