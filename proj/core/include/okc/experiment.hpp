#pragma once

#include <iosfwd>

#include "okc/config.hpp"
#include "okc/flow.hpp"
#include "okc/oracle.hpp"

namespace okc {

struct RunSummary {
  Trajectory trajectory;
  Diagnostics final_diagnostics;
};

// Runs the flow described by `config` and writes into config.output_dir:
// energies.csv, u_<step>.dat snapshots (when snapshot_every > 0),
// config.ini (the effective configuration) and summary.txt. Progress lines go
// to `progress` when given.
RunSummary execute(const RunConfig& config, std::ostream* progress = nullptr);

}  // namespace okc
