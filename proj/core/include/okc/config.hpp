#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "okc/connect.hpp"
#include "okc/flow.hpp"
#include "okc/grid.hpp"
#include "okc/initial.hpp"
#include "okc/params.hpp"

namespace okc {

struct GridSpec {
  int nx = 64;
  int ny = 64;
  Extents extents{-0.5, 0.5, -0.5, 0.5};
  Grid2D make() const { return Grid2D(nx, ny, extents); }
  bool operator==(const GridSpec&) const = default;
};

struct RunConfig {
  GridSpec grid;
  ModelParams params;
  InitialCondition initial;
  StopRule stop;
  PairSampling sampling;
  std::filesystem::path output_dir = "out";
  int log_every = 100;
  int snapshot_every = 0;

  void validate() const;
  bool operator==(const RunConfig&) const = default;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// INI text with sections [grid], [params], [initial], [run]. Unknown sections
// or keys are errors. Relative field_file paths resolve against base_dir.
// params.m_bar is set from the realized initial field.
RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

// Inverse of parse_config; doubles are written with 17 significant digits.
std::string render_config(const RunConfig& config);

// Sets params.m_bar to the mean of the realized initial condition.
void realize_mean(RunConfig& config);

}  // namespace okc
