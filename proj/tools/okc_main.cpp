// okc: phase-field runs, sharp-interface oracle evaluations and diagnostics.
#include <fmt/format.h>

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>

#include "okc/config.hpp"
#include "okc/experiment.hpp"
#include "okc/field_io.hpp"
#include "okc/oracle.hpp"
#include "okc/presets.hpp"

namespace {

constexpr int kUsageError = 2;

int cmd_run(const std::string& config_path, const std::string& preset_name, int scale,
            std::optional<double> zeta1, std::optional<double> zeta2, std::optional<std::int64_t> max_steps,
            const std::string& output, bool quiet) {
  okc::RunConfig cfg = !config_path.empty() ? okc::load_config(config_path) : okc::preset(preset_name);
  okc::apply_scale(cfg, scale);
  if (zeta1) cfg.params.zeta1 = *zeta1;
  if (zeta2) cfg.params.zeta2 = *zeta2;
  if (max_steps) cfg.stop.max_steps = *max_steps;
  if (!output.empty()) cfg.output_dir = output;
  const okc::RunSummary s = okc::execute(cfg, quiet ? nullptr : &std::cerr);
  std::cout << fmt::format("components={} diameter={:.6f} deficit={:.6f} steps={}\n", s.final_diagnostics.components,
                           s.final_diagnostics.diameter, s.final_diagnostics.deficit,
                           s.trajectory.final_state.step);
  return 0;
}

int cmd_bounds(double lmin, double lmax, int points, int n_quad, const std::string& output) {
  if (!(lmin > 0.0) || !(lmax >= lmin) || points < 1) throw CLI::ValidationError("bounds", "need 0 < lambda-min <= lambda-max and points >= 1");
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!output.empty()) {
    file.open(output);
    if (!file) throw std::runtime_error("cannot write " + output);
    os = &file;
  }
  *os << "lambda,lower,upper,leading,rect_energy\n";
  for (int k = 0; k < points; ++k) {
    const double t = points == 1 ? 0.0 : static_cast<double>(k) / (points - 1);
    const double lambda = lmin * std::pow(lmax / lmin, t);
    const okc::BoundReport b = okc::scaling_bounds(lambda);
    const double rect = okc::sharp_energy(okc::scaling_competitor(lambda), lambda, n_quad);
    *os << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", b.lambda, b.lower, b.upper, b.leading, rect);
  }
  return 0;
}

int cmd_oracle(const std::string& shape_text, double lambda, int n_quad) {
  const okc::ShapeSpec shape = okc::parse_shape(shape_text);
  const double cp = okc::connected_perimeter(shape);
  const double li = okc::log_interaction(shape, n_quad);
  std::cout << fmt::format("area={:.17g}\nperimeter={:.17g}\nconnected_perimeter={:.17g}\n", okc::area(shape),
                           okc::perimeter(shape), cp);
  std::cout << fmt::format("log_interaction={:.17g}\nenergy={:.17g}\n", li, cp + lambda * li);
  return 0;
}

int cmd_diag(const std::string& path, double threshold, double radius) {
  const okc::ScalarField u = okc::read_field(path);
  const okc::Diagnostics d = okc::diagnostics(u, threshold, radius);
  std::cout << fmt::format("components={}\n", d.components);
  if (!d.empty) {
    std::cout << fmt::format("diameter={:.17g}\nperimeter={:.17g}\narea={:.17g}\ndeficit={:.17g}\n", d.diameter,
                             d.perimeter, d.area, d.deficit);
    std::cout << fmt::format("concentration={:.17g}\nconcentration_radius={:.17g}\n", d.concentration,
                             d.concentration_radius);
  }
  std::cout << fmt::format("mass={:.17g}\n", okc::integrate(u));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Connected Ohta-Kawasaki phase-field simulator and sharp-interface oracle"};
  app.require_subcommand(1);

  std::string config_path, preset_name, output;
  int scale = 1;
  std::optional<double> zeta1, zeta2;
  std::optional<std::int64_t> max_steps;
  bool quiet = false;
  auto* run = app.add_subcommand("run", "Run the gradient flow");
  auto* cfg_opt = run->add_option("--config", config_path, "INI configuration file")->check(CLI::ExistingFile);
  auto* preset_opt = run->add_option("--preset", preset_name, "Preset name (exp1, exp2, exp3)")
                         ->check(CLI::IsMember({"exp1", "exp2", "exp3"}));
  cfg_opt->excludes(preset_opt);
  run->add_option("--scale", scale, "Divide resolution by k, multiply tau by k^2")->check(CLI::PositiveNumber);
  run->add_option("--zeta1", zeta1, "Override zeta1");
  run->add_option("--zeta2", zeta2, "Override zeta2");
  run->add_option("--max-steps", max_steps, "Override the step cap");
  run->add_option("--output", output, "Output directory");
  run->add_flag("--quiet", quiet, "No progress output");

  double lmin = 1.0, lmax = 100.0;
  int points = 10, n_quad = 256;
  std::string bounds_out;
  auto* bounds = app.add_subcommand("bounds", "Scaling bounds sweep as CSV");
  bounds->add_option("--lambda-min", lmin)->required();
  bounds->add_option("--lambda-max", lmax)->required();
  bounds->add_option("--points", points)->required();
  bounds->add_option("--n-quad", n_quad, "Quadrature resolution")->check(CLI::Range(16, 4096));
  bounds->add_option("--output", bounds_out, "CSV path (default stdout)");

  std::string shape_text;
  double lambda = 0.0;
  int oracle_quad = 256;
  auto* oracle = app.add_subcommand("oracle", "Evaluate the sharp-interface energy of a shape");
  oracle->add_option("--shape", shape_text,
                     "disk:R[,cx,cy] | rect:w,h[,x0,y0] | disks:cx,cy,r;... | polygon:x,y;...")
      ->required();
  oracle->add_option("--lambda", lambda, "Repulsion strength");
  oracle->add_option("--n-quad", oracle_quad)->check(CLI::Range(16, 4096));

  std::string field_path;
  double threshold = 0.5, radius = 0.1;
  auto* diag = app.add_subcommand("diag", "Superlevel-set diagnostics of a field dump");
  diag->add_option("--field", field_path)->required()->check(CLI::ExistingFile);
  diag->add_option("--threshold", threshold)->check(CLI::Range(0.0, 1.0));
  diag->add_option("--radius", radius, "Concentration radius");

  std::string show_name;
  int show_scale = 1;
  auto* show = app.add_subcommand("preset", "Print a preset as a config file");
  show->add_option("name", show_name)->required()->check(CLI::IsMember({"exp1", "exp2", "exp3"}));
  show->add_option("--scale", show_scale)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*run) {
      if (config_path.empty() && preset_name.empty()) {
        std::cerr << "run: one of --config or --preset is required\n" << run->help();
        return kUsageError;
      }
      return cmd_run(config_path, preset_name, scale, zeta1, zeta2, max_steps, output, quiet);
    }
    if (*bounds) return cmd_bounds(lmin, lmax, points, n_quad, bounds_out);
    if (*oracle) return cmd_oracle(shape_text, lambda, oracle_quad);
    if (*diag) return cmd_diag(field_path, threshold, radius);
    if (*show) {
      okc::RunConfig c = okc::preset(show_name);
      okc::apply_scale(c, show_scale);
      std::cout << okc::render_config(c);
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << '\n';
    return kUsageError;
  } catch (const okc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
