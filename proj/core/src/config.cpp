#include "okc/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace okc {

namespace pt = boost::property_tree;

void RunConfig::validate() const {
  try {
    (void)grid.make();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }
  try {
    params.validate();
    stop.validate();
    sampling.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (log_every < 0) throw ConfigError("run.log_every must be >= 0");
  if (snapshot_every < 0) throw ConfigError("run.snapshot_every must be >= 0");
  if (const auto* pc = std::get_if<PolarCosine>(&initial.kind)) {
    if (pc->k < 0) throw ConfigError("initial.k must be >= 0");
  }
  if (const auto* d = std::get_if<DiskInitial>(&initial.kind)) {
    if (!(d->radius > 0.0)) throw ConfigError("initial.radius must be > 0");
  }
}

namespace {

const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"grid", {"nx", "ny", "x_min", "x_max", "y_min", "y_max"}},
      {"params", {"eps", "lambda", "tau", "kappa", "zeta1", "zeta2", "alpha", "s_exponent"}},
      {"initial", {"kind", "r0", "a", "k", "center_x", "center_y", "radius", "path", "smoothing"}},
      {"run",
       {"max_steps", "du_tol", "mode", "max_sources", "rng_seed", "output_dir", "log_every", "snapshot_every"}},
  };
  return keys;
}

template <typename T>
T get(const pt::ptree& section, const std::string& sec, const std::string& key, T fallback) {
  const auto node = section.get_child_optional(key);
  if (!node) return fallback;
  const auto value = node->get_value_optional<T>();
  if (!value) throw ConfigError(fmt::format("{}.{}: cannot parse '{}'", sec, key, node->data()));
  return *value;
}

std::string num(double v) { return fmt::format("{:.17g}", v); }

}  // namespace

RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  pt::ptree tree;
  std::istringstream is{std::string(text)};
  try {
    pt::ini_parser::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(fmt::format("config line {}: {}", e.line(), e.message()));
  }

  for (const auto& [name, section] : tree) {
    const auto it = allowed_keys().find(name);
    if (it == allowed_keys().end()) {
      if (section.empty() && !section.data().empty())
        throw ConfigError(fmt::format("key '{}' outside of any section", name));
      throw ConfigError(fmt::format("unknown section [{}]", name));
    }
    for (const auto& [key, value] : section)
      if (!it->second.contains(key)) throw ConfigError(fmt::format("unknown key '{}' in [{}]", key, name));
  }

  RunConfig c;
  const pt::ptree empty;
  const auto& grid = tree.get_child("grid", empty);
  c.grid.nx = get(grid, "grid", "nx", c.grid.nx);
  c.grid.ny = get(grid, "grid", "ny", c.grid.ny);
  c.grid.extents.x_min = get(grid, "grid", "x_min", c.grid.extents.x_min);
  c.grid.extents.x_max = get(grid, "grid", "x_max", c.grid.extents.x_max);
  c.grid.extents.y_min = get(grid, "grid", "y_min", c.grid.extents.y_min);
  c.grid.extents.y_max = get(grid, "grid", "y_max", c.grid.extents.y_max);

  const auto& params = tree.get_child("params", empty);
  ModelParams& p = c.params;
  p.eps = get(params, "params", "eps", p.eps);
  p.lambda = get(params, "params", "lambda", p.lambda);
  p.tau = get(params, "params", "tau", p.tau);
  p.kappa = get(params, "params", "kappa", p.kappa);
  p.zeta1 = get(params, "params", "zeta1", p.zeta1);
  p.zeta2 = get(params, "params", "zeta2", p.zeta2);
  p.s_exponent = get(params, "params", "s_exponent", p.s_exponent);
  if (params.count("alpha")) p.alpha = get(params, "params", "alpha", 0.0);

  const auto& init = tree.get_child("initial", empty);
  const std::string kind = get<std::string>(init, "initial", "kind", "polar_cosine");
  if (kind == "polar_cosine") {
    PolarCosine pc;
    pc.r0 = get(init, "initial", "r0", pc.r0);
    pc.a = get(init, "initial", "a", pc.a);
    pc.k = get(init, "initial", "k", pc.k);
    c.initial.kind = pc;
  } else if (kind == "disk") {
    DiskInitial d;
    d.center.x = get(init, "initial", "center_x", d.center.x);
    d.center.y = get(init, "initial", "center_y", d.center.y);
    d.radius = get(init, "initial", "radius", d.radius);
    c.initial.kind = d;
  } else if (kind == "field_file") {
    FieldFile f;
    f.path = get<std::string>(init, "initial", "path", "");
    if (f.path.empty()) throw ConfigError("initial.path is required for kind=field_file");
    if (f.path.is_relative() && !base_dir.empty()) f.path = base_dir / f.path;
    c.initial.kind = f;
  } else {
    throw ConfigError(fmt::format("initial.kind: unknown kind '{}'", kind));
  }
  const std::string smoothing = get<std::string>(init, "initial", "smoothing", "tanh");
  if (smoothing == "tanh") {
    c.initial.smoothing = Smoothing::tanh;
  } else if (smoothing == "none") {
    c.initial.smoothing = Smoothing::none;
  } else {
    throw ConfigError(fmt::format("initial.smoothing: expected tanh or none, got '{}'", smoothing));
  }

  const auto& run = tree.get_child("run", empty);
  c.stop.max_steps = get(run, "run", "max_steps", c.stop.max_steps);
  c.stop.du_tol = get(run, "run", "du_tol", c.stop.du_tol);
  const std::string mode = get<std::string>(run, "run", "mode", "stratified");
  if (mode == "all") {
    c.sampling.mode = PairSampling::Mode::all;
  } else if (mode == "stratified") {
    c.sampling.mode = PairSampling::Mode::stratified;
  } else {
    throw ConfigError(fmt::format("run.mode: expected all or stratified, got '{}'", mode));
  }
  c.sampling.max_sources = get(run, "run", "max_sources", c.sampling.max_sources);
  c.sampling.rng_seed = get(run, "run", "rng_seed", c.sampling.rng_seed);
  c.output_dir = get<std::string>(run, "run", "output_dir", c.output_dir.string());
  c.log_every = get(run, "run", "log_every", c.log_every);
  c.snapshot_every = get(run, "run", "snapshot_every", c.snapshot_every);

  c.validate();
  try {
    realize_mean(c);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("initial: ") + e.what());
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file " + path.string());
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str(), path.parent_path());
}

void realize_mean(RunConfig& config) {
  const Grid2D g = config.grid.make();
  config.params.m_bar = mean(realize(config.initial, g, config.params.eps));
}

std::string render_config(const RunConfig& c) {
  std::string out;
  auto line = [&](const std::string& key, const std::string& value) { out += key + " = " + value + "\n"; };
  out += "[grid]\n";
  line("nx", std::to_string(c.grid.nx));
  line("ny", std::to_string(c.grid.ny));
  line("x_min", num(c.grid.extents.x_min));
  line("x_max", num(c.grid.extents.x_max));
  line("y_min", num(c.grid.extents.y_min));
  line("y_max", num(c.grid.extents.y_max));

  const ModelParams& p = c.params;
  out += "\n[params]\n";
  line("eps", num(p.eps));
  line("lambda", num(p.lambda));
  line("tau", num(p.tau));
  line("kappa", num(p.kappa));
  line("zeta1", num(p.zeta1));
  line("zeta2", num(p.zeta2));
  if (p.alpha) line("alpha", num(*p.alpha));
  line("s_exponent", num(p.s_exponent));
  out += "; derived: m_bar = " + num(p.m_bar) + ", c1 = " + num(p.c1()) + "\n";

  out += "\n[initial]\n";
  if (const auto* pc = std::get_if<PolarCosine>(&c.initial.kind)) {
    line("kind", "polar_cosine");
    line("r0", num(pc->r0));
    line("a", num(pc->a));
    line("k", std::to_string(pc->k));
  } else if (const auto* d = std::get_if<DiskInitial>(&c.initial.kind)) {
    line("kind", "disk");
    line("center_x", num(d->center.x));
    line("center_y", num(d->center.y));
    line("radius", num(d->radius));
  } else {
    line("kind", "field_file");
    line("path", std::get<FieldFile>(c.initial.kind).path.string());
  }
  line("smoothing", c.initial.smoothing == Smoothing::tanh ? "tanh" : "none");

  out += "\n[run]\n";
  line("max_steps", std::to_string(c.stop.max_steps));
  line("du_tol", num(c.stop.du_tol));
  line("mode", c.sampling.mode == PairSampling::Mode::all ? "all" : "stratified");
  line("max_sources", std::to_string(c.sampling.max_sources));
  line("rng_seed", std::to_string(c.sampling.rng_seed));
  line("output_dir", c.output_dir.string());
  line("log_every", std::to_string(c.log_every));
  line("snapshot_every", std::to_string(c.snapshot_every));
  return out;
}

}  // namespace okc
