#include "okc/field_io.hpp"

#include <fmt/format.h>

#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace okc {

void write_field(std::ostream& os, const ScalarField& f) {
  const Grid2D& g = f.grid;
  const Extents& e = g.extents();
  os << fmt::format("FIELD {} {} {:.17g} {:.17g} {:.17g} {:.17g}\n", g.nx(), g.ny(), e.x_min, e.x_max, e.y_min,
                    e.y_max);
  for (int j = 0; j < g.ny(); ++j) {
    std::string line;
    for (int i = 0; i < g.nx(); ++i) {
      if (i > 0) line += ' ';
      line += fmt::format("{:.17g}", f(i, j));
    }
    line += '\n';
    os << line;
  }
}

void write_field(const std::filesystem::path& path, const ScalarField& f) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_field(os, f);
  if (!os) throw std::runtime_error("write failed for " + path.string());
}

ScalarField read_field(std::istream& is) {
  std::string tag;
  int nx = 0;
  int ny = 0;
  Extents e;
  if (!(is >> tag) || tag != "FIELD") throw std::runtime_error("field dump must start with 'FIELD'");
  if (!(is >> nx >> ny >> e.x_min >> e.x_max >> e.y_min >> e.y_max))
    throw std::runtime_error("malformed field header");
  Grid2D g(nx, ny, e);
  std::vector<double> values(g.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!(is >> values[k]))
      throw std::runtime_error("field dump truncated: expected " + std::to_string(values.size()) + " values, got " +
                               std::to_string(k));
  }
  if (!all_finite(values)) throw std::runtime_error("field dump contains non-finite values");
  return ScalarField(g, std::move(values));
}

ScalarField read_field(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open field file " + path.string());
  return read_field(is);
}

}  // namespace okc
