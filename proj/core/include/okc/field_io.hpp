#pragma once

#include <filesystem>
#include <iosfwd>

#include "okc/grid.hpp"

namespace okc {

// Text dump: header `FIELD nx ny x_min x_max y_min y_max`, then nx*ny values
// in row-major order with 17 significant digits.
void write_field(std::ostream& os, const ScalarField& f);
void write_field(const std::filesystem::path& path, const ScalarField& f);

ScalarField read_field(std::istream& is);
ScalarField read_field(const std::filesystem::path& path);

}  // namespace okc
