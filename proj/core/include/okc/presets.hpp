#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "okc/config.hpp"

namespace okc {

// Full-resolution configurations of the three reference experiments:
// exp1 and exp2 on (-1/2, 1/2)^2 with 214^2 cells, exp3 on (-1, 1)^2 with 374^2.
RunConfig preset(std::string_view name);
std::vector<std::string> preset_names();

// Divides the grid resolution by k and multiplies tau by k^2; refreshes m_bar.
void apply_scale(RunConfig& config, int k);

}  // namespace okc
