#pragma once

#include <iosfwd>
#include <string>

#include "kse2d/sim.hpp"

namespace kse2d {

/// Flat key-value config, one `key = value` per line, '#' comments.
/// Unknown keys are rejected (validation happens before any work starts).
SimConfig parse_sim_config(std::istream& is);
SimConfig load_sim_config(const std::string& path);

} // namespace kse2d
