#pragma once

#include <filesystem>
#include <string_view>
#include <vector>

#include "rpst/simulation.hpp"

namespace rpst {

// Sweep files are flat key/value tables:
//
//   # comment
//   test   = rpst
//   n      = [100, 500]
//   psi    = [arctan, log1p, "power:3"]
//
// Each value is a scalar or a bracketed list; lists expand to the Cartesian
// product of all keys. Unknown or repeated keys are errors. Cells are emitted
// with keys varying in the order of kSweepKeys, the last one fastest.
inline constexpr std::string_view kSweepKeys[] = {
    "test", "family", "lomax_shape", "t_df", "rho",   "n",     "n1",   "balance",  "theta",
    "psi",  "q",      "eps",         "split", "delta", "alpha", "reps", "reference", "center"};

std::vector<SimConfig> parse_sweep_config(std::string_view text);
std::vector<SimConfig> load_sweep_config(const std::filesystem::path& path);

}  // namespace rpst
