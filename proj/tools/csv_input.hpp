#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "rpst/ranks.hpp"

namespace rpst::cli {

struct TwoSampleData {
  std::vector<double> group1;
  std::vector<double> group2;
};

// Header "value,group", groups 1 and 2.
TwoSampleData read_two_sample_csv(const std::filesystem::path& path);

// Header "x,y".
std::vector<Pair> read_paired_csv(const std::filesystem::path& path);

}  // namespace rpst::cli
