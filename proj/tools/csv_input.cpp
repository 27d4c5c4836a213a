#include "csv_input.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <string_view>

#include "rpst/error.hpp"

namespace rpst::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

[[noreturn]] void malformed(const std::filesystem::path& path, std::size_t line,
                            const std::string& message) {
  throw Error(ErrorCode::invalid_argument,
              path.string() + ":" + std::to_string(line) + ": " + message);
}

// Reads a two-column CSV with the given header and calls row(a, b, line).
template <typename RowFn>
void read_two_columns(const std::filesystem::path& path, std::string_view header, RowFn&& row) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::invalid_argument, "cannot open '" + path.string() + "'");
  std::string line;
  std::size_t line_no = 0;
  bool seen_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = trim(line);
    if (line_no == 1 && text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
    if (text.empty()) continue;
    const auto comma = text.find(',');
    if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos) {
      malformed(path, line_no, "expected exactly two comma-separated fields");
    }
    const std::string_view a = trim(text.substr(0, comma));
    const std::string_view b = trim(text.substr(comma + 1));
    if (!seen_header) {
      if (std::string(a) + "," + std::string(b) != header) {
        malformed(path, line_no, "expected header '" + std::string(header) + "'");
      }
      seen_header = true;
      continue;
    }
    row(a, b, line_no);
  }
  if (!seen_header) malformed(path, line_no, "missing header '" + std::string(header) + "'");
}

double parse_double(const std::filesystem::path& path, std::size_t line, std::string_view s) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value)) {
    malformed(path, line, "'" + std::string(s) + "' is not a finite number");
  }
  return value;
}

}  // namespace

TwoSampleData read_two_sample_csv(const std::filesystem::path& path) {
  TwoSampleData data;
  read_two_columns(path, "value,group", [&](std::string_view a, std::string_view b,
                                            std::size_t line) {
    const double value = parse_double(path, line, a);
    if (b == "1") data.group1.push_back(value);
    else if (b == "2") data.group2.push_back(value);
    else malformed(path, line, "group must be 1 or 2");
  });
  if (data.group1.empty() || data.group2.empty()) {
    throw Error(ErrorCode::invalid_argument, path.string() + ": both groups need data");
  }
  return data;
}

std::vector<Pair> read_paired_csv(const std::filesystem::path& path) {
  std::vector<Pair> pairs;
  read_two_columns(path, "x,y", [&](std::string_view a, std::string_view b, std::size_t line) {
    pairs.push_back({parse_double(path, line, a), parse_double(path, line, b)});
  });
  if (pairs.empty()) throw Error(ErrorCode::invalid_argument, path.string() + ": no pairs");
  return pairs;
}

}  // namespace rpst::cli
