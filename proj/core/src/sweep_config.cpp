#include "rpst/sweep_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "rpst/error.hpp"

namespace rpst {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(std::size_t line, const std::string& message) {
  throw Error(ErrorCode::invalid_argument,
              "config line " + std::to_string(line) + ": " + message);
}

std::string unquote(std::string_view token, std::size_t line) {
  token = trim(token);
  if (token.empty()) fail(line, "empty value");
  if (token.front() == '"') {
    if (token.size() < 2 || token.back() != '"') fail(line, "unterminated string");
    return std::string(token.substr(1, token.size() - 2));
  }
  return std::string(token);
}

// Strips a trailing comment that is not inside quotes.
std::string_view strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

std::vector<std::string> parse_values(std::string_view raw, std::size_t line) {
  raw = trim(raw);
  if (raw.empty()) fail(line, "missing value");
  if (raw.front() != '[') return {unquote(raw, line)};
  if (raw.back() != ']') fail(line, "unterminated list");
  std::string_view body = trim(raw.substr(1, raw.size() - 2));
  if (body.empty()) fail(line, "empty list");
  std::vector<std::string> values;
  while (true) {
    const auto comma = body.find(',');
    values.push_back(unquote(body.substr(0, comma), line));
    if (comma == std::string_view::npos) break;
    body = body.substr(comma + 1);
  }
  return values;
}

double to_double(const std::string& token, std::string_view key) {
  double value = 0.0;
  const char* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw Error(ErrorCode::invalid_argument,
                "config key '" + std::string(key) + "': '" + token + "' is not a number");
  }
  return value;
}

std::size_t to_count(const std::string& token, std::string_view key) {
  std::size_t value = 0;
  const char* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw Error(ErrorCode::invalid_argument, "config key '" + std::string(key) + "': '" +
                                                 token + "' is not a non-negative integer");
  }
  return value;
}

struct CellBuilder {
  SimConfig config;
  std::optional<std::size_t> n1;
  std::optional<double> balance;

  void set(std::string_view key, const std::string& v) {
    if (key == "test") config.test = parse_test_kind(v);
    else if (key == "family") config.population.family = parse_family(v);
    else if (key == "lomax_shape") config.population.lomax_shape = to_double(v, key);
    else if (key == "t_df") config.population.t_df = to_double(v, key);
    else if (key == "rho") config.copula_rho = to_double(v, key);
    else if (key == "n") config.n = to_count(v, key);
    else if (key == "n1") n1 = to_count(v, key);
    else if (key == "balance") balance = to_double(v, key);
    else if (key == "theta") config.theta = to_double(v, key);
    else if (key == "psi") config.psi = TransformSpec::parse(v);
    else if (key == "q") config.q = to_double(v, key);
    else if (key == "eps") config.eps = to_double(v, key);
    else if (key == "split") config.split = to_double(v, key);
    else if (key == "delta") config.delta = to_double(v, key);
    else if (key == "alpha") config.alpha = to_double(v, key);
    else if (key == "reps") config.reps = to_count(v, key);
    else if (key == "reference") config.reference = parse_reference(v);
    else if (key == "center") {
      if (v == "true") config.center_groups = true;
      else if (v == "false") config.center_groups = false;
      else throw Error(ErrorCode::invalid_argument, "config key 'center' expects true or false");
    }
  }

  SimConfig finish() {
    if (n1) {
      config.n1 = *n1;
    } else if (balance) {
      if (!(*balance > 0.0 && *balance < 1.0)) {
        throw Error(ErrorCode::invalid_argument, "balance must lie in (0,1)");
      }
      config.n1 = static_cast<std::size_t>(std::llround(*balance * static_cast<double>(config.n)));
    } else {
      config.n1 = config.n / 2;
    }
    config.validate();
    return config;
  }
};

}  // namespace

std::vector<SimConfig> parse_sweep_config(std::string_view text) {
  std::map<std::string, std::vector<std::string>, std::less<>> entries;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto newline = text.find('\n');
    std::string_view line = text.substr(0, newline);
    text = newline == std::string_view::npos ? std::string_view{} : text.substr(newline + 1);

    line = trim(strip_comment(line));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    if (std::find(std::begin(kSweepKeys), std::end(kSweepKeys), key) == std::end(kSweepKeys)) {
      fail(line_no, "unknown key '" + key + "'");
    }
    if (entries.count(key) != 0) fail(line_no, "repeated key '" + key + "'");
    entries.emplace(key, parse_values(line.substr(eq + 1), line_no));
  }
  if (entries.count("n1") != 0 && entries.count("balance") != 0) {
    throw Error(ErrorCode::invalid_argument, "config sets both n1 and balance");
  }

  std::vector<std::pair<std::string_view, const std::vector<std::string>*>> axes;
  for (std::string_view key : kSweepKeys) {
    if (auto it = entries.find(key); it != entries.end()) axes.emplace_back(key, &it->second);
  }

  std::vector<SimConfig> cells;
  std::vector<std::size_t> digit(axes.size(), 0);
  while (true) {
    CellBuilder builder;
    for (std::size_t a = 0; a < axes.size(); ++a) {
      builder.set(axes[a].first, (*axes[a].second)[digit[a]]);
    }
    cells.push_back(builder.finish());

    std::size_t a = axes.size();
    while (a > 0) {
      --a;
      if (++digit[a] < axes[a].second->size()) break;
      digit[a] = 0;
      if (a == 0) return cells;
    }
    if (axes.empty()) return cells;
  }
}

std::vector<SimConfig> load_sweep_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::invalid_argument, "cannot open config '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_sweep_config(buffer.str());
}

}  // namespace rpst
