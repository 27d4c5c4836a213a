#include "rpst/simulation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <ostream>
#include <thread>

#include <boost/math/distributions/students_t.hpp>

#include "rpst/error.hpp"
#include "rpst/numeric.hpp"
#include "rpst/stats.hpp"

namespace rpst {

namespace {

std::string format_number(double x, const char* fmt = "%.10g") {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, fmt, x);
  return buffer;
}

// Calls fn(i) for i in [0, count) on up to `workers` threads. Work is dealt
// round-robin; if anything throws, the exception of the lowest index wins.
template <typename Fn>
void run_indexed(std::size_t count, unsigned workers, Fn&& fn) {
  const std::size_t threads = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::size_t> failed_index(threads, count);
  std::vector<std::exception_ptr> failure(threads);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += threads) {
        try {
          fn(i);
        } catch (...) {
          failed_index[w] = i;
          failure[w] = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  const auto first = std::min_element(failed_index.begin(), failed_index.end());
  if (*first < count) {
    std::rethrow_exception(failure[static_cast<std::size_t>(first - failed_index.begin())]);
  }
}

double student_t_draw(double df, RandomStream& rng) {
  // Bailey's polar method.
  for (;;) {
    const double u = rng.uniform(-1.0, 1.0);
    const double v = rng.uniform(-1.0, 1.0);
    const double w = u * u + v * v;
    if (w > 0.0 && w < 1.0) {
      return u * std::sqrt(df * (std::pow(w, -2.0 / df) - 1.0) / w);
    }
  }
}

// Margin quantile evaluated at Phi(z).
double copula_margin(const Population& margin, double z) {
  switch (margin.family) {
    case PopulationFamily::normal:
      return z;
    case PopulationFamily::exponential:
      return exponential_quantile_upper(normal_sf(z));
    case PopulationFamily::lomax:
      return lomax_quantile_upper(normal_sf(z), margin.lomax_shape);
    case PopulationFamily::student_t: {
      const boost::math::students_t dist(margin.t_df);
      if (z > 0.0) return boost::math::quantile(boost::math::complement(dist, normal_sf(z)));
      return boost::math::quantile(dist, normal_cdf(z));
    }
  }
  return z;
}

}  // namespace

std::string_view to_string(PopulationFamily family) noexcept {
  switch (family) {
    case PopulationFamily::normal: return "normal";
    case PopulationFamily::exponential: return "exponential";
    case PopulationFamily::lomax: return "lomax";
    case PopulationFamily::student_t: return "student_t";
  }
  return "unknown";
}

PopulationFamily parse_family(std::string_view text) {
  if (text == "normal") return PopulationFamily::normal;
  if (text == "exponential") return PopulationFamily::exponential;
  if (text == "lomax") return PopulationFamily::lomax;
  if (text == "student_t" || text == "t") return PopulationFamily::student_t;
  throw Error(ErrorCode::invalid_argument, "unknown family '" + std::string(text) + "'");
}

std::string Population::label() const {
  switch (family) {
    case PopulationFamily::lomax:
      return "lomax(" + format_number(lomax_shape) + ")";
    case PopulationFamily::student_t:
      return "student_t(" + format_number(t_df) + ")";
    default:
      return std::string(to_string(family));
  }
}

void Population::validate() const {
  if (family == PopulationFamily::lomax && !(lomax_shape > 0.0 && std::isfinite(lomax_shape))) {
    throw Error(ErrorCode::invalid_argument, "lomax shape must be positive");
  }
  if (family == PopulationFamily::student_t && !(t_df > 0.0 && std::isfinite(t_df))) {
    throw Error(ErrorCode::invalid_argument, "t degrees of freedom must be positive");
  }
}

double exponential_quantile_upper(double tail) { return -std::log(tail); }

double lomax_quantile_upper(double tail, double shape) {
  return std::expm1(-std::log(tail) / shape);
}

double sample_one(const Population& population, RandomStream& rng) {
  switch (population.family) {
    case PopulationFamily::normal:
      return rng.normal();
    case PopulationFamily::exponential:
      return exponential_quantile_upper(rng.uniform());
    case PopulationFamily::lomax:
      return lomax_quantile_upper(rng.uniform(), population.lomax_shape);
    case PopulationFamily::student_t:
      return student_t_draw(population.t_df, rng);
  }
  return 0.0;
}

std::vector<double> sample_population(const Population& population, double location,
                                      double scale, std::size_t size, RandomStream& rng) {
  if (!(scale > 0.0)) throw Error(ErrorCode::invalid_argument, "scale must be positive");
  population.validate();
  std::vector<double> out(size);
  for (double& x : out) x = location + scale * sample_one(population, rng);
  return out;
}

std::vector<Pair> gaussian_copula_pairs(std::size_t n, double rho, double effect,
                                        const Population& margin, RandomStream& rng) {
  if (!(rho > -1.0 && rho < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "copula correlation must lie in (-1, 1)");
  }
  margin.validate();
  const double c = std::sqrt(1.0 - rho * rho);
  std::vector<Pair> out(n);
  for (Pair& p : out) {
    const double z1 = rng.normal();
    const double z2 = rho * z1 + c * rng.normal();
    p.x = copula_margin(margin, z1);
    p.y = copula_margin(margin, z2) + effect;
  }
  return out;
}

std::string_view to_string(TestKind kind) noexcept {
  switch (kind) {
    case TestKind::rpst: return "rpst";
    case TestKind::rpsr: return "rpsr";
    case TestKind::classic: return "classic";
  }
  return "unknown";
}

TestKind parse_test_kind(std::string_view text) {
  if (text == "rpst") return TestKind::rpst;
  if (text == "rpsr") return TestKind::rpsr;
  if (text == "classic") return TestKind::classic;
  throw Error(ErrorCode::invalid_argument, "unknown test '" + std::string(text) + "'");
}

void SimConfig::validate() const {
  population.validate();
  if (reps < 1) throw Error(ErrorCode::invalid_argument, "reps must be at least 1");
  if (!std::isfinite(theta)) throw Error(ErrorCode::invalid_argument, "theta must be finite");
  if (test == TestKind::rpsr) {
    if (n < 2) throw Error(ErrorCode::invalid_argument, "rpsr needs n >= 2");
    if (!(copula_rho > -1.0 && copula_rho < 1.0)) {
      throw Error(ErrorCode::invalid_argument, "copula correlation must lie in (-1, 1)");
    }
  } else {
    if (!(theta > 0.0)) throw Error(ErrorCode::invalid_argument, "theta must be positive");
    if (n1 < 1 || n1 + 1 > n) throw Error(ErrorCode::invalid_argument, "need 1 <= n1 <= n-1");
  }
  if (!(q >= 0.0 && q < 1.0)) throw Error(ErrorCode::invalid_argument, "q must lie in [0,1)");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::alpha_out_of_range, "alpha must lie in (0,1)");
  }
  if (test != TestKind::classic) {
    if (!(eps > 0.0 && std::isfinite(eps))) {
      throw Error(ErrorCode::invalid_argument, "eps must be positive");
    }
    if (test == TestKind::rpst) PrivacyBudget::from_total(eps, split, delta).validate();
  }
}

bool simulate_rejection(const SimConfig& config, RandomStream& rng) {
  const ModificationSpec mod = ModificationSpec::from_proportion(config.q);
  switch (config.test) {
    case TestKind::rpst: {
      const auto g1 = sample_population(config.population, 0.0, 1.0, config.n1, rng);
      const auto g2 = sample_population(config.population, 0.0, config.theta,
                                        config.n - config.n1, rng);
      RpstOptions options;
      options.reference = config.reference;
      options.center_groups = config.center_groups;
      const auto budget = PrivacyBudget::from_total(config.eps, config.split, config.delta);
      return rpst_test(g1, g2, config.psi, mod, budget, rng, options).p_value <= config.alpha;
    }
    case TestKind::rpsr: {
      const auto pairs = gaussian_copula_pairs(config.n, config.copula_rho, config.theta,
                                               config.population, rng);
      RpsrOptions options;
      options.reference = config.reference;
      return rpsr_test(pairs, config.psi, mod, config.eps, rng, options).p_value <= config.alpha;
    }
    case TestKind::classic: {
      const auto g1 = sample_population(config.population, 0.0, 1.0, config.n1, rng);
      const auto g2 = sample_population(config.population, 0.0, config.theta,
                                        config.n - config.n1, rng);
      return classic_siegel_tukey(g1, g2, config.alpha).reject;
    }
  }
  return false;
}

SimResult estimate_size_power(const SimConfig& config, unsigned workers) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::uint8_t> rejected(config.reps, 0);
  run_indexed(config.reps, workers, [&](std::size_t i) {
    RandomStream rng = RandomStream::derive(config.seed, i);
    rejected[i] = simulate_rejection(config, rng) ? 1 : 0;
  });
  SimResult result;
  result.reps = config.reps;
  for (std::uint8_t r : rejected) result.rejections += r;
  const double reps = static_cast<double>(config.reps);
  result.rejection_rate = static_cast<double>(result.rejections) / reps;
  result.mc_standard_error =
      std::sqrt(result.rejection_rate * (1.0 - result.rejection_rate) / reps);
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

MonteCarloEstimate estimate_beta_n(const SimConfig& config, unsigned workers) {
  if (config.test == TestKind::rpsr) {
    throw Error(ErrorCode::invalid_argument, "beta_n is defined for the two-sample design");
  }
  config.validate();
  const ModificationSpec mod = ModificationSpec::from_proportion(config.q);
  const std::size_t n2 = config.n - config.n1;
  const double sigma = std::sqrt(null_variance(static_cast<double>(config.n1),
                                               static_cast<double>(n2), config.psi,
                                               mod.count(config.n)));
  if (!(sigma > 0.0)) throw Error(ErrorCode::degenerate_variance, "null variance is zero");

  std::vector<double> draws(config.reps);
  run_indexed(config.reps, workers, [&](std::size_t i) {
    RandomStream rng = RandomStream::derive(config.seed, i);
    const auto g1 = sample_population(config.population, 0.0, 1.0, config.n1, rng);
    const auto g2 = sample_population(config.population, 0.0, config.theta, n2, rng);
    draws[i] = u1_statistic(rank_data(g1, g2, mod), config.psi).centered / sigma;
  });

  const double reps = static_cast<double>(config.reps);
  const double mean = compensated_sum(draws) / reps;
  CompensatedSum squares;
  for (double d : draws) squares.add((d - mean) * (d - mean));
  const double var = config.reps > 1 ? squares.value() / (reps - 1.0) : 0.0;
  return {mean, std::sqrt(var / reps)};
}

std::vector<SweepRow> sweep(std::span<const SimConfig> grid, std::uint64_t master_seed,
                            unsigned workers) {
  if (grid.empty()) throw Error(ErrorCode::invalid_argument, "sweep grid is empty");
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (std::size_t cell = 0; cell < grid.size(); ++cell) {
    SweepRow row;
    row.config = grid[cell];
    row.config.seed = mix_seed(master_seed, cell);
    try {
      row.result = estimate_size_power(row.config, workers);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows, bool include_timing) {
  out << kSweepCsvHeader << '\n';
  for (const SweepRow& row : rows) {
    const SimConfig& c = row.config;
    const bool paired = c.test == TestKind::rpsr;
    out << c.population.label() << ',' << format_number(c.theta) << ',' << c.n << ','
        << (paired ? std::string("NA") : std::to_string(c.n1)) << ',' << format_number(c.q)
        << ',' << c.psi.name() << ',' << format_number(c.eps) << ','
        << (paired ? "NA" : format_number(c.split)) << ','
        << (paired ? "NA" : format_number(c.delta)) << ',' << format_number(c.alpha) << ','
        << c.reps << ',';
    if (row.result) {
      out << format_number(row.result->rejection_rate) << ','
          << format_number(row.result->mc_standard_error, "%.6g") << ','
          << (include_timing ? format_number(row.result->seconds, "%.3f") : "NA");
    } else {
      out << "NA,NA,NA";
    }
    out << ',' << to_string(c.test) << ',' << (paired ? format_number(c.copula_rho) : "NA")
        << '\n';
  }
}

}  // namespace rpst
