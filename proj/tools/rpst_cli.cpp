#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "csv_input.hpp"
#include "rpst/error.hpp"
#include "rpst/inference.hpp"
#include "rpst/simulation.hpp"
#include "rpst/sweep_config.hpp"
#include "rpst/validation.hpp"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

constexpr const char* kSchema = "rpst/1";

struct TestArgs {
  std::string kind;
  std::string input;
  std::string psi = "arctan";
  std::optional<double> q;
  std::optional<std::size_t> Q;
  double eps = 1.0;
  double split = rpst::PrivacyBudget::kDefaultSplit;
  double delta = 1e-6;
  double alpha = 0.05;
  std::optional<std::uint64_t> seed;
  double jitter = 0.0;
  std::string alternation = "single";
  std::string reference = "normal_laplace";
  bool center_groups = false;
};

struct SimulateArgs {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  unsigned workers = 1;
  bool timing = false;
};

struct ValidateArgs {
  std::size_t max_n = 9;
  double psi_offset = 0.0;
  std::uint64_t seed = 1;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("RPST_SEED"); env != nullptr && *env != '\0') {
    const std::string_view text(env);
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
      throw rpst::Error(rpst::ErrorCode::invalid_argument,
                        "RPST_SEED must be an unsigned 64-bit integer");
    }
    return value;
  }
  std::random_device device;
  return (static_cast<std::uint64_t>(device()) << 32) ^ device();
}

rpst::Alternation parse_alternation(const std::string& text) {
  if (text == "single") return rpst::Alternation::single;
  if (text == "paired") return rpst::Alternation::paired;
  throw rpst::Error(rpst::ErrorCode::invalid_argument,
                    "alternation must be 'single' or 'paired'");
}

rpst::ModificationSpec modification(const TestArgs& args) {
  if (args.Q) return rpst::ModificationSpec::from_count(*args.Q);
  return rpst::ModificationSpec::from_proportion(args.q.value_or(0.0));
}

Json private_result_json(const rpst::PrivateTestResult& r, const TestArgs& args,
                         std::uint64_t seed) {
  Json j;
  j["schema"] = kSchema;
  j["test"] = r.test;
  j["n"] = r.n;
  j["psi"] = r.psi;
  j["q"] = r.q ? Json(*r.q) : Json(nullptr);
  j["Q"] = r.Q;
  j["statistic"] = r.statistic;
  j["noise_scale"] = r.noise_scale;
  j["sigma"] = r.sigma;
  j["z_score"] = r.z_score;
  j["p_value"] = r.p_value;
  j["reference"] = std::string(rpst::to_string(r.reference));
  j["alpha"] = args.alpha;
  j["reject"] = r.p_value <= args.alpha;
  if (r.group_estimate) {
    j["group_estimate"] = {{"d1_star", r.group_estimate->d1_star},
                           {"n1_tilde", r.group_estimate->n1_tilde},
                           {"n2_tilde", r.group_estimate->n2_tilde}};
  } else {
    j["group_estimate"] = nullptr;
  }
  j["eps_u"] = r.eps_u;
  j["eps_d"] = r.eps_d;
  j["delta"] = r.delta;
  j["epsilon_total"] = r.epsilon_total();
  j["alternation"] = args.alternation;
  j["seed"] = seed;
  return j;
}

int run_test(const TestArgs& args) {
  const std::uint64_t seed = resolve_seed(args.seed);
  rpst::RandomStream noise_rng = rpst::RandomStream::derive(seed, 0);
  rpst::RandomStream jitter_rng = rpst::RandomStream::derive(seed, 1);

  rpst::RankOptions ranking;
  ranking.alternation = parse_alternation(args.alternation);
  ranking.jitter_scale = args.jitter;
  ranking.jitter_stream = &jitter_rng;

  Json out;
  if (args.kind == "classic") {
    const auto data = rpst::cli::read_two_sample_csv(args.input);
    const rpst::ClassicResult r = rpst::classic_siegel_tukey(data.group1, data.group2, args.alpha);
    out["schema"] = kSchema;
    out["test"] = "classic";
    out["n"] = data.group1.size() + data.group2.size();
    out["n1"] = data.group1.size();
    out["n2"] = data.group2.size();
    out["alpha"] = args.alpha;
    out["statistic"] = r.statistic;
    out["critical_value"] = r.critical_value;
    out["m"] = r.m;
    out["reject"] = r.reject;
  } else {
    const rpst::TransformSpec psi = rpst::TransformSpec::parse(args.psi);
    const rpst::ModificationSpec mod = modification(args);
    const rpst::ReferenceDistribution reference = rpst::parse_reference(args.reference);
    if (args.kind == "rpst") {
      const auto data = rpst::cli::read_two_sample_csv(args.input);
      const auto budget = rpst::PrivacyBudget::from_total(args.eps, args.split, args.delta);
      rpst::RpstOptions options;
      options.ranking = ranking;
      options.reference = reference;
      options.center_groups = args.center_groups;
      out = private_result_json(
          rpst::rpst_test(data.group1, data.group2, psi, mod, budget, noise_rng, options), args,
          seed);
    } else {
      const auto pairs = rpst::cli::read_paired_csv(args.input);
      rpst::RpsrOptions options;
      options.ranking = ranking;
      options.reference = reference;
      out = private_result_json(rpst::rpsr_test(pairs, psi, mod, args.eps, noise_rng, options),
                                args, seed);
    }
  }
  std::cout << out.dump(2) << '\n';
  return kExitOk;
}

int run_simulate(const SimulateArgs& args) {
  const std::vector<rpst::SimConfig> grid = rpst::load_sweep_config(args.config);
  const std::uint64_t seed = resolve_seed(args.seed);
  unsigned workers = args.workers;
  if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());

  const std::vector<rpst::SweepRow> rows = rpst::sweep(grid, seed, workers);
  std::size_t failed = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].result) {
      ++failed;
      std::cerr << "cell " << i << ": " << rows[i].error << '\n';
    }
  }

  if (args.out == "-") {
    rpst::write_sweep_csv(std::cout, rows, args.timing);
  } else {
    std::ofstream file(args.out, std::ios::binary);
    if (!file) {
      throw rpst::Error(rpst::ErrorCode::invalid_argument, "cannot write '" + args.out + "'");
    }
    rpst::write_sweep_csv(file, rows, args.timing);
  }
  std::cerr << rows.size() << " cells, " << failed << " failed, seed " << seed << '\n';
  return kExitOk;
}

int run_validate(const ValidateArgs& args) {
  if (args.psi_offset != 0.0) {
    const double b = args.psi_offset;
    rpst::TransformSpec::custom("offset", [b](double r) { return r + b; });
  }
  const std::vector<rpst::TransformSpec> family = rpst::TransformSpec::standard_family();
  const auto results = rpst::oracle::run_oracle_suite(args.max_n, family, args.seed);
  bool all = true;
  for (const auto& r : results) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    all = all && r.passed;
  }
  return all ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private rank tests for scale and paired data"};
  app.require_subcommand(1);

  TestArgs test_args;
  auto* test = app.add_subcommand("test", "Run a test on data from a CSV file");
  test->add_option("kind", test_args.kind, "rpst, rpsr or classic")
      ->required()
      ->check(CLI::IsMember({"rpst", "rpsr", "classic"}));
  test->add_option("--input", test_args.input, "CSV file: value,group or x,y")->required();
  test->add_option("--psi", test_args.psi, "arctan, log1p, sqrt, identity, square, power:<k>");
  auto* q_opt = test->add_option("--q", test_args.q, "Proportion of central ranks to zero");
  test->add_option("--Q", test_args.Q, "Number of central ranks to zero")->excludes(q_opt);
  test->add_option("--eps", test_args.eps, "Total privacy budget");
  test->add_option("--split", test_args.split, "Share of eps spent on the statistic (rpst)");
  test->add_option("--delta", test_args.delta, "delta for the group-size estimate (rpst)");
  test->add_option("--alpha", test_args.alpha, "Significance level");
  test->add_option("--seed", test_args.seed, "Seed (falls back to RPST_SEED)");
  test->add_option("--jitter", test_args.jitter, "Tie-breaking jitter half-width");
  test->add_option("--alternation", test_args.alternation, "single or paired");
  test->add_option("--reference", test_args.reference, "normal_laplace or normal");
  test->add_flag("--center-groups", test_args.center_groups,
                 "Subtract each group's median before ranking (rpst)");

  SimulateArgs sim_args;
  auto* simulate = app.add_subcommand("simulate", "Run a simulation sweep");
  simulate->add_option("--config", sim_args.config, "Sweep file")->required();
  simulate->add_option("--out", sim_args.out, "Output CSV, '-' for stdout")->required();
  simulate->add_option("--seed", sim_args.seed, "Master seed (falls back to RPST_SEED)");
  simulate->add_option("--workers", sim_args.workers, "Worker threads, 0 for all cores");
  simulate->add_flag("--timing", sim_args.timing, "Fill the seconds column");

  ValidateArgs val_args;
  auto* validate = app.add_subcommand("validate", "Check closed forms against brute force");
  validate->add_option("--max-n", val_args.max_n, "Largest sample size enumerated");
  validate->add_option("--psi-offset", val_args.psi_offset,
                       "Also construct psi(r) = r + b (b != 0 is rejected)");
  validate->add_option("--seed", val_args.seed, "Seed for the group-size check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*test) return run_test(test_args);
    if (*simulate) return run_simulate(sim_args);
    return run_validate(val_args);
  } catch (const rpst::Error& e) {
    std::cerr << "error (" << rpst::to_string(e.code()) << "): " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitFailure;
  }
}
