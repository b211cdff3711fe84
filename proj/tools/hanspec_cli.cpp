// hanspec: generate scenarios, run allocators, and drive experiment sweeps.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "hanspec/acs.hpp"
#include "hanspec/baselines.hpp"
#include "hanspec/harness.hpp"
#include "hanspec/scenario_io.hpp"
#include "hanspec/topology.hpp"
#include "hanspec/utility.hpp"

using namespace hanspec;

namespace {

void add_scenario_flags(CLI::App& cmd, ScenarioConfig& cfg) {
  cmd.add_option("--side", cfg.side, "Side of the square deployment area")->capture_default_str();
  cmd.add_option("--channels", cfg.channels, "Number of channels")->capture_default_str();
  cmd.add_option("--nans", cfg.n_nans, "Number of NANs")->capture_default_str();
  cmd.add_option("--sus-per-nan", cfg.sus_per_nan, "HGWs per NAN")->capture_default_str();
  cmd.add_option("--pus", cfg.n_pus, "Number of primary users")->capture_default_str();
  cmd.add_option("--dmin", cfg.d_min, "Minimum usable coverage radius")->capture_default_str();
  cmd.add_option("--dmax", cfg.d_max, "Maximum coverage radius")->capture_default_str();
  cmd.add_option("--dp", cfg.dp, "Primary user protection radius")->capture_default_str();
}

void add_acs_flags(CLI::App& cmd, AcsParams& acs) {
  cmd.add_option("--ants", acs.n_ants, "Ants per iteration")->capture_default_str();
  cmd.add_option("--iterations", acs.iterations, "ACS iterations")->capture_default_str();
  cmd.add_option("--rho", acs.rho, "Pheromone evaporation factor")->capture_default_str();
  cmd.add_option("--g", acs.g_cap, "NAN exploitation threshold")->capture_default_str();
  cmd.add_option("--g-prime", acs.g_prime, "HGW exploitation threshold")->capture_default_str();
}

void add_reward_flag(CLI::App& cmd, RewardMode& reward) {
  cmd.add_option("--reward", reward, "Reward function")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, RewardMode>{{"coverage", RewardMode::coverage},
                                            {"capacity", RewardMode::capacity}}))
      ->capture_default_str();
}

std::vector<std::size_t> default_values(SweepVariable variable) {
  std::vector<std::size_t> values;
  switch (variable) {
  case SweepVariable::channels:
    for (std::size_t v = 2; v <= 12; v += 2) values.push_back(v);
    break;
  case SweepVariable::primaries:
    for (std::size_t v = 2; v <= 20; v += 2) values.push_back(v);
    break;
  case SweepVariable::secondaries:
    for (std::size_t v = 5; v <= 30; v += 5) values.push_back(v);
    break;
  case SweepVariable::ants:
    values = {1, 5, 15};
    break;
  }
  return values;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    throw std::runtime_error("cannot write " + path);
  }
}

nlohmann::json allocation_json(const Assignment& a, const SpectrumModel& model, AlgorithmKind algorithm,
                               UtilityKind kind) {
  nlohmann::json users = nlohmann::json::array();
  for (std::size_t n = 0; n < a.user_count(); ++n) {
    nlohmann::json held = nlohmann::json::array();
    for (std::size_t m = 0; m < a.channel_count(); ++m) {
      if (a.get(n, m)) {
        held.push_back(m);
      }
    }
    users.push_back(held);
  }
  return {{"algorithm", to_string(algorithm)},
          {"utility", to_string(kind)},
          {"value", evaluate(a, model, kind)},
          {"served", a.served_users()},
          {"assignment", users}};
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Channel assignment simulator for cognitive-radio home area networks"};
  app.require_subcommand(1);

  ScenarioConfig cfg;
  AcsParams acs;
  RewardMode reward = RewardMode::coverage;
  std::uint64_t seed = 1;
  std::string out;

  auto* generate = app.add_subcommand("generate", "Generate a random scenario as JSON");
  add_scenario_flags(*generate, cfg);
  generate->add_option("--seed", seed, "Scenario seed")->capture_default_str();
  generate->add_option("--out", out, "Output path (stdout if omitted)");

  std::string scenario_path;
  std::string algorithm = "acs";
  std::string kind = "msr";
  const std::vector<std::string> algorithms{"acs", "csgc", "random", "exact"};
  const std::vector<std::string> utilities{"msr", "mmr", "mpf"};

  auto* allocate_cmd = app.add_subcommand("allocate", "Assign channels for a saved scenario");
  allocate_cmd->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  allocate_cmd->add_option("--algorithm", algorithm, "Allocator")
      ->check(CLI::IsMember(algorithms))
      ->capture_default_str();
  allocate_cmd->add_option("--utility", kind, "Network utility")
      ->check(CLI::IsMember(utilities))
      ->capture_default_str();
  add_reward_flag(*allocate_cmd, reward);
  add_acs_flags(*allocate_cmd, acs);
  allocate_cmd->add_option("--seed", seed, "Seed for ACS and RANDOM")->capture_default_str();
  allocate_cmd->add_option("--out", out, "Output path (stdout if omitted)");

  std::string variable;
  std::vector<std::size_t> values;
  std::vector<std::string> sweep_algorithms;
  std::vector<std::string> sweep_utilities;
  auto* sweep = app.add_subcommand("sweep", "Sweep one variable and write aggregate CSV");
  sweep->add_option("--variable", variable, "Swept variable")
      ->check(CLI::IsMember({"channels", "primaries", "secondaries", "ants"}))
      ->required();
  sweep->add_option("--values", values, "Comma-separated values (default range per variable)")
      ->delimiter(',');
  sweep->add_option("--algorithms", sweep_algorithms, "Comma-separated allocators")
      ->delimiter(',')
      ->check(CLI::IsMember(algorithms));
  sweep->add_option("--utilities", sweep_utilities, "Comma-separated utilities")
      ->delimiter(',')
      ->check(CLI::IsMember(utilities));
  std::size_t seeds = 1;
  sweep->add_option("--seeds", seeds, "Replicates per cell")->capture_default_str();
  sweep->add_option("--base-seed", seed, "Replicate k uses base-seed + k")->capture_default_str();
  add_scenario_flags(*sweep, cfg);
  add_acs_flags(*sweep, acs);
  add_reward_flag(*sweep, reward);
  sweep->add_option("--out", out, "CSV output path (stdout if omitted)");

  auto* converge = app.add_subcommand("converge", "Write per-iteration ACS convergence traces");
  converge->add_option("--seeds", seeds, "Number of seeds")->capture_default_str();
  converge->add_option("--base-seed", seed, "Seed k is base-seed + k")->capture_default_str();
  add_scenario_flags(*converge, cfg);
  add_acs_flags(*converge, acs);
  add_reward_flag(*converge, reward);
  converge->add_option("--out", out, "CSV output path (stdout if omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) {
      const Scenario scn = generate_scenario(cfg, seed);
      write_text(out, scenario_to_json(scn) + "\n");
    } else if (allocate_cmd->parsed()) {
      const Scenario scn = load_scenario(scenario_path);
      const SpectrumModel model = build_model(scn, reward);
      const AlgorithmKind alg = parse_algorithm(algorithm);
      const UtilityKind util = parse_utility(kind);
      const Assignment a = run_algorithm(alg, model, nan_layout(scn), util, acs, seed);
      write_text(out, allocation_json(a, model, alg, util).dump(2) + "\n");
    } else if (sweep->parsed()) {
      SweepSpec spec;
      spec.variable = parse_variable(variable);
      spec.values = values.empty() ? default_values(spec.variable) : values;
      if (!sweep_algorithms.empty()) {
        spec.algorithms.clear();
        for (const auto& name : sweep_algorithms) spec.algorithms.push_back(parse_algorithm(name));
      }
      if (!sweep_utilities.empty()) {
        spec.utilities.clear();
        for (const auto& name : sweep_utilities) spec.utilities.push_back(parse_utility(name));
      }
      spec.fixed = cfg;
      spec.seeds = seeds;
      spec.base_seed = seed;
      spec.acs = acs;
      spec.reward = reward;
      write_text(out, sweep_csv(run_sweep(spec)));
    } else if (converge->parsed()) {
      write_text(out, traces_csv(run_convergence(cfg, acs, seeds, seed, reward)));
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "hanspec: %s\n", e.what());
    return 1;
  }
  return 0;
}
