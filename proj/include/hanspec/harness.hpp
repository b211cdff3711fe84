#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "hanspec/acs.hpp"
#include "hanspec/baselines.hpp"
#include "hanspec/topology.hpp"
#include "hanspec/utility.hpp"

namespace hanspec {

enum class SweepVariable { channels, primaries, secondaries, ants };

std::string_view to_string(SweepVariable variable);
SweepVariable parse_variable(std::string_view token);

struct SweepSpec {
  SweepVariable variable = SweepVariable::channels;
  std::vector<std::size_t> values;
  ScenarioConfig fixed;
  std::vector<AlgorithmKind> algorithms{AlgorithmKind::acs, AlgorithmKind::csgc,
                                        AlgorithmKind::random};
  std::vector<UtilityKind> utilities{UtilityKind::msr, UtilityKind::mmr, UtilityKind::mpf};
  std::size_t seeds = 1;
  std::uint64_t base_seed = 1; // replicate k runs on seed base_seed + k
  AcsParams acs;
  RewardMode reward = RewardMode::coverage;
};

void validate(const SweepSpec& spec);

struct SweepRow {
  std::size_t value = 0;
  AlgorithmKind algorithm = AlgorithmKind::acs;
  UtilityKind utility = UtilityKind::msr;
  double mean = 0.0;
  double std = 0.0; // sample standard deviation, 0 for a single seed
  double min = 0.0;
  double max = 0.0;
  double runtime_ms = 0.0;
};

struct SweepResult {
  SweepVariable variable = SweepVariable::channels;
  std::vector<SweepRow> rows; // sorted by (value, algorithm, utility)
};

/// Run one allocator on a model. `seed` drives RANDOM and ACS; for ACS it
/// overrides params.seed and `utility` becomes the traced utility.
Assignment run_algorithm(AlgorithmKind algorithm, const SpectrumModel& model,
                         const NanLayout& layout, UtilityKind utility, AcsParams params,
                         std::uint64_t seed);

SweepResult run_sweep(const SweepSpec& spec);

/// One ACS trace per seed on freshly generated scenarios.
std::vector<ConvergenceTrace> run_convergence(const ScenarioConfig& cfg, const AcsParams& acs,
                                              std::size_t seeds, std::uint64_t base_seed = 1,
                                              RewardMode reward = RewardMode::coverage);

struct AntCountCost {
  std::size_t ants = 0;
  double mean_final_cost = 0.0;
};

/// Final normalised cost per ant count. For each seed the traces of all ant
/// counts share one normalisation, so the costs are comparable across counts.
std::vector<AntCountCost> run_ant_study(const ScenarioConfig& cfg, const AcsParams& acs,
                                        const std::vector<std::size_t>& ant_counts,
                                        std::size_t seeds, std::uint64_t base_seed = 1,
                                        RewardMode reward = RewardMode::coverage);

inline constexpr std::string_view kSweepCsvHeader =
    "variable,value,algorithm,utility,mean,std,min,max,runtime_ms";
inline constexpr std::string_view kTraceCsvHeader = "seed,iteration,best_utility,normalized_cost";

/// Locale-independent shortest round-trip decimal.
std::string format_number(double v);

std::string sweep_csv(const SweepResult& result);
std::string traces_csv(const std::vector<ConvergenceTrace>& traces);

void emit_csv(const SweepResult& result, const std::filesystem::path& path);
void emit_csv(const std::vector<ConvergenceTrace>& traces, const std::filesystem::path& path);

} // namespace hanspec
