#include "hanspec/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <tuple>

#include "hanspec/errors.hpp"

namespace hanspec {

std::string_view to_string(SweepVariable variable) {
  switch (variable) {
  case SweepVariable::channels:
    return "channels";
  case SweepVariable::primaries:
    return "primaries";
  case SweepVariable::secondaries:
    return "secondaries";
  case SweepVariable::ants:
    return "ants";
  }
  return "?";
}

SweepVariable parse_variable(std::string_view token) {
  for (auto v : {SweepVariable::channels, SweepVariable::primaries, SweepVariable::secondaries,
                 SweepVariable::ants}) {
    if (token == to_string(v)) {
      return v;
    }
  }
  throw ConfigError("unknown sweep variable '" + std::string(token) +
                    "' (expected channels|primaries|secondaries|ants)");
}

void validate(const SweepSpec& spec) {
  if (spec.values.empty()) {
    throw ConfigError("sweep needs at least one value");
  }
  for (std::size_t k = 1; k < spec.values.size(); ++k) {
    if (spec.values[k] <= spec.values[k - 1]) {
      throw ConfigError("sweep values must be strictly increasing");
    }
  }
  if (spec.seeds < 1) {
    throw ConfigError("sweep needs at least one seed");
  }
  if (spec.algorithms.empty() || spec.utilities.empty()) {
    throw ConfigError("sweep needs at least one algorithm and one utility");
  }
  validate(spec.fixed);
  validate(spec.acs);
}

Assignment run_algorithm(AlgorithmKind algorithm, const SpectrumModel& model,
                         const NanLayout& layout, UtilityKind utility, AcsParams params,
                         std::uint64_t seed) {
  switch (algorithm) {
  case AlgorithmKind::acs:
    params.seed = seed;
    params.trace_utility = utility;
    return allocate(model, layout, params).assignment;
  case AlgorithmKind::csgc:
    return csgc_assignment(model, utility);
  case AlgorithmKind::random:
    return random_assignment(model, seed);
  case AlgorithmKind::exact:
    return brute_force_optimal(model, utility).assignment;
  }
  throw ContractError("unhandled algorithm");
}

namespace {

struct Cell {
  std::vector<double> utilities;
  double runtime_ms = 0.0;
};

SweepRow summarize(std::size_t value, AlgorithmKind algorithm, UtilityKind utility,
                   const Cell& cell) {
  const auto& u = cell.utilities;
  const double count = static_cast<double>(u.size());
  SweepRow row;
  row.value = value;
  row.algorithm = algorithm;
  row.utility = utility;
  row.min = *std::min_element(u.begin(), u.end());
  row.max = *std::max_element(u.begin(), u.end());
  row.mean = std::clamp(std::accumulate(u.begin(), u.end(), 0.0) / count, row.min, row.max);
  if (u.size() > 1) {
    double ss = 0.0;
    for (double v : u) {
      ss += (v - row.mean) * (v - row.mean);
    }
    row.std = std::sqrt(ss / (count - 1.0));
  }
  row.runtime_ms = cell.runtime_ms / count;
  return row;
}

} // namespace

SweepResult run_sweep(const SweepSpec& spec) {
  validate(spec);
  SweepResult result;
  result.variable = spec.variable;

  for (std::size_t value : spec.values) {
    ScenarioConfig cfg = spec.fixed;
    AcsParams acs = spec.acs;
    switch (spec.variable) {
    case SweepVariable::channels:
      cfg.channels = value;
      break;
    case SweepVariable::primaries:
      cfg.n_pus = value;
      break;
    case SweepVariable::secondaries:
      cfg.sus_per_nan = value;
      break;
    case SweepVariable::ants:
      acs.n_ants = value;
      break;
    }

    std::vector<Cell> cells(spec.algorithms.size() * spec.utilities.size());
    for (std::size_t k = 0; k < spec.seeds; ++k) {
      const std::uint64_t seed = spec.base_seed + k;
      const Scenario scn = generate_scenario(cfg, seed);
      const SpectrumModel model = build_model(scn, spec.reward);
      const NanLayout layout = nan_layout(scn);

      for (std::size_t a = 0; a < spec.algorithms.size(); ++a) {
        const AlgorithmKind algorithm = spec.algorithms[a];
        if (algorithm == AlgorithmKind::exact && brute_force_space(model) > kBruteForceBudget) {
          throw CapacityError("exact search is too large at " + std::string(to_string(spec.variable)) +
                              "=" + std::to_string(value) + " (seed " + std::to_string(seed) + ")");
        }
        for (std::size_t u = 0; u < spec.utilities.size(); ++u) {
          const UtilityKind utility = spec.utilities[u];
          const auto start = std::chrono::steady_clock::now();
          const Assignment assignment = run_algorithm(algorithm, model, layout, utility, acs, seed);
          const auto stop = std::chrono::steady_clock::now();
          if (!is_feasible(assignment, model)) {
            throw FeasibilityError(std::string(to_string(algorithm)) +
                                   " produced an infeasible assignment");
          }
          Cell& cell = cells[a * spec.utilities.size() + u];
          cell.utilities.push_back(evaluate(assignment, model, utility));
          cell.runtime_ms += std::chrono::duration<double, std::milli>(stop - start).count();
        }
      }
    }
    for (std::size_t a = 0; a < spec.algorithms.size(); ++a) {
      for (std::size_t u = 0; u < spec.utilities.size(); ++u) {
        result.rows.push_back(summarize(value, spec.algorithms[a], spec.utilities[u],
                                        cells[a * spec.utilities.size() + u]));
      }
    }
  }

  std::stable_sort(result.rows.begin(), result.rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return std::tie(a.value, a.algorithm, a.utility) < std::tie(b.value, b.algorithm, b.utility);
  });
  return result;
}

std::vector<ConvergenceTrace> run_convergence(const ScenarioConfig& cfg, const AcsParams& acs,
                                              std::size_t seeds, std::uint64_t base_seed,
                                              RewardMode reward) {
  validate(cfg);
  validate(acs);
  std::vector<ConvergenceTrace> traces;
  for (std::size_t k = 0; k < seeds; ++k) {
    const std::uint64_t seed = base_seed + k;
    const Scenario scn = generate_scenario(cfg, seed);
    const SpectrumModel model = build_model(scn, reward);
    const NanLayout layout = nan_layout(scn);
    AcsParams params = acs;
    params.seed = seed;
    traces.push_back(allocate(model, layout, params).trace);
  }
  return traces;
}

std::vector<AntCountCost> run_ant_study(const ScenarioConfig& cfg, const AcsParams& acs,
                                        const std::vector<std::size_t>& ant_counts,
                                        std::size_t seeds, std::uint64_t base_seed,
                                        RewardMode reward) {
  validate(cfg);
  validate(acs);
  if (ant_counts.empty() || seeds < 1) {
    throw ConfigError("ant study needs ant counts and at least one seed");
  }
  std::vector<double> cost_sum(ant_counts.size(), 0.0);
  for (std::size_t k = 0; k < seeds; ++k) {
    const std::uint64_t seed = base_seed + k;
    const Scenario scn = generate_scenario(cfg, seed);
    const SpectrumModel model = build_model(scn, reward);
    const NanLayout layout = nan_layout(scn);
    std::vector<ConvergenceTrace> traces;
    for (std::size_t ants : ant_counts) {
      AcsParams params = acs;
      params.n_ants = ants;
      params.seed = seed;
      traces.push_back(allocate(model, layout, params).trace);
    }
    normalize_costs_jointly(traces, TraceSeries::incumbent);
    for (std::size_t a = 0; a < ant_counts.size(); ++a) {
      cost_sum[a] += traces[a].points.back().normalized_cost;
    }
  }
  std::vector<AntCountCost> out;
  for (std::size_t a = 0; a < ant_counts.size(); ++a) {
    out.push_back({ant_counts[a], cost_sum[a] / static_cast<double>(seeds)});
  }
  return out;
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string sweep_csv(const SweepResult& result) {
  std::string out(kSweepCsvHeader);
  out += '\n';
  for (const auto& row : result.rows) {
    out += to_string(result.variable);
    out += ',' + std::to_string(row.value);
    out += ',';
    out += to_string(row.algorithm);
    out += ',';
    out += to_string(row.utility);
    for (double v : {row.mean, row.std, row.min, row.max, row.runtime_ms}) {
      out += ',' + format_number(v);
    }
    out += '\n';
  }
  return out;
}

std::string traces_csv(const std::vector<ConvergenceTrace>& traces) {
  std::string out(kTraceCsvHeader);
  out += '\n';
  for (const auto& trace : traces) {
    for (const auto& pt : trace.points) {
      out += std::to_string(trace.seed) + ',' + std::to_string(pt.iteration) + ',' +
             format_number(pt.best_utility) + ',' + format_number(pt.normalized_cost) + '\n';
    }
  }
  return out;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  out << text;
  out.flush();
  if (!out) {
    throw std::runtime_error("failed writing " + path.string());
  }
}

} // namespace

void emit_csv(const SweepResult& result, const std::filesystem::path& path) {
  write_file(path, sweep_csv(result));
}

void emit_csv(const std::vector<ConvergenceTrace>& traces, const std::filesystem::path& path) {
  write_file(path, traces_csv(traces));
}

} // namespace hanspec
