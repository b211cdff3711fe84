#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "hanspec/random.hpp"
#include "hanspec/topology.hpp"
#include "hanspec/utility.hpp"

namespace hanspec {

struct AcsParams {
  std::size_t n_ants = 15;
  std::size_t iterations = 100;
  double rho = 0.9;      // evaporation: T <- rho * T after every iteration
  double g_cap = 0.9;    // NAN selection: exploit (argmax) when g > g_cap
  double g_prime = 0.9;  // HGW selection: exploit when g > g_prime
  // Use (1 + deg) instead of deg as the interference factor of the HGW
  // score; with plain deg an HGW without intra-NAN conflicts scores zero.
  bool interference_smoothing = true;
  // Deposit (b / b_max)^(M / A_j) instead of b^(M / A_j).
  bool normalize_deposit = true;
  std::uint64_t seed = 0;
  // Utility that ranks candidate solutions and is tracked by the trace.
  UtilityKind trace_utility = UtilityKind::msr;
};

void validate(const AcsParams& params);

/// Pheromone T^i_{j,m} of HGW j in NAN i on channel m, plus the running sum
/// of the per-iteration slices used by the final channel selection.
class PheromoneTensor {
public:
  PheromoneTensor(const NanLayout& layout, std::size_t channels);

  std::size_t nan_count() const { return layout_->nan_count(); }
  std::size_t hgw_count(std::size_t nan) const { return layout_->members[nan].size(); }
  std::size_t channel_count() const { return channels_; }
  std::size_t user_of(std::size_t nan, std::size_t hgw) const { return layout_->members[nan][hgw]; }
  std::size_t nan_of(std::size_t n) const { return nan_of_[n]; }
  const NanLayout& layout() const { return *layout_; }

  double at(std::size_t nan, std::size_t hgw, std::size_t m) const {
    return current_[user_of(nan, hgw) * channels_ + m];
  }
  double& at(std::size_t nan, std::size_t hgw, std::size_t m) {
    return current_[user_of(nan, hgw) * channels_ + m];
  }
  double user_value(std::size_t n, std::size_t m) const { return current_[n * channels_ + m]; }

  /// Close iteration xi: add the current slice to the history.
  void record_iteration();
  std::size_t iterations_recorded() const { return recorded_; }
  /// (1/Xi) sum_xi T_{n,m,xi}, row-major over SUs. Requires a recorded slice.
  std::vector<double> mean() const;

  std::span<const double> current() const { return current_; }
  std::span<double> current() { return current_; }

private:
  const NanLayout* layout_;
  std::size_t channels_;
  std::vector<std::size_t> nan_of_;
  std::vector<double> current_;
  std::vector<double> history_sum_;
  std::size_t recorded_ = 0;
};

/// Admission status s^i_j for HGW j of NAN i on channel m.
using AdmissionPolicy = std::function<bool(std::size_t nan, std::size_t hgw, std::size_t m)>;

AdmissionPolicy admit_all();

/// Per-ant memory for one iteration: the HGWs this ant has already served
/// and the partial conflict-free assignment it has built.
struct AntState {
  std::vector<bool> visited;  // indexed by SU
  std::vector<bool> blocked;  // N x M: an interferer already holds the channel
  Assignment solution;
  std::size_t carried_channel = 0;

  AntState(std::size_t users, std::size_t channels)
      : visited(users, false), blocked(users * channels, false), solution(users, channels) {}

  bool can_take(std::size_t n, std::size_t m) const {
    return !visited[n] && !blocked[n * solution.channel_count() + m];
  }
  /// Serve n on m and block m for its interferers.
  void take(std::size_t n, std::size_t m, const SpectrumModel& model);
};

/// Attractiveness of HGW j in NAN i for channel m:
///   T * b / (M * |NAN i| * b_max) * (channels available to j) * kappa
/// where kappa counts the HGW's interferers inside its NAN on m (plus one
/// when smoothing). Zero on unavailable channels.
double hgw_score(std::size_t nan, std::size_t hgw, std::size_t m, const PheromoneTensor& pheromone,
                 const SpectrumModel& model, const AcsParams& params);

/// Scores of every HGW in a NAN, zeroed for HGWs the ant cannot take or
/// the admission policy blocks.
std::vector<double> hgw_scores(std::size_t nan, std::size_t m, const PheromoneTensor& pheromone,
                               const SpectrumModel& model, const AdmissionPolicy& policy,
                               const AcsParams& params, const AntState* ant = nullptr);

/// NAN selection distribution for channel m; all-zero when no candidate.
std::vector<double> nan_probabilities(std::size_t m, const PheromoneTensor& pheromone,
                                      const SpectrumModel& model, const AdmissionPolicy& policy,
                                      const AcsParams& params, const AntState* ant = nullptr);

/// Exploit/explore choice with explicit draws: argmax when g > threshold,
/// otherwise the first index whose cumulative normalised mass reaches
/// `roulette`.
std::size_t select_with_draws(std::span<const double> p, double threshold, double g,
                              double roulette);

/// Same rule with draws from rng; the roulette draw is only taken when used.
std::size_t select(std::span<const double> p, double threshold, Rng& rng);

/// Pheromone increment for SU n on channel m.
double deposit_amount(std::size_t n, std::size_t m, const SpectrumModel& model,
                      const AcsParams& params);

/// Reinforce channel m for every HGW of the chosen NAN.
void semi_local_update(PheromoneTensor& pheromone, std::size_t nan, std::size_t m,
                       const SpectrumModel& model, const AcsParams& params);

/// Reinforce channel m for the chosen HGW only.
void local_update(PheromoneTensor& pheromone, std::size_t nan, std::size_t hgw, std::size_t m,
                  const SpectrumModel& model, const AcsParams& params);

void global_evaporation(PheromoneTensor& pheromone, const AcsParams& params);

/// Channel per HGW from mean pheromone (row-major N x M), repaired into a
/// conflict-free assignment: HGWs in descending order of their best
/// available mean pheromone take the highest-pheromone channel that is
/// available and unused by an interfering, already-served neighbour.
Assignment final_selection(std::span<const double> mean_pheromone, const SpectrumModel& model);

/// As above, restricted to channels the admission policy grants.
Assignment final_selection(std::span<const double> mean_pheromone, const SpectrumModel& model,
                           const NanLayout& layout, const AdmissionPolicy& policy);

struct TracePoint {
  std::size_t iteration = 0; // 1-based
  // Best utility so far of the channel choice read off the running mean
  // pheromone.
  double best_utility = 0.0;
  // Best utility so far over every candidate (ant solutions included); the
  // value allocate would return if stopped here.
  double incumbent_utility = 0.0;
  double normalized_cost = 0.0;
};

struct ConvergenceTrace {
  std::uint64_t seed = 0;
  std::vector<TracePoint> points;
  std::size_t converged_at = 0;
};

enum class TraceSeries { consensus, incumbent };

/// Iterations without improvement needed to confirm convergence.
inline constexpr std::size_t kConvergenceWindow = 10;

/// Fill normalized_cost = (U* - U)/(U* - U_min) over the trace; zero when
/// the trace is flat.
void normalize_costs(ConvergenceTrace& trace, TraceSeries series = TraceSeries::consensus);
/// Same normalisation with U* and U_min shared by a group of traces.
void normalize_costs_jointly(std::span<ConvergenceTrace> traces,
                             TraceSeries series = TraceSeries::consensus);
/// Last iteration that improved best_utility, provided a full confirmation
/// window follows it; otherwise the final iteration.
std::size_t converged_iteration(const ConvergenceTrace& trace);

struct AcsResult {
  Assignment assignment;
  double utility = 0.0; // of `assignment` under params.trace_utility
  ConvergenceTrace trace;
};

/// Hierarchical ant colony allocation.
///
/// Every iteration, for each channel m, each ant carries m from the broker
/// and keeps placing it until no HGW can take it: it picks a NAN from
/// nan_probabilities, reinforces that NAN (semi_local_update), picks an HGW
/// inside it and reinforces the HGW (local_update). An HGW served by an ant
/// leaves that ant's candidate set, and the channel is blocked for the
/// HGW's interferers, so every ant ends the iteration holding a
/// conflict-free assignment. After evaporation the running mean pheromone
/// is turned into an assignment with final_selection.
///
/// The admission policy gates both the ants and the pheromone selection.
/// Returns the best candidate seen (ant solutions and mean-pheromone
/// selections) under params.trace_utility, ties going to the earliest.
/// Deterministic for a fixed params.seed.
AcsResult allocate(const SpectrumModel& model, const NanLayout& layout, const AcsParams& params,
                   const AdmissionPolicy& policy = admit_all());

} // namespace hanspec
