#include "hanspec/acs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "hanspec/errors.hpp"

namespace hanspec {

void validate(const AcsParams& params) {
  if (params.n_ants < 1) {
    throw ConfigError("ACS needs at least one ant");
  }
  if (params.iterations < 1) {
    throw ConfigError("ACS needs at least one iteration");
  }
  auto open_unit = [](double v) { return v > 0.0 && v < 1.0; };
  if (!open_unit(params.rho)) {
    throw ConfigError("rho must lie strictly inside (0, 1)");
  }
  if (!open_unit(params.g_cap) || !open_unit(params.g_prime)) {
    throw ConfigError("selection parameters G and G' must lie strictly inside (0, 1)");
  }
}

PheromoneTensor::PheromoneTensor(const NanLayout& layout, std::size_t channels)
    : layout_(&layout), channels_(channels) {
  std::size_t users = 0;
  for (const auto& members : layout.members) {
    for (std::size_t n : members) {
      users = std::max(users, n + 1);
    }
  }
  nan_of_.assign(users, 0);
  for (std::size_t i = 0; i < layout.members.size(); ++i) {
    for (std::size_t n : layout.members[i]) {
      nan_of_[n] = i;
    }
  }
  current_.assign(users * channels, 1.0);
  history_sum_.assign(users * channels, 0.0);
}

void PheromoneTensor::record_iteration() {
  for (std::size_t k = 0; k < current_.size(); ++k) {
    history_sum_[k] += current_[k];
  }
  ++recorded_;
}

std::vector<double> PheromoneTensor::mean() const {
  if (recorded_ == 0) {
    throw ContractError("pheromone mean requested before any iteration was recorded");
  }
  std::vector<double> out(history_sum_.size());
  const double scale = 1.0 / static_cast<double>(recorded_);
  std::transform(history_sum_.begin(), history_sum_.end(), out.begin(),
                 [scale](double v) { return v * scale; });
  return out;
}

void AntState::take(std::size_t n, std::size_t m, const SpectrumModel& model) {
  visited[n] = true;
  solution.set(n, m);
  const std::size_t channels = solution.channel_count();
  for (std::size_t k : model.neighbors(n, m)) {
    blocked[k * channels + m] = true;
  }
}

AdmissionPolicy admit_all() {
  return [](std::size_t, std::size_t, std::size_t) { return true; };
}

namespace {

// Everything in the HGW score except the pheromone itself.
double heuristic_factor(std::size_t n, std::size_t m, const PheromoneTensor& pheromone,
                        const SpectrumModel& model, const AcsParams& params) {
  if (!model.available(n, m) || model.b_max() <= 0.0) {
    return 0.0;
  }
  const std::size_t nan = pheromone.nan_of(n);
  const double nan_size = static_cast<double>(pheromone.hgw_count(nan));
  const double channels = static_cast<double>(model.channel_count());

  std::size_t intra_nan_conflicts = 0;
  for (std::size_t k : model.neighbors(n, m)) {
    intra_nan_conflicts += pheromone.nan_of(k) == nan ? 1 : 0;
  }
  const double kappa = static_cast<double>(intra_nan_conflicts) +
                       (params.interference_smoothing ? 1.0 : 0.0);
  return model.reward(n, m) / (channels * nan_size * model.b_max()) *
         static_cast<double>(model.available_count(n)) * kappa;
}

bool eligible(std::size_t nan, std::size_t hgw, std::size_t m, const PheromoneTensor& pheromone,
              const AdmissionPolicy& policy, const AntState* ant) {
  if (ant != nullptr && !ant->can_take(pheromone.user_of(nan, hgw), m)) {
    return false;
  }
  return policy(nan, hgw, m);
}

} // namespace

double hgw_score(std::size_t nan, std::size_t hgw, std::size_t m, const PheromoneTensor& pheromone,
                 const SpectrumModel& model, const AcsParams& params) {
  const std::size_t n = pheromone.user_of(nan, hgw);
  return pheromone.at(nan, hgw, m) * heuristic_factor(n, m, pheromone, model, params);
}

std::vector<double> hgw_scores(std::size_t nan, std::size_t m, const PheromoneTensor& pheromone,
                               const SpectrumModel& model, const AdmissionPolicy& policy,
                               const AcsParams& params, const AntState* ant) {
  std::vector<double> scores(pheromone.hgw_count(nan), 0.0);
  for (std::size_t j = 0; j < scores.size(); ++j) {
    if (eligible(nan, j, m, pheromone, policy, ant)) {
      scores[j] = hgw_score(nan, j, m, pheromone, model, params);
    }
  }
  return scores;
}

std::vector<double> nan_probabilities(std::size_t m, const PheromoneTensor& pheromone,
                                      const SpectrumModel& model, const AdmissionPolicy& policy,
                                      const AcsParams& params, const AntState* ant) {
  std::vector<double> p(pheromone.nan_count(), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto scores = hgw_scores(i, m, pheromone, model, policy, params, ant);
    p[i] = std::accumulate(scores.begin(), scores.end(), 0.0);
    total += p[i];
  }
  if (total > 0.0) {
    for (double& v : p) {
      v /= total;
    }
  }
  return p;
}

std::size_t select_with_draws(std::span<const double> p, double threshold, double g,
                              double roulette) {
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  if (p.empty() || !(total > 0.0)) {
    throw NoCandidateError("selection over an all-zero distribution");
  }
  if (g > threshold) {
    return static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
  }
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] <= 0.0) {
      continue;
    }
    last_positive = k;
    cumulative += p[k] / total;
    if (cumulative >= roulette) {
      return k;
    }
  }
  // Rounding left the cumulative mass just short of the draw.
  return last_positive;
}

std::size_t select(std::span<const double> p, double threshold, Rng& rng) {
  const double g = rng.uniform_open();
  if (g > threshold) {
    return select_with_draws(p, threshold, g, 0.0);
  }
  return select_with_draws(p, threshold, g, rng.uniform_open());
}

double deposit_amount(std::size_t n, std::size_t m, const SpectrumModel& model,
                      const AcsParams& params) {
  const std::size_t reachable = model.available_count(n);
  if (reachable == 0 || !model.available(n, m)) {
    return 0.0;
  }
  double base = model.reward(n, m);
  if (params.normalize_deposit) {
    base /= model.b_max();
  }
  const double exponent =
      static_cast<double>(model.channel_count()) / static_cast<double>(reachable);
  return std::pow(base, exponent);
}

void semi_local_update(PheromoneTensor& pheromone, std::size_t nan, std::size_t m,
                       const SpectrumModel& model, const AcsParams& params) {
  for (std::size_t j = 0; j < pheromone.hgw_count(nan); ++j) {
    pheromone.at(nan, j, m) += deposit_amount(pheromone.user_of(nan, j), m, model, params);
  }
}

void local_update(PheromoneTensor& pheromone, std::size_t nan, std::size_t hgw, std::size_t m,
                  const SpectrumModel& model, const AcsParams& params) {
  pheromone.at(nan, hgw, m) += deposit_amount(pheromone.user_of(nan, hgw), m, model, params);
}

void global_evaporation(PheromoneTensor& pheromone, const AcsParams& params) {
  for (double& v : pheromone.current()) {
    v *= params.rho;
  }
}

namespace {

template <typename Allowed>
Assignment repair_by_pheromone(std::span<const double> mean_pheromone, const SpectrumModel& model,
                               Allowed allowed) {
  const std::size_t users = model.user_count();
  const std::size_t channels = model.channel_count();
  if (mean_pheromone.size() != users * channels) {
    throw ContractError("mean pheromone matrix does not match the model dimensions");
  }
  auto value = [&](std::size_t n, std::size_t m) { return mean_pheromone[n * channels + m]; };

  std::vector<std::size_t> order;
  std::vector<double> best(users, -std::numeric_limits<double>::infinity());
  for (std::size_t n = 0; n < users; ++n) {
    for (std::size_t m = 0; m < channels; ++m) {
      if (allowed(n, m)) {
        best[n] = std::max(best[n], value(n, m));
      }
    }
    if (best[n] > -std::numeric_limits<double>::infinity()) {
      order.push_back(n);
    }
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return best[a] > best[b]; });

  Assignment out(users, channels);
  std::vector<std::size_t> prefs;
  for (std::size_t n : order) {
    prefs.clear();
    for (std::size_t m = 0; m < channels; ++m) {
      if (allowed(n, m)) {
        prefs.push_back(m);
      }
    }
    std::stable_sort(prefs.begin(), prefs.end(),
                     [&](std::size_t a, std::size_t b) { return value(n, a) > value(n, b); });
    for (std::size_t m : prefs) {
      const auto& nbrs = model.neighbors(n, m);
      const bool clash =
          std::any_of(nbrs.begin(), nbrs.end(), [&](std::size_t k) { return out.get(k, m); });
      if (!clash) {
        out.set(n, m);
        break;
      }
    }
  }
  return out;
}

} // namespace

Assignment final_selection(std::span<const double> mean_pheromone, const SpectrumModel& model) {
  return repair_by_pheromone(mean_pheromone, model,
                             [&](std::size_t n, std::size_t m) { return model.available(n, m); });
}

Assignment final_selection(std::span<const double> mean_pheromone, const SpectrumModel& model,
                           const NanLayout& layout, const AdmissionPolicy& policy) {
  std::vector<std::size_t> nan_of(model.user_count(), 0);
  std::vector<std::size_t> hgw_of(model.user_count(), 0);
  for (std::size_t i = 0; i < layout.members.size(); ++i) {
    for (std::size_t j = 0; j < layout.members[i].size(); ++j) {
      nan_of.at(layout.members[i][j]) = i;
      hgw_of.at(layout.members[i][j]) = j;
    }
  }
  return repair_by_pheromone(mean_pheromone, model, [&](std::size_t n, std::size_t m) {
    return model.available(n, m) && policy(nan_of[n], hgw_of[n], m);
  });
}

void normalize_costs_jointly(std::span<ConvergenceTrace> traces, TraceSeries series) {
  auto value = [series](const TracePoint& pt) {
    return series == TraceSeries::consensus ? pt.best_utility : pt.incumbent_utility;
  };
  double hi = -std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& trace : traces) {
    for (const auto& pt : trace.points) {
      hi = std::max(hi, value(pt));
      lo = std::min(lo, value(pt));
    }
  }
  const double span = hi - lo;
  for (auto& trace : traces) {
    for (auto& pt : trace.points) {
      pt.normalized_cost = span > 0.0 ? (hi - value(pt)) / span : 0.0;
    }
  }
}

void normalize_costs(ConvergenceTrace& trace, TraceSeries series) {
  normalize_costs_jointly(std::span(&trace, 1), series);
}

std::size_t converged_iteration(const ConvergenceTrace& trace) {
  if (trace.points.empty()) {
    return 0;
  }
  std::size_t last_improvement = trace.points.front().iteration;
  for (std::size_t k = 1; k < trace.points.size(); ++k) {
    if (trace.points[k].best_utility > trace.points[k - 1].best_utility) {
      last_improvement = trace.points[k].iteration;
    }
  }
  const std::size_t final_iteration = trace.points.back().iteration;
  if (final_iteration - last_improvement >= kConvergenceWindow) {
    return last_improvement;
  }
  return final_iteration;
}

AcsResult allocate(const SpectrumModel& model, const NanLayout& layout, const AcsParams& params,
                   const AdmissionPolicy& policy) {
  validate(params);
  const std::size_t users = model.user_count();
  const std::size_t channels = model.channel_count();
  std::size_t covered = 0;
  for (const auto& members : layout.members) {
    covered += members.size();
  }
  if (covered != users) {
    throw ContractError("NAN layout covers " + std::to_string(covered) + " HGWs but the model has " +
                        std::to_string(users));
  }

  PheromoneTensor pheromone(layout, channels);
  Rng rng(params.seed);

  // The non-pheromone part of every score is fixed for the whole run.
  std::vector<double> heuristic(users * channels, 0.0);
  for (std::size_t n = 0; n < users; ++n) {
    for (std::size_t m = 0; m < channels; ++m) {
      heuristic[n * channels + m] = heuristic_factor(n, m, pheromone, model, params);
    }
  }

  AcsResult result;
  result.trace.seed = params.seed;
  Assignment best_assignment(users, channels);
  double best = -std::numeric_limits<double>::infinity();
  auto consider = [&](const Assignment& a) {
    const double u = evaluate(a, model, params.trace_utility);
    if (u > best) {
      best = u;
      best_assignment = a;
    }
  };

  double consensus_best = -std::numeric_limits<double>::infinity();
  std::vector<AntState> ants;
  std::vector<double> nan_mass(layout.nan_count());
  std::vector<std::vector<double>> scores(layout.nan_count());

  for (std::size_t xi = 1; xi <= params.iterations; ++xi) {
    ants.assign(params.n_ants, AntState(users, channels));
    for (std::size_t m = 0; m < channels; ++m) {
      for (auto& ant : ants) {
        ant.carried_channel = m;
        // The ant keeps placing channel m while any HGW can still take it.
        while (true) {
          double total = 0.0;
          for (std::size_t i = 0; i < layout.nan_count(); ++i) {
            const auto& members = layout.members[i];
            scores[i].assign(members.size(), 0.0);
            double mass = 0.0;
            for (std::size_t j = 0; j < members.size(); ++j) {
              const std::size_t n = members[j];
              const double h = heuristic[n * channels + m];
              if (h <= 0.0 || !ant.can_take(n, m) || !policy(i, j, m)) {
                continue;
              }
              scores[i][j] = pheromone.user_value(n, m) * h;
              mass += scores[i][j];
            }
            nan_mass[i] = mass;
            total += mass;
          }
          if (!(total > 0.0)) {
            break;
          }
          const std::size_t nan = select(nan_mass, params.g_cap, rng);
          semi_local_update(pheromone, nan, m, model, params);
          // HGW choice reuses the scores computed for the NAN step.
          const std::size_t hgw = select(scores[nan], params.g_prime, rng);
          local_update(pheromone, nan, hgw, m, model, params);
          ant.take(layout.members[nan][hgw], m, model);
        }
      }
    }
    for (const auto& ant : ants) {
      consider(ant.solution);
    }
    global_evaporation(pheromone, params);
    pheromone.record_iteration();

    // Channel choice from the running mean pheromone competes with the ants.
    const Assignment consensus = final_selection(pheromone.mean(), model, layout, policy);
    consider(consensus);
    consensus_best = std::max(consensus_best, evaluate(consensus, model, params.trace_utility));
    result.trace.points.push_back({xi, consensus_best, best, 0.0});
  }

  normalize_costs(result.trace);
  result.trace.converged_at = converged_iteration(result.trace);
  result.assignment = best_assignment;
  result.utility = best;
  return result;
}

} // namespace hanspec
