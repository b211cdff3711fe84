#include "hanspec/utility.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hanspec/errors.hpp"

namespace hanspec {

std::optional<std::size_t> Assignment::channel_of(std::size_t n) const {
  for (std::size_t m = 0; m < channels_; ++m) {
    if (get(n, m)) {
      return m;
    }
  }
  return std::nullopt;
}

std::size_t Assignment::channels_held(std::size_t n) const {
  std::size_t held = 0;
  for (std::size_t m = 0; m < channels_; ++m) {
    held += get(n, m) ? 1 : 0;
  }
  return held;
}

std::size_t Assignment::served_users() const {
  std::size_t served = 0;
  for (std::size_t n = 0; n < users_; ++n) {
    served += channel_of(n).has_value() ? 1 : 0;
  }
  return served;
}

std::string_view to_string(UtilityKind kind) {
  switch (kind) {
  case UtilityKind::msr:
    return "msr";
  case UtilityKind::mmr:
    return "mmr";
  case UtilityKind::mpf:
    return "mpf";
  }
  return "?";
}

UtilityKind parse_utility(std::string_view token) {
  if (token == "msr") {
    return UtilityKind::msr;
  }
  if (token == "mmr") {
    return UtilityKind::mmr;
  }
  if (token == "mpf") {
    return UtilityKind::mpf;
  }
  throw ConfigError("unknown utility '" + std::string(token) + "' (expected msr|mmr|mpf)");
}

namespace {

void check_dimensions(const Assignment& a, const SpectrumModel& model) {
  if (a.user_count() != model.user_count() || a.channel_count() != model.channel_count()) {
    throw ContractError("assignment is " + std::to_string(a.user_count()) + "x" +
                        std::to_string(a.channel_count()) + " but the model is " +
                        std::to_string(model.user_count()) + "x" +
                        std::to_string(model.channel_count()));
  }
}

} // namespace

bool is_feasible(const Assignment& a, const SpectrumModel& model) {
  check_dimensions(a, model);
  for (std::size_t n = 0; n < a.user_count(); ++n) {
    for (std::size_t m = 0; m < a.channel_count(); ++m) {
      if (!a.get(n, m)) {
        continue;
      }
      if (!model.available(n, m)) {
        return false;
      }
      for (std::size_t k : model.neighbors(n, m)) {
        if (a.get(k, m)) {
          return false;
        }
      }
    }
  }
  return true;
}

std::vector<double> reward_vector(const Assignment& a, const SpectrumModel& model) {
  check_dimensions(a, model);
  std::vector<double> r(a.user_count(), 0.0);
  for (std::size_t n = 0; n < a.user_count(); ++n) {
    for (std::size_t m = 0; m < a.channel_count(); ++m) {
      if (a.get(n, m)) {
        r[n] += model.reward(n, m);
      }
    }
  }
  return r;
}

double utility(std::span<const double> rewards, UtilityKind kind) {
  if (rewards.empty()) {
    throw ContractError("utility of an empty reward vector");
  }
  switch (kind) {
  case UtilityKind::msr:
    return std::accumulate(rewards.begin(), rewards.end(), 0.0);
  case UtilityKind::mmr:
    return *std::min_element(rewards.begin(), rewards.end());
  case UtilityKind::mpf: {
    // Geometric mean in log space; the plain product underflows for large N.
    double log_sum = 0.0;
    for (double r : rewards) {
      log_sum += std::log(r + kFairnessShift);
    }
    return std::exp(log_sum / static_cast<double>(rewards.size()));
  }
  }
  return 0.0;
}

double evaluate(const Assignment& a, const SpectrumModel& model, UtilityKind kind) {
  if (!is_feasible(a, model)) {
    throw FeasibilityError("refusing to score an assignment outside the conflict-free set");
  }
  const auto r = reward_vector(a, model);
  return utility(r, kind);
}

} // namespace hanspec
