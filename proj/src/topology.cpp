#include "hanspec/topology.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hanspec/errors.hpp"
#include "hanspec/random.hpp"

namespace hanspec {

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

std::size_t Scenario::nan_count() const {
  std::size_t count = 0;
  for (const auto& su : secondaries) {
    count = std::max(count, su.nan_id + 1);
  }
  return count;
}

namespace {

bool inside(Point p, double side) {
  return std::isfinite(p.x) && std::isfinite(p.y) && p.x >= 0.0 && p.y >= 0.0 && p.x <= side &&
         p.y <= side;
}

} // namespace

void validate(const Scenario& scn) {
  if (!(scn.side > 0.0) || !std::isfinite(scn.side)) {
    throw ConfigError("scenario side must be positive and finite");
  }
  if (scn.channels < 1) {
    throw ConfigError("scenario needs at least one channel");
  }
  if (!(scn.d_min > 0.0) || !(scn.d_min < scn.d_max) || !std::isfinite(scn.d_max)) {
    throw ConfigError("scenario requires 0 < d_min < d_max");
  }
  if (scn.secondaries.empty()) {
    throw ConfigError("scenario needs at least one secondary user");
  }
  for (std::size_t i = 0; i < scn.primaries.size(); ++i) {
    const auto& pu = scn.primaries[i];
    if (pu.channel >= scn.channels) {
      throw ConfigError("primary " + std::to_string(i) + " occupies channel " +
                        std::to_string(pu.channel) + " outside 0.." +
                        std::to_string(scn.channels - 1));
    }
    if (!(pu.protection_radius > 0.0) || !std::isfinite(pu.protection_radius)) {
      throw ConfigError("primary " + std::to_string(i) + " has non-positive protection radius");
    }
    if (!inside(pu.position, scn.side)) {
      throw ConfigError("primary " + std::to_string(i) + " lies outside the scenario area");
    }
  }
  const std::size_t nans = scn.nan_count();
  std::vector<bool> seen(nans, false);
  for (std::size_t n = 0; n < scn.secondaries.size(); ++n) {
    const auto& su = scn.secondaries[n];
    if (su.id != n) {
      throw ConfigError("secondary ids must be dense 0..N-1 (index " + std::to_string(n) + ")");
    }
    if (!inside(su.position, scn.side)) {
      throw ConfigError("secondary " + std::to_string(n) + " lies outside the scenario area");
    }
    seen[su.nan_id] = true;
  }
  if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) {
    throw ConfigError("NAN ids must be dense: some NAN below the largest id has no HGW");
  }
}

void validate(const ScenarioConfig& cfg) {
  if (!(cfg.side > 0.0) || !std::isfinite(cfg.side)) {
    throw ConfigError("side must be positive");
  }
  if (cfg.channels < 1 || cfg.n_nans < 1 || cfg.sus_per_nan < 1) {
    throw ConfigError("channels, nans and sus-per-nan must be positive");
  }
  if (!(cfg.d_min > 0.0) || !(cfg.d_min < cfg.d_max) || !std::isfinite(cfg.d_max)) {
    throw ConfigError("require 0 < d_min < d_max");
  }
  if (!(cfg.dp > 0.0) || !std::isfinite(cfg.dp)) {
    throw ConfigError("dp must be positive");
  }
}

Scenario generate_scenario(const ScenarioConfig& cfg, std::uint64_t seed) {
  validate(cfg);
  Rng rng(seed);
  Scenario scn;
  scn.side = cfg.side;
  scn.channels = cfg.channels;
  scn.d_min = cfg.d_min;
  scn.d_max = cfg.d_max;
  scn.seed = seed;

  scn.primaries.reserve(cfg.n_pus);
  for (std::size_t x = 0; x < cfg.n_pus; ++x) {
    PrimaryUser pu;
    pu.id = x;
    pu.position.x = rng.uniform(0.0, cfg.side);
    pu.position.y = rng.uniform(0.0, cfg.side);
    pu.channel = static_cast<std::size_t>(rng.below(cfg.channels));
    pu.protection_radius = cfg.dp;
    scn.primaries.push_back(pu);
  }

  scn.secondaries.reserve(cfg.n_nans * cfg.sus_per_nan);
  for (std::size_t i = 0; i < cfg.n_nans; ++i) {
    for (std::size_t j = 0; j < cfg.sus_per_nan; ++j) {
      SecondaryUser su;
      su.id = scn.secondaries.size();
      su.nan_id = i;
      su.position.x = rng.uniform(0.0, cfg.side);
      su.position.y = rng.uniform(0.0, cfg.side);
      scn.secondaries.push_back(su);
    }
  }
  return scn;
}

double coverage_radius(const Scenario& scn, std::size_t n, std::size_t m) {
  const Point at = scn.secondaries.at(n).position;
  double radius = scn.d_max;
  for (const auto& pu : scn.primaries) {
    if (pu.channel == m) {
      radius = std::min(radius, distance(pu.position, at) - pu.protection_radius);
    }
  }
  return std::max(radius, 0.0);
}

void SpectrumModel::finalize() {
  neighbors_.assign(users_ * channels_, {});
  avail_count_.assign(users_, 0);
  b_max_ = 0.0;
  for (std::size_t n = 0; n < users_; ++n) {
    for (std::size_t m = 0; m < channels_; ++m) {
      if (!available(n, m)) {
        reward_[n * channels_ + m] = 0.0;
        continue;
      }
      ++avail_count_[n];
      b_max_ = std::max(b_max_, reward(n, m));
      for (std::size_t k = 0; k < users_; ++k) {
        if (interferes(n, k, m)) {
          neighbors_[n * channels_ + m].push_back(k);
        }
      }
    }
  }
}

SpectrumModel build_model(const Scenario& scn, RewardMode mode) {
  validate(scn);
  SpectrumModel model;
  const std::size_t users = scn.user_count();
  const std::size_t channels = scn.channel_count();
  model.users_ = users;
  model.channels_ = channels;
  model.ds_.assign(users * channels, 0.0);
  model.avail_.assign(users * channels, 0);
  model.reward_.assign(users * channels, 0.0);
  model.conflict_.assign(users * users * channels, 0);

  for (std::size_t n = 0; n < users; ++n) {
    for (std::size_t m = 0; m < channels; ++m) {
      const double ds = coverage_radius(scn, n, m);
      const std::size_t at = n * channels + m;
      model.ds_[at] = ds;
      if (ds >= scn.d_min) {
        model.avail_[at] = 1;
        model.reward_[at] = mode == RewardMode::coverage ? ds * ds : std::log1p(ds * ds);
      }
    }
  }

  for (std::size_t n = 0; n < users; ++n) {
    for (std::size_t k = n + 1; k < users; ++k) {
      const double dist = distance(scn.secondaries[n].position, scn.secondaries[k].position);
      for (std::size_t m = 0; m < channels; ++m) {
        if (model.available(n, m) && model.available(k, m) && dist < model.ds(n, m) + model.ds(k, m)) {
          model.conflict_[(n * users + k) * channels + m] = 1;
          model.conflict_[(k * users + n) * channels + m] = 1;
        }
      }
    }
  }
  model.finalize();
  return model;
}

SpectrumModelBuilder::SpectrumModelBuilder(std::size_t users, std::size_t channels) {
  model_.users_ = users;
  model_.channels_ = channels;
  model_.ds_.assign(users * channels, 0.0);
  model_.avail_.assign(users * channels, 0);
  model_.reward_.assign(users * channels, 0.0);
  model_.conflict_.assign(users * users * channels, 0);
}

SpectrumModelBuilder& SpectrumModelBuilder::channel(std::size_t n, std::size_t m, double reward,
                                                    double ds) {
  const std::size_t at = n * model_.channels_ + m;
  model_.avail_.at(at) = 1;
  model_.reward_.at(at) = reward;
  model_.ds_.at(at) = ds;
  return *this;
}

SpectrumModelBuilder& SpectrumModelBuilder::conflict(std::size_t n, std::size_t k, std::size_t m) {
  if (n == k) {
    throw ContractError("a user cannot conflict with itself");
  }
  const std::size_t users = model_.users_;
  model_.conflict_.at((n * users + k) * model_.channels_ + m) = 1;
  model_.conflict_.at((k * users + n) * model_.channels_ + m) = 1;
  return *this;
}

SpectrumModel SpectrumModelBuilder::build() const {
  SpectrumModel model = model_;
  // Conflicts only exist between users that can both use the channel.
  for (std::size_t n = 0; n < model.users_; ++n) {
    for (std::size_t k = 0; k < model.users_; ++k) {
      for (std::size_t m = 0; m < model.channels_; ++m) {
        if (!model.available(n, m) || !model.available(k, m)) {
          model.conflict_[(n * model.users_ + k) * model.channels_ + m] = 0;
        }
      }
    }
  }
  model.finalize();
  return model;
}

NanLayout nan_layout(const Scenario& scn) {
  NanLayout layout;
  layout.members.resize(scn.nan_count());
  for (const auto& su : scn.secondaries) {
    layout.members[su.nan_id].push_back(su.id);
  }
  return layout;
}

NanLayout singleton_layout(std::size_t users) {
  NanLayout layout;
  layout.members.resize(users);
  for (std::size_t n = 0; n < users; ++n) {
    layout.members[n].push_back(n);
  }
  return layout;
}

} // namespace hanspec
