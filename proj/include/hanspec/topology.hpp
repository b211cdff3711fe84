#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace hanspec {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

double distance(Point a, Point b);

struct PrimaryUser {
  std::size_t id = 0;
  Point position;
  std::size_t channel = 0;
  double protection_radius = 0.0;

  friend bool operator==(const PrimaryUser&, const PrimaryUser&) = default;
};

struct SecondaryUser {
  std::size_t id = 0;
  std::size_t nan_id = 0;
  Point position;

  friend bool operator==(const SecondaryUser&, const SecondaryUser&) = default;
};

/// Population and geometry of one home/neighbourhood area network.
/// SUs are the home gateways (HGWs); nan_id groups them under a
/// neighbourhood gateway.
struct Scenario {
  double side = 10.0;
  std::size_t channels = 1;
  double d_min = 1.0;
  double d_max = 4.0;
  std::vector<PrimaryUser> primaries;
  std::vector<SecondaryUser> secondaries;
  std::uint64_t seed = 0;

  std::size_t user_count() const { return secondaries.size(); }
  std::size_t channel_count() const { return channels; }
  std::size_t nan_count() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Throws ConfigError when a scenario breaks its invariants.
void validate(const Scenario& scn);

struct ScenarioConfig {
  double side = 10.0;
  std::size_t channels = 10;
  std::size_t n_nans = 5;
  std::size_t sus_per_nan = 20;
  std::size_t n_pus = 10;
  double d_min = 1.0;
  double d_max = 4.0;
  double dp = 2.0;
};

void validate(const ScenarioConfig& cfg);

/// Draws PU then SU positions uniformly in [0, side)^2. PU channels are
/// uniform over 0..channels-1. SUs are numbered NAN by NAN.
Scenario generate_scenario(const ScenarioConfig& cfg, std::uint64_t seed);

/// Transmit range of SU n on channel m: d_max shrunk so its disc stays
/// clear of every PU protection area on m, never below zero.
double coverage_radius(const Scenario& scn, std::size_t n, std::size_t m);

enum class RewardMode { coverage, capacity };

/// Derived availability (L), interference (C) and reward (B) matrices.
class SpectrumModel {
public:
  SpectrumModel() = default;

  std::size_t user_count() const { return users_; }
  std::size_t channel_count() const { return channels_; }

  double ds(std::size_t n, std::size_t m) const { return ds_[n * channels_ + m]; }
  bool available(std::size_t n, std::size_t m) const { return avail_[n * channels_ + m] != 0; }
  double reward(std::size_t n, std::size_t m) const { return reward_[n * channels_ + m]; }
  bool interferes(std::size_t n, std::size_t k, std::size_t m) const {
    return conflict_[(n * users_ + k) * channels_ + m] != 0;
  }
  double b_max() const { return b_max_; }

  /// SUs k with c_{n,k,m} = 1, ascending.
  const std::vector<std::size_t>& neighbors(std::size_t n, std::size_t m) const {
    return neighbors_[n * channels_ + m];
  }
  /// Number of channels available to n.
  std::size_t available_count(std::size_t n) const { return avail_count_[n]; }

  friend SpectrumModel build_model(const Scenario& scn, RewardMode mode);
  friend class SpectrumModelBuilder;

private:
  std::size_t users_ = 0;
  std::size_t channels_ = 0;
  std::vector<double> ds_;
  std::vector<std::uint8_t> avail_;
  std::vector<double> reward_;
  std::vector<std::uint8_t> conflict_;
  std::vector<std::vector<std::size_t>> neighbors_;
  std::vector<std::size_t> avail_count_;
  double b_max_ = 0.0;

  void finalize();
};

SpectrumModel build_model(const Scenario& scn, RewardMode mode = RewardMode::coverage);

/// Hand-built models for tests and small experiments. Interference is
/// symmetric by construction; the reward of an unavailable entry is forced
/// to zero.
class SpectrumModelBuilder {
public:
  SpectrumModelBuilder(std::size_t users, std::size_t channels);

  SpectrumModelBuilder& channel(std::size_t n, std::size_t m, double reward, double ds = 0.0);
  SpectrumModelBuilder& conflict(std::size_t n, std::size_t k, std::size_t m);
  SpectrumModel build() const;

private:
  SpectrumModel model_;
};

/// HGW membership of each NAN, in SU-index order.
struct NanLayout {
  std::vector<std::vector<std::size_t>> members;

  std::size_t nan_count() const { return members.size(); }
};

NanLayout nan_layout(const Scenario& scn);
/// Every SU in a NAN of its own.
NanLayout singleton_layout(std::size_t users);

} // namespace hanspec
