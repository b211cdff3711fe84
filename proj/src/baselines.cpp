#include "hanspec/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "hanspec/errors.hpp"
#include "hanspec/random.hpp"

namespace hanspec {

std::string_view to_string(AlgorithmKind kind) {
  switch (kind) {
  case AlgorithmKind::acs:
    return "acs";
  case AlgorithmKind::csgc:
    return "csgc";
  case AlgorithmKind::random:
    return "random";
  case AlgorithmKind::exact:
    return "exact";
  }
  return "?";
}

AlgorithmKind parse_algorithm(std::string_view token) {
  for (auto kind :
       {AlgorithmKind::acs, AlgorithmKind::csgc, AlgorithmKind::random, AlgorithmKind::exact}) {
    if (token == to_string(kind)) {
      return kind;
    }
  }
  throw ConfigError("unknown algorithm '" + std::string(token) +
                    "' (expected acs|csgc|random|exact)");
}

namespace {

bool clear_of_neighbors(const Assignment& a, const SpectrumModel& model, std::size_t n,
                        std::size_t m) {
  for (std::size_t k : model.neighbors(n, m)) {
    if (a.get(k, m)) {
      return false;
    }
  }
  return true;
}

} // namespace

Assignment random_assignment(const SpectrumModel& model, std::uint64_t seed) {
  const std::size_t users = model.user_count();
  const std::size_t channels = model.channel_count();
  Rng rng(seed);

  std::vector<std::size_t> order(users);
  for (std::size_t n = 0; n < users; ++n) {
    order[n] = n;
  }
  for (std::size_t k = users; k > 1; --k) {
    std::swap(order[k - 1], order[rng.below(k)]);
  }

  Assignment out(users, channels);
  std::vector<std::size_t> options;
  for (std::size_t n : order) {
    options.clear();
    for (std::size_t m = 0; m < channels; ++m) {
      if (model.available(n, m) && clear_of_neighbors(out, model, n, m)) {
        options.push_back(m);
      }
    }
    if (!options.empty()) {
      out.set(n, options[rng.below(options.size())]);
    }
  }
  return out;
}

Assignment csgc_assignment(const SpectrumModel& model, UtilityKind kind) {
  const std::size_t users = model.user_count();
  const std::size_t channels = model.channel_count();

  // open[n][m]: channel m still usable by unserved SU n.
  std::vector<std::uint8_t> open(users * channels, 0);
  for (std::size_t n = 0; n < users; ++n) {
    for (std::size_t m = 0; m < channels; ++m) {
      open[n * channels + m] = model.available(n, m) ? 1 : 0;
    }
  }
  std::vector<bool> served(users, false);
  Assignment out(users, channels);

  auto label = [&](std::size_t n, std::size_t m) {
    const double b = model.reward(n, m);
    if (kind == UtilityKind::msr) {
      return b;
    }
    std::size_t degree = 0;
    for (std::size_t k : model.neighbors(n, m)) {
      degree += (!served[k] && open[k * channels + m]) ? 1 : 0;
    }
    return b / static_cast<double>(degree + 1);
  };

  while (true) {
    double top = 0.0;
    std::size_t pick_n = users;
    std::size_t pick_m = channels;
    for (std::size_t n = 0; n < users; ++n) {
      if (served[n]) {
        continue;
      }
      for (std::size_t m = 0; m < channels; ++m) {
        if (!open[n * channels + m]) {
          continue;
        }
        const double l = label(n, m);
        if (l > top) {
          top = l;
          pick_n = n;
          pick_m = m;
        }
      }
    }
    if (pick_n == users) {
      break;
    }
    out.set(pick_n, pick_m);
    served[pick_n] = true;
    for (std::size_t k : model.neighbors(pick_n, pick_m)) {
      open[k * channels + pick_m] = 0;
    }
  }
  return out;
}

double brute_force_space(const SpectrumModel& model, PerUserCap cap) {
  double space = 1.0;
  for (std::size_t n = 0; n < model.user_count(); ++n) {
    const double a = static_cast<double>(model.available_count(n));
    space *= cap == PerUserCap::single ? 1.0 + a : std::exp2(a);
  }
  return space;
}

namespace {

class ExhaustiveSearch {
public:
  ExhaustiveSearch(const SpectrumModel& model, UtilityKind kind, PerUserCap cap)
      : model_(model), kind_(kind), current_(model.user_count(), model.channel_count()),
        rewards_(model.user_count(), 0.0) {
    const std::size_t channels = model.channel_count();
    // Row options in increasing lexicographic order of the binary row, so
    // the first maximiser found is the lexicographically smallest.
    options_.resize(model.user_count());
    for (std::size_t n = 0; n < model.user_count(); ++n) {
      std::vector<std::size_t> avail;
      for (std::size_t m = 0; m < channels; ++m) {
        if (model.available(n, m)) {
          avail.push_back(m);
        }
      }
      std::vector<std::uint64_t> masks; // bit (channels-1-m) set when m is held
      if (cap == PerUserCap::single) {
        masks.push_back(0);
        for (std::size_t m : avail) {
          masks.push_back(std::uint64_t{1} << (channels - 1 - m));
        }
      } else {
        const std::size_t subsets = std::size_t{1} << avail.size();
        for (std::size_t s = 0; s < subsets; ++s) {
          std::uint64_t mask = 0;
          for (std::size_t b = 0; b < avail.size(); ++b) {
            if (s & (std::size_t{1} << b)) {
              mask |= std::uint64_t{1} << (channels - 1 - avail[b]);
            }
          }
          masks.push_back(mask);
        }
      }
      std::sort(masks.begin(), masks.end());
      options_[n] = std::move(masks);
    }
  }

  ExactResult run() {
    descend(0);
    return {best_, best_utility_};
  }

private:
  bool holds(std::uint64_t mask, std::size_t m) const {
    return (mask >> (model_.channel_count() - 1 - m)) & 1U;
  }

  void descend(std::size_t n) {
    if (n == model_.user_count()) {
      const double u = utility(rewards_, kind_);
      if (!found_ || u > best_utility_) {
        found_ = true;
        best_utility_ = u;
        best_ = current_;
      }
      return;
    }
    const std::size_t channels = model_.channel_count();
    for (std::uint64_t mask : options_[n]) {
      bool ok = true;
      double r = 0.0;
      for (std::size_t m = 0; m < channels && ok; ++m) {
        if (!holds(mask, m)) {
          continue;
        }
        // Only earlier SUs are placed, so checking them covers every pair once.
        for (std::size_t k : model_.neighbors(n, m)) {
          if (k < n && current_.get(k, m)) {
            ok = false;
            break;
          }
        }
        r += model_.reward(n, m);
      }
      if (!ok) {
        continue;
      }
      for (std::size_t m = 0; m < channels; ++m) {
        current_.set(n, m, holds(mask, m));
      }
      rewards_[n] = r;
      descend(n + 1);
    }
    for (std::size_t m = 0; m < channels; ++m) {
      current_.set(n, m, false);
    }
    rewards_[n] = 0.0;
  }

  const SpectrumModel& model_;
  UtilityKind kind_;
  std::vector<std::vector<std::uint64_t>> options_;
  Assignment current_;
  std::vector<double> rewards_;
  Assignment best_;
  double best_utility_ = -std::numeric_limits<double>::infinity();
  bool found_ = false;
};

} // namespace

ExactResult brute_force_optimal(const SpectrumModel& model, UtilityKind kind, PerUserCap cap) {
  if (model.user_count() == 0) {
    throw ContractError("brute force needs at least one user");
  }
  if (model.channel_count() > 63) {
    throw CapacityError("brute force supports at most 63 channels");
  }
  const double space = brute_force_space(model, cap);
  if (space > kBruteForceBudget) {
    throw CapacityError("brute-force search space of " + std::to_string(space) +
                        " assignments exceeds the budget of " +
                        std::to_string(kBruteForceBudget) + "; downscale the instance");
  }
  return ExhaustiveSearch(model, kind, cap).run();
}

} // namespace hanspec
