#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hanspec/topology.hpp"

namespace hanspec {

/// Binary N x M channel-allocation matrix.
class Assignment {
public:
  Assignment() = default;
  Assignment(std::size_t users, std::size_t channels)
      : users_(users), channels_(channels), cells_(users * channels, 0) {}

  std::size_t user_count() const { return users_; }
  std::size_t channel_count() const { return channels_; }

  bool get(std::size_t n, std::size_t m) const { return cells_[n * channels_ + m] != 0; }
  void set(std::size_t n, std::size_t m, bool on = true) { cells_[n * channels_ + m] = on ? 1 : 0; }

  /// First channel held by n, if any.
  std::optional<std::size_t> channel_of(std::size_t n) const;
  std::size_t channels_held(std::size_t n) const;
  std::size_t served_users() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;
  /// Row-major lexicographic order over the binary entries.
  friend auto operator<=>(const Assignment& a, const Assignment& b) { return a.cells_ <=> b.cells_; }

private:
  std::size_t users_ = 0;
  std::size_t channels_ = 0;
  std::vector<std::uint8_t> cells_;
};

enum class UtilityKind { msr, mmr, mpf };

std::string_view to_string(UtilityKind kind);
UtilityKind parse_utility(std::string_view token);

/// Shift added to every reward in the proportional-fair product.
inline constexpr double kFairnessShift = 1e-6;

/// Membership in the conflict-free set: respects L and no two holders of a
/// channel interfere on it.
bool is_feasible(const Assignment& a, const SpectrumModel& model);

/// r_n = sum_m a_{n,m} b_{n,m}. Defined for any binary A.
std::vector<double> reward_vector(const Assignment& a, const SpectrumModel& model);

/// MSR = sum r, MMR = min r, MPF = geometric mean of (r + 1e-6).
double utility(std::span<const double> rewards, UtilityKind kind);

/// Utility of a feasible assignment; throws FeasibilityError otherwise.
double evaluate(const Assignment& a, const SpectrumModel& model, UtilityKind kind);

} // namespace hanspec
