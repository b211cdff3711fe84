#pragma once

#include <cstdint>
#include <string_view>

#include "hanspec/topology.hpp"
#include "hanspec/utility.hpp"

namespace hanspec {

enum class AlgorithmKind { acs, csgc, random, exact };

std::string_view to_string(AlgorithmKind kind);
AlgorithmKind parse_algorithm(std::string_view token);

/// SUs in random order each take a uniformly chosen channel that is
/// available and clear of already-served interferers.
Assignment random_assignment(const SpectrumModel& model, std::uint64_t seed);

/// Greedy colour-sensitive labelling: repeatedly serve the SU whose best
/// remaining channel has the highest label, then strike that channel from
/// its interferers. Labels are b for MSR and b / (deg + 1) otherwise.
Assignment csgc_assignment(const SpectrumModel& model, UtilityKind kind);

enum class PerUserCap { single, multi };

struct ExactResult {
  Assignment assignment;
  double utility = 0.0;
};

/// Largest number of candidate assignments brute force will enumerate.
inline constexpr double kBruteForceBudget = 1e7;

/// Exhaustive maximiser over the conflict-free set; ties go to the
/// lexicographically smallest assignment. Throws CapacityError when the
/// search space exceeds kBruteForceBudget.
ExactResult brute_force_optimal(const SpectrumModel& model, UtilityKind kind,
                                PerUserCap cap = PerUserCap::single);

/// Size of the brute-force search space for the instance.
double brute_force_space(const SpectrumModel& model, PerUserCap cap = PerUserCap::single);

} // namespace hanspec
