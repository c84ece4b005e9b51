#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "zsort/record.hpp"

namespace zsort::datagen {

enum class Distribution { Uniform, Normal, Skewed, NearlySorted, HighDuplicate };

/// Knobs for every family. Only the fields of the selected kind are read.
struct DistributionParams {
  double normal_mean = 0.0;
  double normal_stddev = 1e9;
  /// Pareto scale x_m and shape; keys are floor(x_m * u^(-1/shape)).
  double pareto_scale = 1.0;
  double pareto_shape = 1.5;
  /// floor(swap_fraction * n) random index-pair swaps applied to sorted keys.
  double swap_fraction = 0.01;
  /// HighDuplicate keys are uniform over [0, duplicate_range).
  std::uint64_t duplicate_range = 1000;
};

struct DistributionSpec {
  Distribution kind = Distribution::Uniform;
  std::size_t size = 1;
  std::uint64_t seed = 0;
  DistributionParams params;
};

std::string_view to_string(Distribution kind);
/// Accepts uniform, normal, skewed, nearly_sorted (or nearly-sorted), high_duplicate
/// (or high-duplicate, duplicates). Throws std::invalid_argument otherwise.
Distribution parse_distribution(std::string_view name);
inline constexpr Distribution kAllDistributions[] = {
    Distribution::Uniform, Distribution::Normal, Distribution::Skewed, Distribution::NearlySorted,
    Distribution::HighDuplicate};

/// spec.size records drawn with std::mt19937_64 seeded by spec.seed.
/// Payload i is the record's 0-based position in the generated sequence.
/// Throws std::invalid_argument on size 0 or out-of-range parameters.
Records generate(const DistributionSpec& spec);

struct DistributionSummary {
  std::int64_t min = 0;
  std::int64_t max = 0;
  std::size_t distinct = 0;
  /// Present for n <= kInversionLimit.
  std::optional<std::uint64_t> inversions;
};

inline constexpr std::size_t kInversionLimit = 100000;

/// Throws std::invalid_argument on empty input.
DistributionSummary distribution_stats(std::span<const std::int64_t> keys);

/// Number of pairs i < j with keys[i] > keys[j], counted by merge sort.
std::uint64_t count_inversions(std::span<const std::int64_t> keys);

}  // namespace zsort::datagen
