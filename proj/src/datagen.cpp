#include "zsort/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace zsort::datagen {

namespace {

constexpr double kMaxKeyAsDouble = 9223372036854775807.0;  // rounds to 2^63

// (0, 1] with 53 random bits.
double unit_open_closed(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

// [0, 1) with 53 random bits.
double unit_closed_open(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::int64_t saturate(double v) {
  if (!(v < kMaxKeyAsDouble)) return std::numeric_limits<std::int64_t>::max();
  if (!(v >= -kMaxKeyAsDouble)) return std::numeric_limits<std::int64_t>::min();
  return static_cast<std::int64_t>(v);
}

// Box-Muller; both outputs of each draw are used.
void fill_normal(std::mt19937_64& rng, std::span<std::int64_t> keys, double mean, double stddev) {
  for (std::size_t i = 0; i < keys.size(); i += 2) {
    const double radius = std::sqrt(-2.0 * std::log(unit_open_closed(rng)));
    const double angle = 2.0 * std::numbers::pi * unit_closed_open(rng);
    keys[i] = saturate(std::round(mean + stddev * radius * std::cos(angle)));
    if (i + 1 < keys.size())
      keys[i + 1] = saturate(std::round(mean + stddev * radius * std::sin(angle)));
  }
}

void fill_pareto(std::mt19937_64& rng, std::span<std::int64_t> keys, double scale, double shape) {
  const double exponent = -1.0 / shape;
  for (auto& k : keys) k = saturate(std::floor(scale * std::pow(unit_open_closed(rng), exponent)));
}

void fill_nearly_sorted(std::mt19937_64& rng, std::span<std::int64_t> keys, double fraction) {
  for (auto& k : keys) k = static_cast<std::int64_t>(rng());
  std::sort(keys.begin(), keys.end());
  const std::size_t n = keys.size();
  const auto swaps = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n)));
  for (std::size_t s = 0; s < swaps; ++s) {
    const std::size_t i = rng() % n;
    const std::size_t j = rng() % n;
    std::swap(keys[i], keys[j]);
  }
}

void validate(const DistributionSpec& spec) {
  if (spec.size == 0) throw std::invalid_argument("distribution size must be >= 1");
  const auto& p = spec.params;
  switch (spec.kind) {
    case Distribution::Normal:
      if (!(p.normal_stddev > 0.0) || !std::isfinite(p.normal_stddev) ||
          !std::isfinite(p.normal_mean))
        throw std::invalid_argument("normal stddev must be finite and > 0");
      break;
    case Distribution::Skewed:
      if (!(p.pareto_scale > 0.0) || !(p.pareto_shape > 0.0))
        throw std::invalid_argument("pareto scale and shape must be > 0");
      break;
    case Distribution::NearlySorted:
      if (!(p.swap_fraction >= 0.0) || p.swap_fraction > 1.0)
        throw std::invalid_argument("swap fraction must lie in [0, 1]");
      break;
    case Distribution::HighDuplicate:
      if (p.duplicate_range == 0) throw std::invalid_argument("duplicate range must be >= 1");
      break;
    case Distribution::Uniform:
      break;
    default:
      throw std::invalid_argument("unsupported distribution kind");
  }
}

}  // namespace

std::string_view to_string(Distribution kind) {
  switch (kind) {
    case Distribution::Uniform: return "uniform";
    case Distribution::Normal: return "normal";
    case Distribution::Skewed: return "skewed";
    case Distribution::NearlySorted: return "nearly_sorted";
    case Distribution::HighDuplicate: return "high_duplicate";
  }
  return "unknown";
}

Distribution parse_distribution(std::string_view name) {
  if (name == "uniform") return Distribution::Uniform;
  if (name == "normal") return Distribution::Normal;
  if (name == "skewed" || name == "pareto") return Distribution::Skewed;
  if (name == "nearly_sorted" || name == "nearly-sorted") return Distribution::NearlySorted;
  if (name == "high_duplicate" || name == "high-duplicate" || name == "duplicates")
    return Distribution::HighDuplicate;
  throw std::invalid_argument("unknown distribution: " + std::string(name));
}

Records generate(const DistributionSpec& spec) {
  validate(spec);
  std::mt19937_64 rng(spec.seed);
  std::vector<std::int64_t> keys(spec.size);
  const auto& p = spec.params;
  switch (spec.kind) {
    case Distribution::Uniform:
      for (auto& k : keys) k = static_cast<std::int64_t>(rng());
      break;
    case Distribution::Normal:
      fill_normal(rng, keys, p.normal_mean, p.normal_stddev);
      break;
    case Distribution::Skewed:
      fill_pareto(rng, keys, p.pareto_scale, p.pareto_shape);
      break;
    case Distribution::NearlySorted:
      fill_nearly_sorted(rng, keys, p.swap_fraction);
      break;
    case Distribution::HighDuplicate:
      for (auto& k : keys) k = static_cast<std::int64_t>(rng() % p.duplicate_range);
      break;
  }
  Records out(spec.size);
  for (std::size_t i = 0; i < keys.size(); ++i) out[i] = Record{keys[i], i};
  return out;
}

namespace {

std::uint64_t count_and_merge(std::span<std::int64_t> a, std::span<std::int64_t> tmp) {
  const std::size_t n = a.size();
  if (n < 2) return 0;
  const std::size_t mid = n / 2;
  std::uint64_t inv = count_and_merge(a.first(mid), tmp.first(mid)) +
                      count_and_merge(a.subspan(mid), tmp.subspan(mid));
  std::size_t i = 0, j = mid, out = 0;
  while (i < mid && j < n) {
    if (a[j] < a[i]) {
      inv += mid - i;
      tmp[out++] = a[j++];
    } else {
      tmp[out++] = a[i++];
    }
  }
  while (i < mid) tmp[out++] = a[i++];
  while (j < n) tmp[out++] = a[j++];
  std::copy(tmp.begin(), tmp.begin() + static_cast<std::ptrdiff_t>(n), a.begin());
  return inv;
}

}  // namespace

std::uint64_t count_inversions(std::span<const std::int64_t> keys) {
  std::vector<std::int64_t> work(keys.begin(), keys.end());
  std::vector<std::int64_t> tmp(keys.size());
  return count_and_merge(work, tmp);
}

DistributionSummary distribution_stats(std::span<const std::int64_t> keys) {
  if (keys.empty()) throw std::invalid_argument("distribution_stats: empty input");
  DistributionSummary s;
  const auto [lo, hi] = std::minmax_element(keys.begin(), keys.end());
  s.min = *lo;
  s.max = *hi;
  std::vector<std::int64_t> sorted(keys.begin(), keys.end());
  std::sort(sorted.begin(), sorted.end());
  s.distinct = static_cast<std::size_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
  if (keys.size() <= kInversionLimit) s.inversions = count_inversions(keys);
  return s;
}

}  // namespace zsort::datagen
