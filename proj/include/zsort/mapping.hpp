#pragma once

// Statistics passes, the z-score cluster mapping and the histogram/scatter
// primitives one partitioning level is built from.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "zsort/record.hpp"

namespace zsort {

struct FirstPassStats {
  WideInt sum = 0;
  std::int64_t min_key = 0;
  std::int64_t max_key = 0;
};

/// Exact sum, min and max of the keys in one front-to-back pass.
/// Throws std::invalid_argument on an empty segment.
template <class P>
FirstPassStats first_pass(std::span<const BasicRecord<P>> segment) {
  if (segment.empty()) throw std::invalid_argument("first_pass: empty segment");
  FirstPassStats s;
  s.min_key = segment[0].key;
  s.max_key = segment[0].key;
  for (const auto& r : segment) {
    s.sum += r.key;
    s.min_key = std::min(s.min_key, r.key);
    s.max_key = std::max(s.max_key, r.key);
  }
  return s;
}

/// True iff every key equals the minimum, tested as sum == min * size.
inline bool all_equal(const FirstPassStats& stats, std::size_t size) {
  return stats.sum == static_cast<WideInt>(stats.min_key) * static_cast<WideInt>(size);
}

/// Parameters of h(key) = ((key - mean) / std + zmin) * scale for one segment.
/// The floored, clamped value of h is the key's bucket.
struct MappingParams {
  double mean = 0.0;
  double std = 1.0;
  double zmin = 0.0;
  double scale = 0.5;
  std::size_t k = 2;

  // h(key) == (key - mean) * slope + intercept. Monotone in key since slope > 0.
  double slope = 0.5;
  double intercept = 0.0;
  double last_bucket = 1.0;

  /// Returns nullopt when the derived coefficients are not finite and positive,
  /// which happens when std underflows or is zero.
  static std::optional<MappingParams> make(double mean, double std, double zmin, std::size_t k) {
    MappingParams p;
    p.mean = mean;
    p.std = std;
    p.zmin = zmin;
    p.k = k;
    p.scale = static_cast<double>(k) / 4.0;
    p.slope = p.scale / std;
    p.intercept = zmin * p.scale;
    p.last_bucket = static_cast<double>(k - 1);
    if (!(std > 0.0) || !std::isfinite(std) || !std::isfinite(p.slope) || !(p.slope > 0.0) ||
        !std::isfinite(mean) || !std::isfinite(p.intercept) || k < 2)
      return std::nullopt;
    return p;
  }

  /// Unfloored h(x).
  double h(double x) const { return (x - mean) * slope + intercept; }

  std::size_t bucket_of(std::int64_t key) const {
    // fmin/fmax clamp to [0, k-1]; the lower clamp absorbs rounding below zero at key == min.
    const double v = std::fmin(std::fmax(h(static_cast<double>(key)), 0.0), last_bucket);
    return static_cast<std::size_t>(v);
  }
};

/// Bucket index of key in [0, k-1].
inline std::size_t map_to_cluster(std::int64_t key, const MappingParams& params) {
  return params.bucket_of(key);
}

/// The key value whose unfloored mapping is the midpoint (i + 0.5) of bucket i.
inline double estimated_mean(std::size_t bucket, const MappingParams& params) {
  return ((static_cast<double>(bucket) + 0.5) / params.scale - params.zmin) * params.std +
         params.mean;
}

namespace detail {

inline std::int64_t floor_div(WideInt num, std::size_t den) {
  const WideInt d = static_cast<WideInt>(den);
  WideInt q = num / d;
  if (num % d != 0 && num < 0) --q;
  return static_cast<std::int64_t>(q);
}

}  // namespace detail

/// Mean and standard deviation of the segment, plus zmin for its minimum.
///
/// The sum of squared deviations is accumulated exactly in integer arithmetic
/// around c = floor(mean), so the result does not depend on record order:
/// var = sum((key - c)^2) / n - (mean - c)^2.
/// Returns nullopt (degenerate spread) when std is not a usable positive number.
template <class P>
std::optional<MappingParams> build_mapping_params(std::span<const BasicRecord<P>> segment,
                                                  const FirstPassStats& stats, std::size_t k) {
  const std::size_t n = segment.size();
  if (n == 0) throw std::invalid_argument("build_mapping_params: empty segment");
  const std::int64_t center = detail::floor_div(stats.sum, n);
  const WideInt remainder = stats.sum - static_cast<WideInt>(center) * static_cast<WideInt>(n);
  const double frac = static_cast<double>(remainder) / static_cast<double>(n);

  using U128 = unsigned __int128;
  U128 lo = 0;
  std::uint64_t carries = 0;
  for (const auto& r : segment) {
    const WideInt d = static_cast<WideInt>(r.key) - center;
    const auto mag = static_cast<std::uint64_t>(d < 0 ? -d : d);
    const U128 sq = static_cast<U128>(mag) * mag;
    lo += sq;
    carries += lo < sq;
  }
  const double sum_sq = std::ldexp(static_cast<double>(carries), 128) + static_cast<double>(lo);
  const double var = std::max(sum_sq / static_cast<double>(n) - frac * frac, 0.0);
  const double std = std::sqrt(var);
  const double mean = static_cast<double>(center) + frac;
  const double min_dev = static_cast<double>(static_cast<WideInt>(stats.min_key) - center) - frac;
  const double zmin = std::fabs(min_dev / std);
  return MappingParams::make(mean, std, zmin, k);
}

struct PartitionPlan {
  std::size_t k = 0;
  std::vector<std::size_t> counts;
  /// Exclusive prefix sums of counts.
  std::vector<std::size_t> offsets;
};

namespace detail {

template <class P>
void histogram(std::span<const BasicRecord<P>> segment, const MappingParams& params,
               std::span<std::size_t> counts) {
  std::fill(counts.begin(), counts.end(), std::size_t{0});
  for (const auto& r : segment) ++counts[params.bucket_of(r.key)];
}

inline void exclusive_prefix(std::span<const std::size_t> counts, std::span<std::size_t> offsets) {
  std::size_t running = 0;
  for (std::size_t b = 0; b < counts.size(); ++b) {
    offsets[b] = running;
    running += counts[b];
  }
}

/// Scatter using cursor as the running write position of each bucket.
template <class P>
void scatter(std::span<const BasicRecord<P>> src, const MappingParams& params,
             std::span<std::size_t> cursor, std::span<BasicRecord<P>> dst) {
  for (const auto& r : src) dst[cursor[params.bucket_of(r.key)]++] = r;
}

}  // namespace detail

template <class P>
PartitionPlan build_partition_plan(std::span<const BasicRecord<P>> segment,
                                   const MappingParams& params) {
  PartitionPlan plan;
  plan.k = params.k;
  plan.counts.resize(params.k);
  plan.offsets.resize(params.k);
  detail::histogram(segment, params, std::span<std::size_t>(plan.counts));
  detail::exclusive_prefix(plan.counts, plan.offsets);
  return plan;
}

/// Moves src into dst bucket by bucket. Within a bucket records keep src order.
template <class P>
void stable_scatter(std::span<const BasicRecord<P>> src, const PartitionPlan& plan,
                    const MappingParams& params, std::span<BasicRecord<P>> dst) {
  if (dst.size() != src.size()) throw std::invalid_argument("stable_scatter: size mismatch");
  std::vector<std::size_t> cursor = plan.offsets;
  detail::scatter(src, params, std::span<std::size_t>(cursor), dst);
}

}  // namespace zsort
