#pragma once

// zSort: stable z-score distribution sort for 64-bit signed keys.
//
// Each level computes the segment's spread, maps every key to one of k
// buckets with h(key) = ((key - mean) / std + zmin) * k / 4, counts bucket
// sizes, and scatters the records front to back into contiguous bucket
// regions. Buckets larger than the insertion threshold recurse with the same
// k. A recursive level never recomputes the mean; it uses the key whose
// mapping is the bucket's midpoint and measures the spread around it.
//
// Data ping-pongs between the caller's buffer and one scratch buffer of the
// same size. Small buckets are insertion sorted, narrow-range buckets are
// counting sorted, and buckets of identical keys are copied through. A level
// that would put every record in one bucket, or that reaches the depth guard,
// hands the segment to a stable merge sort, so the sort always terminates.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "zsort/config.hpp"
#include "zsort/mapping.hpp"
#include "zsort/record.hpp"
#include "zsort/small_sorts.hpp"

namespace zsort {

/// k = max(2, round(alpha * sqrt(n))).
inline std::size_t bucket_count(std::size_t n, double alpha) {
  const double k = std::round(alpha * std::sqrt(static_cast<double>(n)));
  return std::max<std::size_t>(2, static_cast<std::size_t>(k));
}

template <class P>
struct SortResult {
  std::vector<BasicRecord<P>> records;
  SortStats stats;
};

namespace detail {

template <class P>
class Sorter {
 public:
  using Rec = BasicRecord<P>;
  using Span = std::span<Rec>;
  using ConstSpan = std::span<const Rec>;

  Sorter(const SortConfig& config, std::size_t k) : cfg_(config), k_(k) {
    levels_.resize(static_cast<std::size_t>(config.depth_guard) + 1);
  }

  const SortStats& stats() const { return stats_; }

  // Sorts `data` in place using `scratch`; the entry point for a full sort.
  void sort_top(Span data, Span scratch) {
    if (data.size() <= cfg_.insertion_threshold) {
      insertion_sort_stable(data);
      ++stats_.insertion_sort_invocations;
      return;
    }
    const FirstPassStats fp = first_pass(ConstSpan(data));
    if (all_equal(fp, data.size())) return;
    const auto params = build_mapping_params(ConstSpan(data), fp, k_);
    if (!params) {
      fallback(data, scratch, true);
      return;
    }
    partition(data, scratch, true, *params, 1);
  }

  // The records live in `a`; `b` is scratch of the same size. The sorted
  // result goes to `a` when result_in_a, otherwise to `b`.
  void sort_level(Span a, Span b, bool result_in_a, double mean_est, unsigned depth) {
    const std::size_t n = a.size();
    std::int64_t lo = a[0].key;
    std::int64_t hi = a[0].key;
    double sum_sq = 0.0;
    for (const auto& r : a) {
      lo = std::min(lo, r.key);
      hi = std::max(hi, r.key);
      const double d = static_cast<double>(r.key) - mean_est;
      sum_sq += d * d;
    }
    if (lo == hi) {
      if (!result_in_a) std::copy(a.begin(), a.end(), b.begin());
      return;
    }
    const WideInt range = static_cast<WideInt>(hi) - static_cast<WideInt>(lo);
    if (range < static_cast<WideInt>(cfg_.counting_range_threshold)) {
      if (result_in_a) {
        std::copy(a.begin(), a.end(), b.begin());
        counting_sort_stable(ConstSpan(b), lo, hi, a, cfg_.counting_range_threshold, histogram_);
      } else {
        counting_sort_stable(ConstSpan(a), lo, hi, b, cfg_.counting_range_threshold, histogram_);
      }
      ++stats_.counting_sort_invocations;
      return;
    }
    if (depth >= cfg_.depth_guard) {
      fallback(a, b, result_in_a);
      return;
    }
    const double std = std::sqrt(sum_sq / static_cast<double>(n));
    const double zmin = std::fabs((static_cast<double>(lo) - mean_est) / std);
    const auto params = MappingParams::make(mean_est, std, zmin, k_);
    if (!params) {
      fallback(a, b, result_in_a);
      return;
    }
    partition(a, b, result_in_a, *params, depth);
  }

 private:
  struct LevelArrays {
    std::vector<std::size_t> counts;
    std::vector<std::size_t> cursor;
  };

  void partition(Span a, Span b, bool result_in_a, const MappingParams& params, unsigned depth) {
    const std::size_t n = a.size();
    LevelArrays& level = levels_[depth];
    level.counts.resize(k_);
    level.cursor.resize(k_);
    const std::span<std::size_t> counts(level.counts);
    const std::span<std::size_t> cursor(level.cursor);

    histogram(ConstSpan(a), params, counts);
    if (std::find(counts.begin(), counts.end(), n) != counts.end()) {
      fallback(a, b, result_in_a);
      return;
    }
    exclusive_prefix(counts, cursor);
    scatter(ConstSpan(a), params, cursor, b);
    ++stats_.total_scatter_passes;
    stats_.scattered_records += n;
    stats_.max_depth_reached = std::max(stats_.max_depth_reached, depth);

    // After the scatter cursor[i] is the end of bucket i. Bucket i now lives in b.
    for (std::size_t i = 0; i < k_; ++i) {
      const std::size_t count = counts[i];
      if (count == 0) continue;
      const std::size_t begin = cursor[i] - count;
      Span in_b = b.subspan(begin, count);
      Span in_a = a.subspan(begin, count);
      if (count > cfg_.insertion_threshold) {
        sort_level(in_b, in_a, !result_in_a, estimated_mean(i, params), depth + 1);
      } else {
        if (result_in_a)
          insertion_sort_stable(ConstSpan(in_b), in_a);
        else
          insertion_sort_stable(in_b);
        ++stats_.insertion_sort_invocations;
      }
    }
  }

  void fallback(Span a, Span b, bool result_in_a) {
    merge_sort_stable(a, b);
    if (!result_in_a) std::copy(a.begin(), a.end(), b.begin());
    ++stats_.fallback_invocations;
  }

  const SortConfig& cfg_;
  std::size_t k_;
  SortStats stats_;
  std::vector<LevelArrays> levels_;
  std::vector<std::size_t> histogram_;
};

}  // namespace detail

/// Sorts data in place, stably by key, using caller-provided scratch of at
/// least data.size() records. Returns statistics when config.collect_stats.
template <class P>
SortStats zsort(std::span<BasicRecord<P>> data, std::span<BasicRecord<P>> scratch,
                const SortConfig& config = {}) {
  config.validate();
  if (scratch.size() < data.size()) throw std::invalid_argument("zsort: scratch too small");
  if (data.empty()) return {};
  detail::Sorter<P> sorter(config, bucket_count(data.size(), config.alpha));
  sorter.sort_top(data, scratch.first(data.size()));
  return config.collect_stats ? sorter.stats() : SortStats{};
}

template <class P>
SortStats zsort(std::span<BasicRecord<P>> data, const SortConfig& config = {}) {
  std::vector<BasicRecord<P>> scratch(data.size());
  return zsort(data, std::span<BasicRecord<P>>(scratch), config);
}

template <class P>
SortResult<P> zsort(std::vector<BasicRecord<P>> records, const SortConfig& config = {}) {
  SortResult<P> result;
  result.stats = zsort(std::span<BasicRecord<P>>(records), config);
  result.records = std::move(records);
  return result;
}

/// One recursive level: sorts src into dst with the mean taken as mean_est
/// rather than recomputed. src is used as scratch and left unspecified.
/// Requires src.size() > insertion_threshold and depth >= 1.
template <class P>
void zsort_rec(std::span<BasicRecord<P>> src, std::span<BasicRecord<P>> dst, std::size_t k,
               double mean_est, unsigned depth, const SortConfig& config, SortStats& stats) {
  config.validate();
  if (dst.size() != src.size()) throw std::invalid_argument("zsort_rec: size mismatch");
  if (src.size() <= config.insertion_threshold)
    throw std::invalid_argument("zsort_rec: segment not above insertion threshold");
  if (depth < 1) throw std::invalid_argument("zsort_rec: depth must be >= 1");
  if (k < 2) throw std::invalid_argument("zsort_rec: k must be >= 2");
  detail::Sorter<P> sorter(config, k);
  sorter.sort_level(src, dst, false, mean_est, depth);
  const SortStats& s = sorter.stats();
  stats.max_depth_reached = std::max(stats.max_depth_reached, s.max_depth_reached);
  stats.fallback_invocations += s.fallback_invocations;
  stats.counting_sort_invocations += s.counting_sort_invocations;
  stats.insertion_sort_invocations += s.insertion_sort_invocations;
  stats.total_scatter_passes += s.total_scatter_passes;
  stats.scattered_records += s.scattered_records;
}

}  // namespace zsort
