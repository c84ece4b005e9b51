#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>

namespace zsort {

struct SortConfig {
  /// Bucket count is k = max(2, round(alpha * sqrt(n))), fixed for the whole sort.
  double alpha = 0.6;
  /// Segments with at most this many records are insertion sorted.
  std::size_t insertion_threshold = 96;
  /// Buckets whose exact key range (max - min) is below this are counting sorted.
  std::uint64_t counting_range_threshold = 65000;
  /// Scatter levels at or beyond this depth fall back to merge sort.
  unsigned depth_guard = 32;
  bool collect_stats = false;

  /// Throws std::invalid_argument on an out-of-range field.
  void validate() const {
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
    if (insertion_threshold < 1) throw std::invalid_argument("insertion_threshold must be >= 1");
    if (counting_range_threshold < 1)
      throw std::invalid_argument("counting_range_threshold must be >= 1");
    if (depth_guard < 3) throw std::invalid_argument("depth_guard must be >= 3");
  }
};

struct SortStats {
  /// Deepest scatter level; the top-level scatter is level 1.
  unsigned max_depth_reached = 0;
  std::uint64_t fallback_invocations = 0;
  std::uint64_t counting_sort_invocations = 0;
  std::uint64_t insertion_sort_invocations = 0;
  /// Number of segments distributed by a histogram + scatter.
  std::uint64_t total_scatter_passes = 0;
  /// Sum of the sizes of all scattered segments. Divided by n this is the
  /// number of full-array distribution passes.
  std::uint64_t scattered_records = 0;

  friend bool operator==(const SortStats&, const SortStats&) = default;
};

}  // namespace zsort
