#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "zsort/record.hpp"

namespace zsort {

/// Stable in-place insertion sort by key.
template <class P>
void insertion_sort_stable(std::span<BasicRecord<P>> data) {
  for (std::size_t i = 1; i < data.size(); ++i) {
    const BasicRecord<P> v = data[i];
    std::size_t j = i;
    // Strict comparison: an equal key never moves past an earlier one.
    while (j > 0 && v.key < data[j - 1].key) {
      data[j] = data[j - 1];
      --j;
    }
    data[j] = v;
  }
}

/// Stable insertion sort from src into dst. src is left untouched.
template <class P>
void insertion_sort_stable(std::span<const BasicRecord<P>> src, std::span<BasicRecord<P>> dst) {
  if (dst.size() != src.size()) throw std::invalid_argument("insertion_sort_stable: size mismatch");
  for (std::size_t i = 0; i < src.size(); ++i) {
    const BasicRecord<P> v = src[i];
    std::size_t j = i;
    while (j > 0 && v.key < dst[j - 1].key) {
      dst[j] = dst[j - 1];
      --j;
    }
    dst[j] = v;
  }
}

/// Stable counting sort of src into dst for keys in [min_key, max_key].
/// The key range max_key - min_key must be below range_threshold.
/// `histogram` is reusable scratch; it is resized as needed.
template <class P>
void counting_sort_stable(std::span<const BasicRecord<P>> src, std::int64_t min_key,
                          std::int64_t max_key, std::span<BasicRecord<P>> dst,
                          std::uint64_t range_threshold, std::vector<std::size_t>& histogram) {
  if (dst.size() != src.size()) throw std::invalid_argument("counting_sort_stable: size mismatch");
  const WideInt range = static_cast<WideInt>(max_key) - static_cast<WideInt>(min_key);
  if (range < 0 || range >= static_cast<WideInt>(range_threshold))
    throw std::invalid_argument("counting_sort_stable: key range outside threshold");
  const auto slots = static_cast<std::size_t>(range) + 1;
  histogram.assign(slots, 0);
  const auto base = static_cast<std::uint64_t>(min_key);
  // Unsigned wraparound gives the exact offset key - min_key for any in-range key.
  for (const auto& r : src) ++histogram[static_cast<std::uint64_t>(r.key) - base];
  std::size_t running = 0;
  for (auto& h : histogram) {
    const std::size_t c = h;
    h = running;
    running += c;
  }
  for (const auto& r : src) dst[histogram[static_cast<std::uint64_t>(r.key) - base]++] = r;
}

template <class P>
void counting_sort_stable(std::span<const BasicRecord<P>> src, std::int64_t min_key,
                          std::int64_t max_key, std::span<BasicRecord<P>> dst,
                          std::uint64_t range_threshold = 65000) {
  std::vector<std::size_t> histogram;
  counting_sort_stable(src, min_key, max_key, dst, range_threshold, histogram);
}

namespace detail {

inline constexpr std::size_t kMergeRun = 16;

template <class P>
void merge_runs(std::span<const BasicRecord<P>> src, std::span<BasicRecord<P>> dst,
                std::size_t width) {
  const std::size_t n = src.size();
  for (std::size_t lo = 0; lo < n; lo += 2 * width) {
    const std::size_t mid = std::min(lo + width, n);
    const std::size_t hi = std::min(lo + 2 * width, n);
    std::size_t i = lo, j = mid, out = lo;
    while (i < mid && j < hi) {
      // Take from the right run only when strictly smaller.
      if (src[j].key < src[i].key)
        dst[out++] = src[j++];
      else
        dst[out++] = src[i++];
    }
    while (i < mid) dst[out++] = src[i++];
    while (j < hi) dst[out++] = src[j++];
  }
}

}  // namespace detail

/// Bottom-up stable merge sort of data using scratch (same size) as the
/// ping-pong buffer. The result ends in data.
template <class P>
void merge_sort_stable(std::span<BasicRecord<P>> data, std::span<BasicRecord<P>> scratch) {
  const std::size_t n = data.size();
  if (scratch.size() < n) throw std::invalid_argument("merge_sort_stable: scratch too small");
  scratch = scratch.first(n);
  for (std::size_t lo = 0; lo < n; lo += detail::kMergeRun)
    insertion_sort_stable(data.subspan(lo, std::min(detail::kMergeRun, n - lo)));

  std::span<BasicRecord<P>> from = data;
  std::span<BasicRecord<P>> to = scratch;
  for (std::size_t width = detail::kMergeRun; width < n; width *= 2) {
    detail::merge_runs(std::span<const BasicRecord<P>>(from), to, width);
    std::swap(from, to);
  }
  if (from.data() != data.data()) std::copy(from.begin(), from.end(), data.begin());
}

template <class P>
void merge_sort_stable(std::span<BasicRecord<P>> data) {
  std::vector<BasicRecord<P>> scratch(data.size());
  merge_sort_stable(data, std::span<BasicRecord<P>>(scratch));
}

/// Value-returning convenience form.
template <class P>
std::vector<BasicRecord<P>> merge_sort_stable(std::vector<BasicRecord<P>> records) {
  merge_sort_stable(std::span<BasicRecord<P>>(records));
  return records;
}

}  // namespace zsort
