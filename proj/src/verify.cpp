#include "zsort/verify.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "zsort/zsort.hpp"

namespace zsort::verify {

namespace {

constexpr std::size_t kMissing = std::numeric_limits<std::size_t>::max();

void note(std::optional<std::size_t>& first, std::size_t index) {
  if (!first || index < *first) first = index;
}

// Position in `input` of the record carrying each output payload, or kMissing.
std::vector<std::size_t> locate_payloads(std::span<const Record> input,
                                         std::span<const Record> output) {
  std::vector<std::size_t> where(output.size(), kMissing);
  const bool identity = std::all_of(input.begin(), input.end(), [&](const Record& r) {
    return r.payload == static_cast<std::uint64_t>(&r - input.data());
  });
  if (identity) {
    for (std::size_t j = 0; j < output.size(); ++j)
      if (output[j].payload < input.size()) where[j] = output[j].payload;
    return where;
  }
  std::vector<std::pair<std::uint64_t, std::size_t>> index(input.size());
  for (std::size_t i = 0; i < input.size(); ++i) index[i] = {input[i].payload, i};
  std::sort(index.begin(), index.end());
  for (std::size_t i = 1; i < index.size(); ++i)
    if (index[i].first == index[i - 1].first)
      throw PayloadCollision("input payload " + std::to_string(index[i].first) + " is not unique");
  for (std::size_t j = 0; j < output.size(); ++j) {
    const auto it = std::lower_bound(index.begin(), index.end(),
                                     std::pair<std::uint64_t, std::size_t>{output[j].payload, 0});
    if (it != index.end() && it->first == output[j].payload) where[j] = it->second;
  }
  return where;
}

}  // namespace

SortedCheck check_sorted(std::span<const Record> records) {
  for (std::size_t i = 1; i < records.size(); ++i)
    if (records[i].key < records[i - 1].key) return {false, i};
  return {};
}

VerifyReport check_stable_permutation(std::span<const Record> input,
                                      std::span<const Record> output) {
  VerifyReport report;
  const SortedCheck sorted = check_sorted(output);
  report.sorted = sorted.sorted;
  if (sorted.first_violation) note(report.first_violation_index, *sorted.first_violation);

  const std::vector<std::size_t> where = locate_payloads(input, output);
  report.permutation = input.size() == output.size();
  if (!report.permutation) note(report.first_violation_index, std::min(input.size(), output.size()));
  std::vector<bool> seen(input.size(), false);
  for (std::size_t j = 0; j < output.size(); ++j) {
    const std::size_t i = where[j];
    if (i == kMissing || seen[i] || input[i].key != output[j].key) {
      report.permutation = false;
      note(report.first_violation_index, j);
      continue;
    }
    seen[i] = true;
  }

  bool order_kept = true;
  for (std::size_t j = 1; j < output.size(); ++j) {
    if (output[j].key != output[j - 1].key) continue;
    if (where[j] == kMissing || where[j - 1] == kMissing) continue;
    if (where[j] <= where[j - 1]) {
      order_kept = false;
      note(report.first_violation_index, j);
      break;
    }
  }
  report.stable = report.sorted && report.permutation && order_kept;
  return report;
}

bool check_sorted_key_permutation(std::span<const Record> input, std::span<const Record> output) {
  if (input.size() != output.size() || !check_sorted(output).sorted) return false;
  std::vector<std::int64_t> expected(input.size());
  for (std::size_t i = 0; i < input.size(); ++i) expected[i] = input[i].key;
  std::sort(expected.begin(), expected.end());
  for (std::size_t i = 0; i < output.size(); ++i)
    if (output[i].key != expected[i]) return false;
  return true;
}

SortStats depth_probe(std::span<const Record> records, SortConfig config) {
  config.collect_stats = true;
  Records copy(records.begin(), records.end());
  return zsort(std::span<Record>(copy), config);
}

}  // namespace zsort::verify
