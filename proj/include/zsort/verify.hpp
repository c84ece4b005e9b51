#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>

#include "zsort/config.hpp"
#include "zsort/record.hpp"

namespace zsort::verify {

struct SortedCheck {
  bool sorted = true;
  /// Index i of the first record with key[i] < key[i-1].
  std::optional<std::size_t> first_violation;
};

SortedCheck check_sorted(std::span<const Record> records);

struct VerifyReport {
  bool sorted = false;
  bool permutation = false;
  /// Implies sorted and permutation.
  bool stable = false;
  std::optional<std::size_t> first_violation_index;

  bool ok() const { return sorted && permutation && stable; }
};

class PayloadCollision : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Checks output against input. Input payloads must be distinct sequence
/// numbers increasing in input order; throws PayloadCollision on a repeat.
/// Stability means payloads increase strictly within every equal-key run.
VerifyReport check_stable_permutation(std::span<const Record> input,
                                      std::span<const Record> output);

/// Sorted and same key multiset. Used when the output carries no payloads.
bool check_sorted_key_permutation(std::span<const Record> input, std::span<const Record> output);

/// Runs zsort with collect_stats forced on.
SortStats depth_probe(std::span<const Record> records, SortConfig config = {});

}  // namespace zsort::verify
