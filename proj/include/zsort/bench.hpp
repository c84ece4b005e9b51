#pragma once

// Cold-cache benchmark harness: per repetition the input is copied fresh,
// the cache is flushed, only the sort is timed, and the output is verified
// before its timing is accepted.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "zsort/config.hpp"
#include "zsort/datagen.hpp"
#include "zsort/record.hpp"
#include "zsort/small_sorts.hpp"

namespace zsort::bench {

using zsort::merge_sort_stable;

/// Stable LSD radix sort with 8-bit digits. The sign bit is flipped for digit
/// extraction so signed order comes out right. Returns the number of
/// distribution passes, which is 8 for any nonempty input.
unsigned lsd_radix_sort_stable(std::span<Record> data, std::span<Record> scratch);
unsigned lsd_radix_sort_stable(std::span<Record> data);
Records lsd_radix_sort_stable(Records records);

using SortFn = std::function<void(std::span<Record>, const SortConfig&)>;

/// Named sort adapters. Platform or third-party sorts register here.
class AlgorithmRegistry {
 public:
  /// zsort, merge, lsd_radix and std_stable (std::stable_sort).
  static AlgorithmRegistry with_builtins();

  void add(std::string name, SortFn fn);
  bool contains(const std::string& name) const { return sorts_.count(name) != 0; }
  /// Throws std::invalid_argument for an unknown name.
  const SortFn& get(const std::string& name) const;
  std::vector<std::string> names() const;

 private:
  std::map<std::string, SortFn> sorts_;
};

/// Canonical registry name for user spellings such as "ZSort" or "merge_stable".
std::string canonical_algorithm(const std::string& name);

inline constexpr std::size_t kDefaultFlushBytes = std::size_t{128} << 20;

struct BenchSpec {
  std::string algorithm = "zsort";
  datagen::DistributionSpec distribution;
  std::size_t repetitions = 100;
  std::size_t flush_bytes = kDefaultFlushBytes;
  SortConfig sort_config;
};

struct TrialResult {
  std::string algorithm;
  datagen::Distribution distribution = datagen::Distribution::Uniform;
  std::size_t size = 0;
  std::uint64_t seed = 0;
  std::size_t repetitions = 0;
  double mean_ms = 0.0;
  double median_ms = 0.0;
  double min_ms = 0.0;
  double stddev_ms = 0.0;
  bool verified = false;
};

/// Evicts cached data by touching and modifying every cache line of a
/// buffer. The buffer is allocated once and reused.
class CacheFlusher {
 public:
  static constexpr std::size_t kLine = 64;

  /// Throws std::bad_alloc when the buffer cannot be allocated.
  explicit CacheFlusher(std::size_t bytes);
  void flush();
  std::size_t bytes() const { return buffer_.size(); }
  /// Running sum of the touched bytes; consumed so the traversal is not elided.
  std::uint64_t checksum() const { return checksum_; }

 private:
  std::vector<unsigned char> buffer_;
  std::uint64_t checksum_ = 0;
};

/// Flushes with a process-wide buffer, grown when a larger size is asked for.
void flush_cache(std::size_t bytes);

class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TimingSummary {
  double mean = 0.0;
  double median = 0.0;
  double min = 0.0;
  double stddev = 0.0;
};

/// Sample standard deviation; zero for a single sample.
TimingSummary summarize(std::span<const double> samples);

/// Throws VerificationFailure when any repetition produces wrong output, and
/// std::invalid_argument for an invalid spec.
TrialResult run_trial(const BenchSpec& spec, const AlgorithmRegistry& registry,
                      CacheFlusher& flusher);
TrialResult run_trial(const BenchSpec& spec);

/// The same protocol as run_trial but returning every repetition's time.
std::vector<double> time_repetitions(const BenchSpec& spec, const AlgorithmRegistry& registry,
                                     CacheFlusher& flusher);

struct SuiteOutcome {
  std::vector<TrialResult> results;
  std::vector<std::string> failures;
  bool all_verified() const { return failures.empty(); }
};

/// Runs every cell in order. A failing cell is recorded and the rest still
/// run. on_result sees each verified result as soon as it completes.
/// Throws std::invalid_argument on an empty matrix.
SuiteOutcome run_suite(std::span<const BenchSpec> matrix, const AlgorithmRegistry& registry,
                       const std::function<void(const TrialResult&)>& on_result = {});

std::string csv_header();
std::string csv_row(const TrialResult& result);
nlohmann::json to_json(const TrialResult& result);
nlohmann::json to_json(std::span<const TrialResult> results);

}  // namespace zsort::bench
