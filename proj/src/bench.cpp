#include "zsort/bench.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <memory>
#include <numeric>
#include <sstream>

#include "zsort/verify.hpp"
#include "zsort/zsort.hpp"

namespace zsort::bench {

namespace {

constexpr unsigned kDigitBits = 8;
constexpr unsigned kDigits = 64 / kDigitBits;
constexpr std::size_t kRadix = std::size_t{1} << kDigitBits;
constexpr std::uint64_t kSignBit = std::uint64_t{1} << 63;

inline unsigned digit(std::int64_t key, unsigned pass) {
  return static_cast<unsigned>(((static_cast<std::uint64_t>(key) ^ kSignBit) >>
                                (pass * kDigitBits)) & (kRadix - 1));
}

}  // namespace

unsigned lsd_radix_sort_stable(std::span<Record> data, std::span<Record> scratch) {
  const std::size_t n = data.size();
  if (n == 0) return 0;
  if (scratch.size() < n) throw std::invalid_argument("lsd_radix_sort_stable: scratch too small");
  // All eight digit histograms in one read.
  std::vector<std::array<std::size_t, kRadix>> counts(kDigits);
  for (auto& c : counts) c.fill(0);
  for (const auto& r : data)
    for (unsigned p = 0; p < kDigits; ++p) ++counts[p][digit(r.key, p)];

  std::span<Record> from = data;
  std::span<Record> to = scratch.first(n);
  unsigned passes = 0;
  for (unsigned p = 0; p < kDigits; ++p) {
    std::array<std::size_t, kRadix> offset{};
    std::size_t running = 0;
    for (std::size_t b = 0; b < kRadix; ++b) {
      offset[b] = running;
      running += counts[p][b];
    }
    for (const auto& r : from) to[offset[digit(r.key, p)]++] = r;
    std::swap(from, to);
    ++passes;
  }
  // An even pass count leaves the result in data.
  return passes;
}

unsigned lsd_radix_sort_stable(std::span<Record> data) {
  Records scratch(data.size());
  return lsd_radix_sort_stable(data, scratch);
}

Records lsd_radix_sort_stable(Records records) {
  lsd_radix_sort_stable(std::span<Record>(records));
  return records;
}

AlgorithmRegistry AlgorithmRegistry::with_builtins() {
  AlgorithmRegistry r;
  r.add("zsort", [](std::span<Record> d, const SortConfig& c) { zsort(d, c); });
  r.add("merge", [](std::span<Record> d, const SortConfig&) { merge_sort_stable(d); });
  r.add("lsd_radix", [](std::span<Record> d, const SortConfig&) { lsd_radix_sort_stable(d); });
  r.add("std_stable", [](std::span<Record> d, const SortConfig&) {
    std::stable_sort(d.begin(), d.end(),
                     [](const Record& a, const Record& b) { return a.key < b.key; });
  });
  return r;
}

void AlgorithmRegistry::add(std::string name, SortFn fn) { sorts_[std::move(name)] = std::move(fn); }

const SortFn& AlgorithmRegistry::get(const std::string& name) const {
  const auto it = sorts_.find(canonical_algorithm(name));
  if (it == sorts_.end()) throw std::invalid_argument("unknown algorithm: " + name);
  return it->second;
}

std::vector<std::string> AlgorithmRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [name, fn] : sorts_) out.push_back(name);
  return out;
}

std::string canonical_algorithm(const std::string& name) {
  std::string lower;
  for (char ch : name) lower.push_back(ch == '-' ? '_' : static_cast<char>(std::tolower(ch)));
  if (lower == "zsort" || lower == "z_sort") return "zsort";
  if (lower == "merge" || lower == "merge_stable" || lower == "mergestable" ||
      lower == "merge_sort")
    return "merge";
  if (lower == "lsd" || lower == "lsd_radix" || lower == "lsdradix" || lower == "radix")
    return "lsd_radix";
  if (lower == "std_stable" || lower == "stable_sort" || lower == "std") return "std_stable";
  return lower;
}

CacheFlusher::CacheFlusher(std::size_t bytes) : buffer_(std::max<std::size_t>(bytes, 1), 0) {}

void CacheFlusher::flush() {
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < buffer_.size(); i += kLine) {
    buffer_[i] = static_cast<unsigned char>(buffer_[i] + 1);
    sum += buffer_[i];
  }
  // The buffer outlives the call, so the stores cannot be dropped.
  checksum_ += sum;
}

void flush_cache(std::size_t bytes) {
  static std::unique_ptr<CacheFlusher> shared;
  if (!shared || shared->bytes() < bytes) shared = std::make_unique<CacheFlusher>(bytes);
  shared->flush();
}

TimingSummary summarize(std::span<const double> samples) {
  TimingSummary s;
  if (samples.empty()) return s;
  const auto n = static_cast<double>(samples.size());
  s.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  s.median = sorted.size() % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
  s.min = sorted.front();
  if (samples.size() > 1) {
    double ss = 0.0;
    for (double x : samples) ss += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(ss / (n - 1.0));
  }
  return s;
}

std::vector<double> time_repetitions(const BenchSpec& spec, const AlgorithmRegistry& registry,
                                     CacheFlusher& flusher) {
  if (spec.repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
  if (spec.flush_bytes < 1) throw std::invalid_argument("flush_bytes must be >= 1");
  spec.sort_config.validate();
  const SortFn& sort = registry.get(spec.algorithm);
  const Records input = datagen::generate(spec.distribution);
  Records work(input.size());
  std::vector<double> times;
  times.reserve(spec.repetitions);
  for (std::size_t rep = 0; rep < spec.repetitions; ++rep) {
    std::copy(input.begin(), input.end(), work.begin());
    flusher.flush();
    const auto t0 = std::chrono::steady_clock::now();
    sort(work, spec.sort_config);
    const auto t1 = std::chrono::steady_clock::now();
    const verify::VerifyReport report = verify::check_stable_permutation(input, work);
    if (!report.ok()) {
      std::ostringstream msg;
      msg << spec.algorithm << " on " << datagen::to_string(spec.distribution.kind) << " n="
          << input.size() << " seed=" << spec.distribution.seed << " repetition " << rep
          << ": sorted=" << report.sorted << " permutation=" << report.permutation
          << " stable=" << report.stable;
      if (report.first_violation_index) msg << " first violation at " << *report.first_violation_index;
      throw VerificationFailure(msg.str());
    }
    times.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return times;
}

TrialResult run_trial(const BenchSpec& spec, const AlgorithmRegistry& registry,
                      CacheFlusher& flusher) {
  const std::vector<double> times = time_repetitions(spec, registry, flusher);
  const TimingSummary t = summarize(times);
  TrialResult r;
  r.algorithm = canonical_algorithm(spec.algorithm);
  r.distribution = spec.distribution.kind;
  r.size = spec.distribution.size;
  r.seed = spec.distribution.seed;
  r.repetitions = spec.repetitions;
  r.mean_ms = t.mean;
  r.median_ms = t.median;
  r.min_ms = t.min;
  r.stddev_ms = t.stddev;
  r.verified = true;
  return r;
}

TrialResult run_trial(const BenchSpec& spec) {
  CacheFlusher flusher(spec.flush_bytes);
  return run_trial(spec, AlgorithmRegistry::with_builtins(), flusher);
}

SuiteOutcome run_suite(std::span<const BenchSpec> matrix, const AlgorithmRegistry& registry,
                       const std::function<void(const TrialResult&)>& on_result) {
  if (matrix.empty()) throw std::invalid_argument("benchmark matrix is empty");
  SuiteOutcome outcome;
  std::unique_ptr<CacheFlusher> flusher;
  for (const BenchSpec& spec : matrix) {
    try {
      if (!flusher || flusher->bytes() != spec.flush_bytes)
        flusher = std::make_unique<CacheFlusher>(spec.flush_bytes);
      TrialResult r = run_trial(spec, registry, *flusher);
      if (on_result) on_result(r);
      outcome.results.push_back(std::move(r));
    } catch (const std::exception& e) {
      outcome.failures.emplace_back(e.what());
    }
  }
  return outcome;
}

std::string csv_header() {
  return "algorithm,distribution,size,seed,repetitions,mean_ms,median_ms,min_ms,stddev_ms,verified";
}

std::string csv_row(const TrialResult& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s,%s,%zu,%llu,%zu,%.6f,%.6f,%.6f,%.6f,%s", r.algorithm.c_str(),
                std::string(datagen::to_string(r.distribution)).c_str(), r.size,
                static_cast<unsigned long long>(r.seed), r.repetitions, r.mean_ms, r.median_ms,
                r.min_ms, r.stddev_ms, r.verified ? "true" : "false");
  return buf;
}

nlohmann::json to_json(const TrialResult& r) {
  return {{"algorithm", r.algorithm},
          {"distribution", std::string(datagen::to_string(r.distribution))},
          {"size", r.size},
          {"seed", r.seed},
          {"repetitions", r.repetitions},
          {"mean_ms", r.mean_ms},
          {"median_ms", r.median_ms},
          {"min_ms", r.min_ms},
          {"stddev_ms", r.stddev_ms},
          {"verified", r.verified}};
}

nlohmann::json to_json(std::span<const TrialResult> results) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : results) arr.push_back(to_json(r));
  return arr;
}

}  // namespace zsort::bench
