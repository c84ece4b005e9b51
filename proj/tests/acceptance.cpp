// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <cmath>
#include <cstdio>
#include <functional>
#include <iterator>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "zsort/bench.hpp"
#include "zsort/datagen.hpp"
#include "zsort/verify.hpp"
#include "zsort/zsort.hpp"

using namespace zsort;

namespace {

constexpr std::size_t kTimedReps = 41;

struct Outcome {
  bool pass;
  std::string detail;
};

datagen::DistributionSpec dist(datagen::Distribution kind, std::size_t n, std::uint64_t seed,
                               datagen::DistributionParams p = {}) {
  return {kind, n, seed, p};
}

SortConfig stats_config() {
  SortConfig c;
  c.collect_stats = true;
  return c;
}

bench::BenchSpec timed_spec(const std::string& algo, const datagen::DistributionSpec& d,
                     std::size_t flush_bytes, double alpha = 0.6) {
  bench::BenchSpec spec;
  spec.algorithm = algo;
  spec.distribution = d;
  spec.repetitions = 1;
  spec.flush_bytes = flush_bytes;
  spec.sort_config.alpha = alpha;
  return spec;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Outcome oracle_suite() {
  std::size_t cells = 0;
  for (auto kind : datagen::kAllDistributions)
    for (std::size_t n : {1000u, 10000u, 100000u, 1000000u})
      for (std::uint64_t seed : {1u, 2u, 3u}) {
        const Records in = datagen::generate(dist(kind, n, seed));
        const Records expect = merge_sort_stable(in);
        if (zsort::zsort(in).records != expect)
          return {false, std::string(datagen::to_string(kind)) + " n=" + std::to_string(n) +
                             " seed=" + std::to_string(seed) + " differs from merge sort"};
        ++cells;
      }
  return {true, std::to_string(cells) + " cells identical to merge sort"};
}

Outcome depth_bound() {
  std::string detail;
  bool ok = true;
  for (std::size_t n : {100000u, 1000000u, 10000000u}) {
    const auto s = verify::depth_probe(datagen::generate(dist(datagen::Distribution::Uniform, n, 7)));
    ok = ok && s.max_depth_reached <= 3 && s.fallback_invocations == 0;
    detail += "n=" + std::to_string(n) + " depth=" + std::to_string(s.max_depth_reached) +
              " fallbacks=" + std::to_string(s.fallback_invocations) + "; ";
  }
  return {ok, detail};
}

Outcome pass_contrast() {
  const Records in = datagen::generate(dist(datagen::Distribution::Uniform, 1000000, 11));
  Records radix = in;
  const unsigned passes = bench::lsd_radix_sort_stable(std::span<Record>(radix));
  const SortStats s = verify::depth_probe(in);
  const double normalized = static_cast<double>(s.scattered_records) / static_cast<double>(in.size());
  const bool ok = passes == 8 && s.max_depth_reached <= 3 && normalized <= 3.0;
  return {ok, "lsd passes=" + std::to_string(passes) + ", zsort levels=" +
                  std::to_string(s.max_depth_reached) + fmt(", zsort full-array passes=%.3f", normalized)};
}

// Mapping parameters as the sort builds them: the top level from exact
// moments, each child from its parent's bucket midpoint.
void collect_params(std::span<const Record> seg, std::optional<double> mean_est, std::size_t k,
                    unsigned depth, std::vector<MappingParams>& pool) {
  if (seg.size() <= 96 || depth > 3) return;
  const auto fs = first_pass(seg);
  if (static_cast<WideInt>(fs.max_key) - fs.min_key < 65000) return;
  std::optional<MappingParams> p;
  if (!mean_est) {
    p = build_mapping_params(seg, fs, k);
  } else {
    double ss = 0.0;
    for (const auto& r : seg) {
      const double d = static_cast<double>(r.key) - *mean_est;
      ss += d * d;
    }
    const double sd = std::sqrt(ss / static_cast<double>(seg.size()));
    p = MappingParams::make(*mean_est, sd,
                            std::fabs((static_cast<double>(fs.min_key) - *mean_est) / sd), k);
  }
  if (!p) return;
  pool.push_back(*p);
  const auto plan = build_partition_plan(seg, *p);
  Records out(seg.size());
  stable_scatter(seg, plan, *p, std::span<Record>(out));
  for (std::size_t b = 0; b < plan.k; ++b)
    collect_params(std::span<const Record>(out).subspan(plan.offsets[b], plan.counts[b]),
                   estimated_mean(b, *p), k, depth + 1, pool);
}

Outcome mean_estimate_inverse() {
  std::mt19937_64 rng(4242);
  std::vector<MappingParams> pool;
  for (int t = 0; t < 60; ++t) {
    const auto kind = datagen::kAllDistributions[t % std::size(datagen::kAllDistributions)];
    const std::size_t n = 1000 + rng() % 300000;
    const Records in = datagen::generate(dist(kind, n, rng()));
    collect_params(in, std::nullopt, bucket_count(n, 0.6), 1, pool);
  }
  if (pool.empty()) return {false, "no parameters collected"};
  double worst = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const MappingParams& p = pool[rng() % pool.size()];
    const std::size_t i = rng() % p.k;
    const long double x = estimated_mean(i, p);
    const long double h = ((x - p.mean) / p.std + p.zmin) * p.scale;
    const double target = static_cast<double>(i) + 0.5;
    worst = std::max(worst, static_cast<double>(std::fabs(h - target)) / target);
  }
  return {worst <= 1e-9, fmt("worst relative error %.3e over 10000 cases from ", worst) +
                             std::to_string(pool.size()) + " sort levels"};
}

Outcome termination() {
  constexpr auto lo = std::numeric_limits<std::int64_t>::min();
  constexpr auto hi = std::numeric_limits<std::int64_t>::max();
  std::vector<std::pair<std::string, Records>> cases;
  const std::size_t n = 1000000;
  Records eq(n), two(n), ext(n);
  std::mt19937_64 rng(5);
  for (std::size_t i = 0; i < n; ++i) {
    eq[i] = {123456789, i};
    two[i] = {rng() & 1 ? 17 : -17, i};
    ext[i] = {rng() & 1 ? lo : hi, i};
  }
  cases.emplace_back("all-equal", eq);
  cases.emplace_back("two-values", two);
  cases.emplace_back("extreme-pair", ext);
  Records pair{{hi, 0}, {lo, 1}};
  cases.emplace_back("extreme-pair-n2", pair);
  datagen::DistributionParams heavy;
  heavy.pareto_shape = 1.1;
  cases.emplace_back("pareto-1.1", datagen::generate(dist(datagen::Distribution::Skewed, n, 6, heavy)));
  std::string detail;
  for (const auto& [name, in] : cases) {
    const auto out = zsort::zsort(in, stats_config());
    const auto report = verify::check_stable_permutation(in, out.records);
    if (!report.ok()) return {false, name + " failed verification"};
    detail += name + "(depth " + std::to_string(out.stats.max_depth_reached) + ", fallbacks " +
              std::to_string(out.stats.fallback_invocations) + ") ";
  }
  return {true, detail};
}

struct Timings {
  double zsort_uniform_1e6 = 0.0;
  double zsort_uniform_1e5 = 0.0;
  double merge_uniform_1e6 = 0.0;
  double zsort_dup_1e6 = 0.0;
  double alpha06 = 0.0;
  double alpha12 = 0.0;
};

// Configurations run round-robin, one repetition each per round, so load
// drift on the host hits every configuration alike.
Timings measure() {
  bench::CacheFlusher flusher(bench::kDefaultFlushBytes);
  const auto registry = bench::AlgorithmRegistry::with_builtins();
  const auto uni6 = dist(datagen::Distribution::Uniform, 1000000, 42);
  const std::size_t fb = flusher.bytes();
  const std::vector<bench::BenchSpec> specs{
      timed_spec("zsort", uni6, fb),
      timed_spec("merge", uni6, fb),
      timed_spec("zsort", dist(datagen::Distribution::Uniform, 100000, 42), fb),
      timed_spec("zsort", dist(datagen::Distribution::HighDuplicate, 1000000, 42), fb),
      timed_spec("zsort", uni6, fb, 1.2),
  };
  std::vector<std::vector<double>> samples(specs.size());
  for (std::size_t round = 0; round < kTimedReps; ++round)
    for (std::size_t c = 0; c < specs.size(); ++c)
      samples[c].push_back(bench::time_repetitions(specs[c], registry, flusher).front());
  auto med = [&](std::size_t c) { return bench::summarize(samples[c]).median; };
  Timings t;
  t.zsort_uniform_1e6 = med(0);
  t.merge_uniform_1e6 = med(1);
  t.zsort_uniform_1e5 = med(2);
  t.zsort_dup_1e6 = med(3);
  t.alpha06 = med(0);
  t.alpha12 = med(4);
  return t;
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const char* name, const Outcome& o) {
    std::printf("[%s] %d. %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  };

  report(1, "oracle equivalence (5 dists x 4 sizes x 3 seeds)", oracle_suite());
  report(2, "depth bound on uniform data", depth_bound());
  report(3, "pass-count contrast with LSD radix", pass_contrast());
  report(4, "estimated mean inverse property", mean_estimate_inverse());
  report(5, "termination on adversarial inputs", termination());

  const Timings t = measure();
  const double speedup = t.merge_uniform_1e6 / t.zsort_uniform_1e6;
  report(6, "speedup over stable merge sort at 1e6 uniform",
         {speedup >= 1.5, fmt("merge %.3f ms / zsort %.3f ms = %.2fx (need >= 1.5x)",
                              t.merge_uniform_1e6, t.zsort_uniform_1e6, speedup)});
  const double dup_ratio = t.zsort_dup_1e6 / t.zsort_uniform_1e6;
  report(7, "duplicate-heavy advantage at 1e6",
         {dup_ratio <= 0.8, fmt("high_duplicate %.3f ms / uniform %.3f ms = %.3f (need <= 0.8)",
                                t.zsort_dup_1e6, t.zsort_uniform_1e6, dup_ratio)});
  report(8, "alpha 0.6 no slower than alpha 1.2 at 1e6",
         {t.alpha06 <= t.alpha12, fmt("alpha 0.6 %.3f ms, alpha 1.2 %.3f ms", t.alpha06, t.alpha12)});
  const double scaling = t.zsort_uniform_1e6 / t.zsort_uniform_1e5;
  report(9, "near-linear scaling 1e5 -> 1e6",
         {scaling >= 5.0 && scaling <= 25.0,
          fmt("t(1e6) %.3f ms / t(1e5) %.3f ms = %.2f (need [5, 25])", t.zsort_uniform_1e6,
              t.zsort_uniform_1e5, scaling)});

  std::printf("%s: %d criteria failed\n", failures ? "FAILED" : "ALL PASSED", failures);
  return failures ? 1 : 0;
}
