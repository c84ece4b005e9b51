#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <stdexcept>

#include <CLI11.hpp>

#include "zsort/bench.hpp"
#include "zsort/datagen.hpp"
#include "zsort/keyfile.hpp"
#include "zsort/verify.hpp"
#include "zsort/zsort.hpp"

namespace zsort::cli {

namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Accepts plain integers and exact scientific forms such as 1e6.
std::size_t parse_count(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError("not a count: " + text);
  }
  if (used != text.size() || !(v >= 1.0) || v != std::floor(v) || v > 1e12)
    throw UsageError("not a positive integer count: " + text);
  return static_cast<std::size_t>(v);
}

struct DistFlags {
  std::string dist;
  datagen::DistributionParams params;

  void attach(CLI::App& cmd) {
    cmd.add_option("--normal-mean", params.normal_mean, "Normal mean")->capture_default_str();
    cmd.add_option("--normal-stddev", params.normal_stddev, "Normal standard deviation")
        ->capture_default_str();
    cmd.add_option("--pareto-scale", params.pareto_scale, "Skewed: Pareto scale x_m")
        ->capture_default_str();
    cmd.add_option("--pareto-shape", params.pareto_shape, "Skewed: Pareto shape")
        ->capture_default_str();
    cmd.add_option("--swap-fraction", params.swap_fraction,
                   "NearlySorted: fraction of n applied as random swaps")
        ->capture_default_str();
    cmd.add_option("--dup-range", params.duplicate_range,
                   "HighDuplicate: keys drawn from [0, range)")
        ->capture_default_str();
  }
};

struct SortFlags {
  double alpha = 0.6;
  std::size_t insertion_threshold = 96;
  std::uint64_t counting_threshold = 65000;
  unsigned depth_guard = 32;

  void attach(CLI::App& cmd, bool with_alpha = true) {
    if (with_alpha)
      cmd.add_option("--alpha", alpha, "Bucket count factor: k = alpha * sqrt(n)")
          ->capture_default_str();
    cmd.add_option("--insertion-threshold", insertion_threshold)->capture_default_str();
    cmd.add_option("--counting-threshold", counting_threshold)->capture_default_str();
    cmd.add_option("--depth-guard", depth_guard)->capture_default_str();
  }

  SortConfig config() const {
    SortConfig c;
    c.alpha = alpha;
    c.insertion_threshold = insertion_threshold;
    c.counting_range_threshold = counting_threshold;
    c.depth_guard = depth_guard;
    try {
      c.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return c;
  }
};

void print_stats(std::ostream& err, const SortStats& s) {
  err << "max_depth_reached=" << s.max_depth_reached << '\n'
      << "fallback_invocations=" << s.fallback_invocations << '\n'
      << "counting_sort_invocations=" << s.counting_sort_invocations << '\n'
      << "insertion_sort_invocations=" << s.insertion_sort_invocations << '\n'
      << "total_scatter_passes=" << s.total_scatter_passes << '\n'
      << "scattered_records=" << s.scattered_records << '\n';
}

// Output sink that is either stdout ("-") or a file.
class Sink {
 public:
  Sink(const std::string& target, std::ostream& stdout_stream) {
    if (target == "-") {
      stream_ = &stdout_stream;
    } else {
      file_ = std::make_unique<std::ofstream>(target);
      if (!*file_) throw std::runtime_error("cannot open " + target + " for writing");
      stream_ = file_.get();
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

int cmd_gen(const std::string& size_text, std::uint64_t seed, const std::string& out_path,
            const DistFlags& flags, std::ostream& err) {
  datagen::DistributionSpec spec;
  try {
    spec.kind = datagen::parse_distribution(flags.dist);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  spec.size = parse_count(size_text);
  spec.seed = seed;
  spec.params = flags.params;
  Records records;
  try {
    records = datagen::generate(spec);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  io::write_records(out_path, records);
  err << "wrote " << records.size() << " keys to " << out_path << '\n';
  return kOk;
}

int cmd_sort(const std::string& in_path, const std::string& out_path, const std::string& algo,
             const SortFlags& flags, bool stats, std::ostream& err) {
  const SortConfig config = flags.config();
  io::format_for(out_path);
  Records records = io::read_records(in_path);
  const std::string name = bench::canonical_algorithm(algo);
  if (name == "zsort") {
    SortConfig c = config;
    c.collect_stats = stats;
    const SortStats s = zsort::zsort(std::span<Record>(records), c);
    if (stats) print_stats(err, s);
  } else {
    const auto registry = bench::AlgorithmRegistry::with_builtins();
    if (!registry.contains(name)) throw UsageError("unknown algorithm: " + algo);
    registry.get(name)(records, config);
    if (stats) err << "stats are only collected for zsort\n";
  }
  io::write_records(out_path, records);
  return kOk;
}

int cmd_verify(const std::string& in_path, const std::string& sorted_path, std::ostream& out) {
  const Records input = io::read_records(in_path);
  const Records sorted = io::read_records(sorted_path);
  if (io::format_for(sorted_path) == io::KeyFormat::RecordBinary) {
    const verify::VerifyReport r = verify::check_stable_permutation(input, sorted);
    out << "sorted=" << std::boolalpha << r.sorted << " permutation=" << r.permutation
        << " stable=" << r.stable;
    if (r.first_violation_index) out << " first_violation_index=" << *r.first_violation_index;
    out << '\n';
    return r.ok() ? kOk : kVerificationFailed;
  }
  // Keys only: equal keys are indistinguishable, so stability is not observable.
  const verify::SortedCheck s = verify::check_sorted(sorted);
  std::vector<std::int64_t> want = io::keys_of(input);
  std::vector<std::int64_t> got = io::keys_of(sorted);
  std::sort(want.begin(), want.end());
  std::sort(got.begin(), got.end());
  const bool perm = want == got;
  out << "sorted=" << std::boolalpha << s.sorted << " permutation=" << perm
      << " stable=unchecked";
  if (s.first_violation) out << " first_violation_index=" << *s.first_violation;
  out << '\n';
  return s.sorted && perm ? kOk : kVerificationFailed;
}

std::vector<datagen::Distribution> parse_dists(const std::vector<std::string>& names) {
  std::vector<datagen::Distribution> out;
  for (const auto& n : names) {
    if (n == "all") {
      out.insert(out.end(), std::begin(datagen::kAllDistributions),
                 std::end(datagen::kAllDistributions));
      continue;
    }
    try {
      out.push_back(datagen::parse_distribution(n));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  return out;
}

struct BenchFlags {
  std::vector<std::string> algos{"zsort", "merge", "lsd_radix"};
  std::vector<std::string> dists{"all"};
  std::vector<std::string> sizes{"10000", "100000"};
  std::size_t reps = 100;
  std::uint64_t seed = 42;
  std::size_t flush_mb = 128;
  std::string csv = "-";
  std::string json;
};

std::size_t flush_bytes(std::size_t mb) {
  return mb == 0 ? 64 : mb << 20;
}

int cmd_bench(const BenchFlags& f, const SortFlags& sort_flags, const DistFlags& dist_flags,
              std::ostream& out, std::ostream& err) {
  const SortConfig config = sort_flags.config();
  if (f.reps < 1) throw UsageError("--reps must be >= 1");
  const auto registry = bench::AlgorithmRegistry::with_builtins();
  for (const auto& a : f.algos)
    if (!registry.contains(bench::canonical_algorithm(a))) throw UsageError("unknown algorithm: " + a);
  std::vector<std::size_t> sizes;
  for (const auto& s : f.sizes) sizes.push_back(parse_count(s));

  std::vector<bench::BenchSpec> matrix;
  for (const auto& a : f.algos)
    for (const auto d : parse_dists(f.dists))
      for (const auto n : sizes) {
        bench::BenchSpec spec;
        spec.algorithm = bench::canonical_algorithm(a);
        spec.distribution.kind = d;
        spec.distribution.size = n;
        spec.distribution.seed = f.seed;
        spec.distribution.params = dist_flags.params;
        spec.repetitions = f.reps;
        spec.flush_bytes = flush_bytes(f.flush_mb);
        spec.sort_config = config;
        matrix.push_back(spec);
      }
  if (matrix.empty()) throw UsageError("benchmark matrix is empty");

  Sink csv(f.csv, out);
  *csv << bench::csv_header() << '\n' << std::flush;
  const auto outcome = bench::run_suite(matrix, registry, [&](const bench::TrialResult& r) {
    *csv << bench::csv_row(r) << '\n' << std::flush;
  });
  if (!f.json.empty()) {
    Sink js(f.json, out);
    *js << bench::to_json(outcome.results).dump(2) << '\n';
  }
  for (const auto& msg : outcome.failures) err << "FAILED: " << msg << '\n';
  return outcome.all_verified() ? kOk : kVerificationFailed;
}

struct SweepFlags {
  std::vector<double> alphas{0.4, 0.6, 0.8, 1.0, 1.2};
  std::string size = "1000000";
  std::size_t reps = 20;
  std::uint64_t seed = 42;
  std::size_t flush_mb = 128;
  std::string csv = "-";
};

int cmd_alpha_sweep(const SweepFlags& f, const SortFlags& sort_flags, std::ostream& out,
                    std::ostream& err) {
  for (double a : f.alphas)
    if (!(a > 0.0)) throw UsageError("alpha must be > 0");
  if (f.reps < 1) throw UsageError("--reps must be >= 1");
  const std::size_t n = parse_count(f.size);
  const auto registry = bench::AlgorithmRegistry::with_builtins();
  bench::CacheFlusher flusher(flush_bytes(f.flush_mb));
  Sink csv(f.csv, out);
  *csv << "alpha,size,seed,repetitions,mean_ms,median_ms,min_ms,stddev_ms,verified\n";
  bool ok = true;
  for (double a : f.alphas) {
    bench::BenchSpec spec;
    spec.algorithm = "zsort";
    spec.distribution.kind = datagen::Distribution::Uniform;
    spec.distribution.size = n;
    spec.distribution.seed = f.seed;
    spec.repetitions = f.reps;
    spec.flush_bytes = flusher.bytes();
    spec.sort_config = sort_flags.config();
    spec.sort_config.alpha = a;
    try {
      const auto r = bench::run_trial(spec, registry, flusher);
      char buf[200];
      std::snprintf(buf, sizeof buf, "%g,%zu,%llu,%zu,%.6f,%.6f,%.6f,%.6f,true", a, n,
                    static_cast<unsigned long long>(f.seed), f.reps, r.mean_ms, r.median_ms,
                    r.min_ms, r.stddev_ms);
      *csv << buf << '\n' << std::flush;
    } catch (const bench::VerificationFailure& e) {
      err << "FAILED: " << e.what() << '\n';
      ok = false;
    }
  }
  return ok ? kOk : kVerificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"zsort: stable z-score distribution sort, generator, verifier and benchmark"};
  app.require_subcommand(1);

  DistFlags gen_dist;
  std::string gen_size, gen_out;
  std::uint64_t gen_seed = 0;
  auto* gen = app.add_subcommand("gen", "Generate a key file");
  gen->add_option("--dist", gen_dist.dist,
                  "uniform | normal | skewed | nearly_sorted | high_duplicate")
      ->required();
  gen->add_option("--size", gen_size, "Number of keys (1e5 notation accepted)")->required();
  gen->add_option("--seed", gen_seed, "MT19937-64 seed")->capture_default_str();
  gen->add_option("--out", gen_out, "Output path (.bin, .txt or .rec)")->required();
  gen_dist.attach(*gen);

  std::string sort_in, sort_out, sort_algo = "zsort";
  bool sort_stats = false;
  SortFlags sort_flags;
  auto* sort = app.add_subcommand("sort", "Sort a key file");
  sort->add_option("--in", sort_in, "Input key file")->required();
  sort->add_option("--out", sort_out, "Output file; .rec keeps original positions as payloads")
      ->required();
  sort->add_option("--algo", sort_algo, "zsort | merge | lsd_radix | std_stable")
      ->capture_default_str();
  sort->add_flag("--stats", sort_stats, "Print zsort statistics to stderr");
  sort_flags.attach(*sort);

  std::string verify_in, verify_sorted;
  auto* ver = app.add_subcommand("verify", "Check a sorted file against its original");
  ver->add_option("--in", verify_in, "Original unsorted key file")->required();
  ver->add_option("--sorted", verify_sorted, "Sorted file to check")->required();

  BenchFlags bench_flags;
  SortFlags bench_sort;
  DistFlags bench_dist;
  auto* bn = app.add_subcommand("bench", "Run a cold-cache benchmark matrix");
  bn->add_option("--algos", bench_flags.algos, "Comma-separated algorithms")
      ->delimiter(',')
      ->capture_default_str();
  bn->add_option("--dists", bench_flags.dists, "Comma-separated distributions or 'all'")
      ->delimiter(',')
      ->capture_default_str();
  bn->add_option("--sizes", bench_flags.sizes, "Comma-separated sizes")
      ->delimiter(',')
      ->capture_default_str();
  bn->add_option("--reps", bench_flags.reps, "Repetitions per cell")->capture_default_str();
  bn->add_option("--seed", bench_flags.seed)->capture_default_str();
  bn->add_option("--flush-mb", bench_flags.flush_mb, "Cache flush buffer in MiB")
      ->capture_default_str();
  bn->add_option("--csv", bench_flags.csv, "CSV destination, '-' for stdout")->capture_default_str();
  bn->add_option("--json", bench_flags.json, "Also write results as JSON");
  bench_sort.attach(*bn);
  bench_dist.attach(*bn);

  SweepFlags sweep_flags;
  SortFlags sweep_sort;
  auto* sw = app.add_subcommand("alpha-sweep", "Time zsort on uniform data for several alphas");
  sw->add_option("--alphas", sweep_flags.alphas, "Comma-separated alphas, each > 0")
      ->delimiter(',')
      ->capture_default_str();
  sw->add_option("--size", sweep_flags.size, "Number of uniform keys")->capture_default_str();
  sw->add_option("--reps", sweep_flags.reps, "Repetitions per alpha")->capture_default_str();
  sw->add_option("--seed", sweep_flags.seed)->capture_default_str();
  sw->add_option("--flush-mb", sweep_flags.flush_mb, "Cache flush buffer in MiB")
      ->capture_default_str();
  sw->add_option("--csv", sweep_flags.csv, "CSV destination, '-' for stdout")
      ->capture_default_str();
  sweep_sort.attach(*sw, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*gen) return cmd_gen(gen_size, gen_seed, gen_out, gen_dist, err);
    if (*sort) return cmd_sort(sort_in, sort_out, sort_algo, sort_flags, sort_stats, err);
    if (*ver) return cmd_verify(verify_in, verify_sorted, out);
    if (*bn) return cmd_bench(bench_flags, bench_sort, bench_dist, out, err);
    if (*sw) return cmd_alpha_sweep(sweep_flags, sweep_sort, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const io::FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace zsort::cli
