#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "oracle.hpp"
#include "zsort/keyfile.hpp"
#include "zsort/small_sorts.hpp"
#include "zsort/datagen.hpp"
#include "zsort/verify.hpp"

using namespace zsort;
using zsort::testing::random_records;
using zsort::testing::with_sequence;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "zsort_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string bytes_of(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("binary key files are little-endian 8-byte keys") {
  const auto path = temp_file("le.bin");
  io::write_records(path, with_sequence({1, -2}));
  const std::string b = bytes_of(path);
  REQUIRE(b.size() == 16);
  CHECK(static_cast<unsigned char>(b[0]) == 1);
  for (int i = 1; i < 8; ++i) CHECK(b[i] == 0);
  CHECK(static_cast<unsigned char>(b[8]) == 0xfe);
  for (int i = 9; i < 16; ++i) CHECK(static_cast<unsigned char>(b[i]) == 0xff);
}

TEST_CASE("every format reads back what was written") {
  const auto r = random_records(1000, std::numeric_limits<std::int64_t>::min(),
                                std::numeric_limits<std::int64_t>::max(), 3);
  for (const char* name : {"rt.bin", "rt.txt", "rt.rec"}) {
    const auto path = temp_file(name);
    io::write_records(path, r);
    CHECK(io::read_records(path) == r);
  }
  // .rec keeps non-index payloads.
  Records shuffled = r;
  std::shuffle(shuffled.begin(), shuffled.end(), std::mt19937_64(1));
  io::write_records(temp_file("p.rec"), shuffled);
  CHECK(io::read_records(temp_file("p.rec")) == shuffled);
}

TEST_CASE("text files tolerate blank lines and CRLF") {
  const auto path = temp_file("crlf.txt");
  std::ofstream(path, std::ios::binary) << "3\r\n\r\n-1\n  7  \n";
  CHECK(io::read_records(path) == with_sequence({3, -1, 7}));
}

TEST_CASE("corrupt files are reported") {
  const auto odd = temp_file("odd.bin");
  std::ofstream(odd, std::ios::binary) << "12345";
  CHECK_THROWS_AS(io::read_records(odd), io::FormatError);
  const auto bad = temp_file("bad.txt");
  std::ofstream(bad) << "12\nabc\n";
  CHECK_THROWS_AS(io::read_records(bad), io::FormatError);
  const auto big = temp_file("big.txt");
  std::ofstream(big) << "99999999999999999999\n";
  CHECK_THROWS_AS(io::read_records(big), io::FormatError);
  CHECK_THROWS_AS(io::format_for("x.csv"), io::FormatError);
  CHECK_THROWS(io::read_records(temp_file("missing.bin")));
}

TEST_CASE("empty files hold zero records") {
  const auto path = temp_file("empty.bin");
  std::ofstream(path, std::ios::binary).flush();
  CHECK(io::read_records(path).empty());
}

}

TEST_SUITE("verify") {

TEST_CASE("check_sorted") {
  CHECK(verify::check_sorted(with_sequence({1, 2, 2, 3})).sorted);
  const auto bad = verify::check_sorted(with_sequence({2, 1}));
  CHECK_FALSE(bad.sorted);
  CHECK(bad.first_violation == 1u);
  CHECK(verify::check_sorted(Records{}).sorted);
}

TEST_CASE("inverted equal pair is unstable") {
  const Records in{{5, 0}, {5, 1}};
  const Records out{{5, 1}, {5, 0}};
  const auto r = verify::check_stable_permutation(in, out);
  CHECK(r.sorted);
  CHECK(r.permutation);
  CHECK_FALSE(r.stable);
  CHECK(r.first_violation_index == 1u);
}

TEST_CASE("reference output passes every check") {
  const auto in = random_records(5000, -30, 30, 5);
  const auto r = verify::check_stable_permutation(in, zsort::testing::reference_stable_sort(in));
  CHECK(r.ok());
  CHECK_FALSE(r.first_violation_index);
}

TEST_CASE("merge sort passes the checker for every generator") {
  for (auto kind : datagen::kAllDistributions) {
    const auto in = datagen::generate({kind, 20000, 6, {}});
    CHECK(verify::check_stable_permutation(in, merge_sort_stable(in)).ok());
  }
}

TEST_CASE("missing, duplicated or altered records break the permutation") {
  const auto in = with_sequence({3, 1, 2});
  const Records missing{{1, 1}, {2, 2}};
  auto r = verify::check_stable_permutation(in, missing);
  CHECK_FALSE(r.permutation);
  CHECK_FALSE(r.stable);
  r = verify::check_stable_permutation(in, Records{{1, 1}, {1, 1}, {3, 0}});
  CHECK_FALSE(r.permutation);
  CHECK(r.first_violation_index == 1u);
  r = verify::check_stable_permutation(in, Records{{1, 1}, {2, 2}, {4, 0}});
  CHECK_FALSE(r.permutation);
  CHECK(r.first_violation_index == 2u);
}

TEST_CASE("non-index payloads are located by value") {
  const Records in{{4, 100}, {4, 50}, {1, 7}};
  CHECK(verify::check_stable_permutation(in, Records{{1, 7}, {4, 100}, {4, 50}}).ok());
  CHECK_FALSE(verify::check_stable_permutation(in, Records{{1, 7}, {4, 50}, {4, 100}}).stable);
}

TEST_CASE("payload collision is a precondition error") {
  const Records in{{1, 9}, {2, 9}};
  CHECK_THROWS_AS(verify::check_stable_permutation(in, in), verify::PayloadCollision);
}

TEST_CASE("key-only permutation check") {
  const auto in = with_sequence({3, 1, 2});
  CHECK(verify::check_sorted_key_permutation(in, with_sequence({1, 2, 3})));
  CHECK_FALSE(verify::check_sorted_key_permutation(in, with_sequence({1, 2})));
  CHECK_FALSE(verify::check_sorted_key_permutation(in, with_sequence({1, 3, 3})));
}

TEST_CASE("depth_probe") {
  const auto uniform = datagen::generate({datagen::Distribution::Uniform, 1000000, 1, {}});
  const auto s = verify::depth_probe(uniform);
  CHECK(s.max_depth_reached <= 3);
  CHECK(s.fallback_invocations == 0);
  CHECK(verify::depth_probe(Records(1000, Record{3, 0})).max_depth_reached == 0);
  const auto small = verify::depth_probe(random_records(96, 0, 1000, 1));
  CHECK(small.total_scatter_passes == 0);
  CHECK(small.max_depth_reached == 0);
}

}
