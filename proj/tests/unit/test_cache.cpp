#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "rieszlab/cache.hpp"
#include "rieszlab/error.hpp"

using namespace rieszlab;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("rieszlab-cache-test-" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

std::size_t file_count(const fs::path& dir) {
  std::size_t n = 0;
  for (const auto& e : fs::recursive_directory_iterator(dir)) n += e.is_regular_file();
  return n;
}

}  // namespace

TEST_CASE("rule files round trip and check their key and checksum") {
  const auto rule = build_rule(24, 1.5);
  const auto key = rule_key(24, 1.5, {});
  std::stringstream ss;
  save_rule(ss, rule, key);
  const auto bytes = ss.str();
  std::stringstream in(bytes);
  const auto back = load_rule(in, key);
  CHECK(std::ranges::equal(back.nodes(), rule.nodes()));
  CHECK(std::ranges::equal(back.weights(), rule.weights()));
  CHECK(back.design_degree() == 24);
  CHECK(back.weight_exponent() == 1.5);

  std::stringstream other(bytes);
  CHECK_THROWS_AS(load_rule(other, rule_key(25, 1.5, {})), FormatError);
  std::string corrupt = bytes;
  corrupt[corrupt.size() - 20] ^= 0x01;
  std::stringstream bad(corrupt);
  CHECK_THROWS_AS(load_rule(bad, key), FormatError);
  std::stringstream truncated(bytes.substr(0, bytes.size() / 2));
  CHECK_THROWS_AS(load_rule(truncated, key), FormatError);

  RuleOptions graded;
  graded.origin_grading = 4;
  CHECK(rule_key(24, 1.5, graded) != key);
  CHECK(rule_key(24, 0.0, {}) != key);
}

TEST_CASE("artifact cache hits, rebuilds corrupt files with a warning") {
  TempDir tmp;
  ArtifactCache cache(tmp.path);
  CHECK(cache.enabled());
  const auto a = cache.rule(16);
  const auto t = cache.table(16, a);
  CHECK(cache.stats().misses == 2);
  CHECK(file_count(tmp.path) == 2);
  const auto b = cache.rule(16);
  CHECK(std::ranges::equal(b.nodes(), a.nodes()));
  CHECK(cache.stats().hits >= 1);
  CHECK(cache.warnings().empty());

  for (const auto& e : fs::recursive_directory_iterator(tmp.path)) {
    if (!e.is_regular_file()) continue;
    std::fstream f(e.path(), std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(40);
    f.put('\x7f');
  }
  for (const auto& info : cache.list()) CHECK_FALSE(info.valid);

  ArtifactCache fresh(tmp.path);
  const auto c = fresh.rule(16);
  const auto t2 = fresh.table(16, c);
  CHECK(std::ranges::equal(c.nodes(), a.nodes()));
  CHECK(t2 == t);
  CHECK(fresh.stats().rebuilds == 2);
  CHECK(fresh.warnings().size() == 2);
  for (const auto& info : fresh.list()) CHECK(info.valid);
}

TEST_CASE("disabled cache never writes") {
  TempDir tmp;
  const auto cwd = fs::current_path();
  fs::current_path(tmp.path);
  ArtifactCache off;
  CHECK_FALSE(off.enabled());
  const auto r = off.rule(8);
  (void)off.table(8, r);
  CHECK(off.list().empty());
  CHECK(file_count(tmp.path) == 0);
  fs::current_path(cwd);
}

TEST_CASE("environment selects the cache directory") {
  TempDir tmp;
  ::setenv("RIESZ_LAB_CACHE", tmp.path.c_str(), 1);
  CHECK(ArtifactCache::default_directory() == tmp.path);
  CHECK(ArtifactCache::from_environment().directory() == tmp.path);
  CHECK_FALSE(ArtifactCache::from_environment(false).enabled());
  ::unsetenv("RIESZ_LAB_CACHE");
}
