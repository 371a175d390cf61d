#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "rieszlab/hermite_table.hpp"
#include "rieszlab/quadrature.hpp"

namespace rieszlab {

/// Binary rule file: magic "RLQR", u32 version, u64 key length, key bytes,
/// u64 K, f64 weight exponent, f64 half width, u64 node count, f64 nodes,
/// f64 weights, u64 FNV-1a checksum.
void save_rule(std::ostream& os, const QuadratureRule& rule, const std::string& key);
/// Throws FormatError on a bad file or when the stored key differs.
QuadratureRule load_rule(std::istream& is, const std::string& expected_key);

/// Canonical key of a rule: every parameter that changes its nodes.
std::string rule_key(int K, double weight_exponent, const RuleOptions& options);

struct CacheEntryInfo {
  std::string file;
  std::string kind;
  std::uintmax_t bytes = 0;
  bool valid = false;
  std::string detail;
};

/// On-disk store for quadrature rules and Hermite tables. A disabled cache
/// builds every artifact and never touches the disk. Corrupt files are
/// rebuilt and overwritten; each rebuild adds a warning.
class ArtifactCache {
 public:
  ArtifactCache() = default;
  explicit ArtifactCache(std::filesystem::path directory);

  /// RIESZ_LAB_CACHE if set, else ./.riesz-lab-cache. Disabled when
  /// `enabled` is false.
  static ArtifactCache from_environment(bool enabled = true);
  static std::filesystem::path default_directory();

  bool enabled() const noexcept { return dir_.has_value(); }
  std::filesystem::path directory() const { return dir_.value_or(std::filesystem::path{}); }

  QuadratureRule rule(int K, double weight_exponent = 0.0, const RuleOptions& options = {});
  /// Table of h_0..h_K on the nodes of `rule`.
  HermiteTable table(int K, const QuadratureRule& rule, const RuleOptions& options = {});

  std::vector<CacheEntryInfo> list() const;
  std::vector<std::string> warnings() const;

  struct Stats {
    std::size_t hits = 0;
    std::size_t misses = 0;
    std::size_t rebuilds = 0;
  };
  Stats stats() const;

  ArtifactCache(const ArtifactCache&) = delete;
  ArtifactCache& operator=(const ArtifactCache&) = delete;
  ArtifactCache(ArtifactCache&& other) noexcept;
  ArtifactCache& operator=(ArtifactCache&& other) noexcept;

 private:
  std::optional<std::filesystem::path> dir_;
  mutable std::mutex mutex_;
  std::vector<std::string> warnings_;
  Stats stats_;
};

}  // namespace rieszlab
