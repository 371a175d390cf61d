#include "rieszlab/cache.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "rieszlab/binary_io.hpp"
#include "rieszlab/error.hpp"

namespace rieszlab {

namespace fs = std::filesystem;

namespace {

constexpr std::array<unsigned char, 4> kRuleMagic{'R', 'L', 'Q', 'R'};
constexpr std::uint32_t kRuleVersion = 1;

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t key_hash(const std::string& key) {
  return binary::fnv1a({reinterpret_cast<const unsigned char*>(key.data()), key.size()});
}

// Writes through a temporary file so readers never see a partial artifact.
template <class Save>
void write_atomic(const fs::path& path, Save&& save) {
  fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cache: cannot write " + tmp.string());
    save(os);
    if (!os) throw std::runtime_error("cache: write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

}  // namespace

std::string rule_key(int K, double weight_exponent, const RuleOptions& options) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "rule K=%d alpha=%.17g order=%d density=%.17g tail=%.17g grading=%d", K,
                weight_exponent, options.panel_order, options.density, options.tail_tolerance,
                options.origin_grading);
  return buf;
}

void save_rule(std::ostream& os, const QuadratureRule& rule, const std::string& key) {
  binary::Writer w;
  w.raw(kRuleMagic);
  w.u32(kRuleVersion);
  w.u64(key.size());
  w.raw({reinterpret_cast<const unsigned char*>(key.data()), key.size()});
  w.u64(static_cast<std::uint64_t>(rule.design_degree()));
  w.f64(rule.weight_exponent());
  w.f64(rule.half_width());
  w.u64(rule.size());
  w.f64s(rule.nodes());
  w.f64s(rule.weights());
  w.finish();
  w.write_to(os);
}

QuadratureRule load_rule(std::istream& is, const std::string& expected_key) {
  auto r = binary::Reader::from_stream(is);
  const auto magic = r.raw(kRuleMagic.size());
  if (!std::equal(magic.begin(), magic.end(), kRuleMagic.begin())) throw FormatError("rule file: bad magic");
  if (r.u32() != kRuleVersion) throw FormatError("rule file: unsupported version");
  const auto klen = r.u64();
  if (klen > 4096) throw FormatError("rule file: implausible key length");
  const auto kb = r.raw(klen);
  if (std::string(kb.begin(), kb.end()) != expected_key) throw FormatError("rule file: key mismatch");
  const auto K = r.u64();
  const double alpha = r.f64();
  const double L = r.f64();
  const auto m = r.u64();
  if (K > static_cast<std::uint64_t>(kMaxRuleDegree) || m > (1u << 26)) throw FormatError("rule file: implausible header");
  std::vector<double> nodes(m), weights(m);
  r.f64s(nodes);
  r.f64s(weights);
  r.verify_checksum();
  return QuadratureRule(std::move(nodes), std::move(weights), L, static_cast<int>(K), alpha);
}

ArtifactCache::ArtifactCache(fs::path directory) : dir_(std::move(directory)) {}

ArtifactCache::ArtifactCache(ArtifactCache&& other) noexcept
    : dir_(std::move(other.dir_)), warnings_(std::move(other.warnings_)), stats_(other.stats_) {}

ArtifactCache& ArtifactCache::operator=(ArtifactCache&& other) noexcept {
  dir_ = std::move(other.dir_);
  warnings_ = std::move(other.warnings_);
  stats_ = other.stats_;
  return *this;
}

fs::path ArtifactCache::default_directory() {
  if (const char* env = std::getenv("RIESZ_LAB_CACHE"); env && *env) return fs::path(env);
  return fs::path(".riesz-lab-cache");
}

ArtifactCache ArtifactCache::from_environment(bool enabled) {
  if (!enabled) return ArtifactCache();
  return ArtifactCache(default_directory());
}

QuadratureRule ArtifactCache::rule(int K, double weight_exponent, const RuleOptions& options) {
  if (!dir_) return build_rule(K, weight_exponent, options);
  const std::string key = rule_key(K, weight_exponent, options);
  const fs::path path = *dir_ / ("rule-K" + std::to_string(K) + "-" + hex(key_hash(key)) + ".bin");
  std::lock_guard lock(mutex_);
  if (fs::exists(path)) {
    try {
      std::ifstream is(path, std::ios::binary);
      auto r = load_rule(is, key);
      ++stats_.hits;
      return r;
    } catch (const std::exception& e) {
      warnings_.push_back("cache: rebuilding " + path.filename().string() + " (" + e.what() + ")");
      ++stats_.rebuilds;
    }
  } else {
    ++stats_.misses;
  }
  auto r = build_rule(K, weight_exponent, options);
  write_atomic(path, [&](std::ostream& os) { save_rule(os, r, key); });
  return r;
}

HermiteTable ArtifactCache::table(int K, const QuadratureRule& rule, const RuleOptions& options) {
  const auto nodes = rule.nodes();
  if (!dir_) return HermiteTable(K, std::vector<double>(nodes.begin(), nodes.end()));
  const std::string key =
      "table K=" + std::to_string(K) + " on " + rule_key(rule.design_degree(), rule.weight_exponent(), options);
  const fs::path path = *dir_ / ("table-K" + std::to_string(K) + "-" + hex(key_hash(key)) + ".bin");
  std::lock_guard lock(mutex_);
  if (fs::exists(path)) {
    try {
      std::ifstream is(path, std::ios::binary);
      auto t = HermiteTable::load(is);
      if (t.max_degree() != K || !std::equal(nodes.begin(), nodes.end(), t.nodes().begin(), t.nodes().end())) {
        throw FormatError("table does not match its key");
      }
      ++stats_.hits;
      return t;
    } catch (const std::exception& e) {
      warnings_.push_back("cache: rebuilding " + path.filename().string() + " (" + e.what() + ")");
      ++stats_.rebuilds;
    }
  } else {
    ++stats_.misses;
  }
  HermiteTable t(K, std::vector<double>(nodes.begin(), nodes.end()));
  write_atomic(path, [&](std::ostream& os) { t.save(os); });
  return t;
}

std::vector<CacheEntryInfo> ArtifactCache::list() const {
  std::vector<CacheEntryInfo> out;
  if (!dir_ || !fs::is_directory(*dir_)) return out;
  for (const auto& entry : fs::directory_iterator(*dir_)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".bin") continue;
    CacheEntryInfo info;
    info.file = entry.path().filename().string();
    info.bytes = entry.file_size();
    const auto name = info.file;
    info.kind = name.rfind("rule-", 0) == 0 ? "rule" : name.rfind("table-", 0) == 0 ? "table" : "unknown";
    try {
      std::ifstream is(entry.path(), std::ios::binary);
      auto r = binary::Reader::from_stream(is);
      // Walk to the end of the payload and check the trailing checksum.
      const auto magic = r.raw(4);
      const std::string m(magic.begin(), magic.end());
      if (m == "RLQR") {
        r.u32();
        const auto kb = r.raw(r.u64());
        info.detail = std::string(kb.begin(), kb.end());
        r.u64();
        r.f64();
        r.f64();
        std::vector<double> v(r.u64());
        r.f64s(v);
        r.f64s(v);
      } else if (m == "RLHT") {
        r.u32();
        const auto K = r.u64();
        const auto n = r.u64();
        info.detail = "table K=" + std::to_string(K) + " nodes=" + std::to_string(n);
        std::vector<double> v(n);
        r.f64s(v);
        for (std::uint64_t k = 0; k <= K; ++k) r.f64s(v);
      } else {
        throw FormatError("unknown magic");
      }
      r.verify_checksum();
      info.valid = true;
    } catch (const std::exception& e) {
      info.valid = false;
      info.detail = e.what();
    }
    out.push_back(std::move(info));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.file < b.file; });
  return out;
}

std::vector<std::string> ArtifactCache::warnings() const {
  std::lock_guard lock(mutex_);
  return warnings_;
}

ArtifactCache::Stats ArtifactCache::stats() const {
  std::lock_guard lock(mutex_);
  return stats_;
}

}  // namespace rieszlab
