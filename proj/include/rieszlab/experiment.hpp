#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rieszlab/cache.hpp"
#include "rieszlab/expansion.hpp"
#include "rieszlab/scaling.hpp"

namespace rieszlab {

enum class ExperimentKind {
  trace_slope,
  moment_slope,
  square_fn,
  wave_support,
  riesz_converge,
  sharpness_radial,
  sharpness_weighted,
  karadzhov_sup,
  weyl_identity,
};

std::string to_string(ExperimentKind kind);
std::optional<ExperimentKind> parse_experiment_kind(const std::string& name);
/// Every kind with a one-line description, in declaration order.
std::vector<std::pair<ExperimentKind, std::string>> experiment_catalog();

/// Invalid configuration; `path` names the offending field ("/alpha", "/k_range/to").
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// Parsed configuration. Only the fields used by `kind` are set; see
/// experiment_catalog() and the README for which fields each kind needs.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::trace_slope;
  std::string name;
  std::optional<int> n;
  std::vector<int> k_values;
  std::vector<double> delta_values;
  std::vector<double> R_values;
  std::optional<double> alpha;
  std::optional<int> sign;
  std::optional<double> lambda;
  std::optional<double> p;
  double epsilon = 0.05;
  std::optional<double> t;
  std::optional<double> margin;
  std::optional<double> M;
  std::optional<int> K;
  std::optional<int> nu;
  std::optional<double> F_center;
  std::optional<double> F_half_width;
  std::uint64_t seed = 1;
  int samples = 1;
  int points = 33;
  /// trace_slope: "weighted_norm" or "local_mass".
  std::string quantity = "weighted_norm";
  /// trace_slope: "automatic", "radial", "cartesian" or "dual_svd".
  std::string method = "automatic";
  std::optional<double> tolerance;
  std::optional<double> threshold;
  std::optional<double> spread_limit;
  std::optional<double> noise;
  std::optional<double> factor;
  std::string output = "results";
  /// Canonical JSON text of the parsed config without "output"; the run id
  /// hashes it.
  std::string canonical;
};

/// Parses JSON text; throws ConfigError.
ExperimentConfig parse_config(const std::string& json_text);

/// 16 hex digits of FNV-1a over the canonical config.
std::string run_id(const ExperimentConfig& cfg);

enum class Verdict { pass, fail, informational };
std::string to_string(Verdict v);

struct ResultRow {
  std::string experiment;
  /// key=value pairs joined by ';' in the CSV.
  std::vector<std::pair<std::string, double>> parameters;
  double value = 0.0;
  /// NaN when there is no reference.
  double reference = 0.0;
  Verdict verdict = Verdict::informational;
};

struct ExperimentSummary {
  std::optional<ScalingReport> fit;
  double reference = 0.0;
  double tolerance = 0.0;
  Verdict verdict = Verdict::informational;
  std::map<std::string, double> metrics;
  std::vector<std::string> notes;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::string run_id;
  std::vector<ResultRow> rows;
  ExperimentSummary summary;
};

/// Runs one experiment. Deterministic for a given config. Numerical
/// failures are rethrown as NumericalError prefixed with the experiment name.
ExperimentResult run_experiment(const ExperimentConfig& cfg, ArtifactCache& cache);

inline constexpr const char* kCsvSchema = "riesz-lab/results/v1";
inline constexpr const char* kSummarySchema = "riesz-lab/summary/v1";

/// "#schema: riesz-lab/results/v1", the header row, then one line per row;
/// numbers use %.17g.
void write_csv(std::ostream& os, const ExperimentResult& result);
/// JSON summary with slope, intercept, residual, slope_stderr, range,
/// tolerance, reference, verdict, metrics and the config.
void write_summary_json(std::ostream& os, const ExperimentResult& result);

/// Complex coefficients with independent standard normal parts for every
/// |mu| <= K, scaled to unit l2 norm. Deterministic in the seed.
Expansion random_expansion(int n, int K, std::uint64_t seed, bool complex_values = true);

}  // namespace rieszlab
