#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "rieszlab/cache.hpp"
#include "rieszlab/error.hpp"
#include "rieszlab/experiment.hpp"

namespace fs = std::filesystem;
using namespace rieszlab;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitFail = 2;
constexpr int kExitConfig = 3;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("/", "cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes through a temporary so readers never see a partial file.
void write_atomic(const fs::path& path, const std::string& text) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

int cmd_run(const std::string& config_path, bool no_cache, const std::string& output_override, bool quiet) {
  ExperimentConfig cfg;
  try {
    cfg = parse_config(read_file(config_path));
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  if (!output_override.empty()) cfg.output = output_override;
  auto cache = ArtifactCache::from_environment(!no_cache);
  ExperimentResult result;
  try {
    result = run_experiment(cfg, cache);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << to_string(cfg.kind) << ": " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << to_string(cfg.kind) << ": " << e.what() << '\n';
    return kExitConfig;
  }
  for (const auto& w : cache.warnings()) std::cerr << "warning: " << w << '\n';

  std::ostringstream csv, summary;
  write_csv(csv, result);
  write_summary_json(summary, result);
  const fs::path dir(cfg.output);
  fs::create_directories(dir);
  const fs::path csv_path = dir / (result.run_id + ".csv");
  const fs::path json_path = dir / (result.run_id + ".json");
  write_atomic(csv_path, csv.str());
  write_atomic(json_path, summary.str());

  if (!quiet) {
    const auto& s = result.summary;
    std::cout << "run " << result.run_id << "  " << to_string(cfg.kind);
    if (!cfg.name.empty()) std::cout << " (" << cfg.name << ")";
    std::cout << '\n';
    if (s.fit) {
      std::printf("  slope %.6f +- %.2g  (reference %.6g, tolerance %.3g)\n", s.fit->slope, s.fit->slope_stderr,
                  s.reference, s.tolerance);
    }
    for (const auto& [key, value] : s.metrics) std::printf("  %s = %.6g\n", key.c_str(), value);
    for (const auto& note : s.notes) std::cout << "  note: " << note << '\n';
    std::cout << "  verdict: " << to_string(s.verdict) << '\n';
    std::cout << "  wrote " << csv_path.string() << " and " << json_path.string() << '\n';
  }
  return result.summary.verdict == Verdict::fail ? kExitFail : kExitPass;
}

int cmd_list() {
  for (const auto& [kind, description] : experiment_catalog()) {
    std::printf("%-20s %s\n", to_string(kind).c_str(), description.c_str());
  }
  return kExitPass;
}

int cmd_show_cache() {
  const auto cache = ArtifactCache::from_environment(true);
  std::cout << "cache directory: " << cache.directory().string() << '\n';
  const auto entries = cache.list();
  if (entries.empty()) std::cout << "(empty)\n";
  for (const auto& e : entries) {
    std::printf("%-8s %10ju  %-7s %s%s%s\n", e.kind.c_str(), e.bytes, e.valid ? "ok" : "CORRUPT", e.file.c_str(),
                e.detail.empty() ? "" : "  ", e.detail.c_str());
  }
  return kExitPass;
}

int cmd_export(const std::string& id, const std::string& dir, const std::string& format) {
  const fs::path path = fs::path(dir) / (id + (format == "json" ? ".json" : ".csv"));
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "no stored result " << path.string() << '\n';
    return kExitRuntime;
  }
  std::cout << in.rdbuf();
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"riesz-lab: numerical experiments for Hermite spectral multipliers"};
  app.require_subcommand(1);

  std::string config_path, output_override;
  bool no_cache = false, quiet = false;
  auto* run = app.add_subcommand("run", "run one experiment from a JSON config");
  run->add_option("config", config_path, "config file")->required();
  run->add_flag("--no-cache", no_cache, "build every quadrature artifact in memory");
  run->add_option("--output", output_override, "override the config's output directory");
  run->add_flag("-q,--quiet", quiet, "print nothing on success");

  auto* list = app.add_subcommand("list-experiments", "list experiment kinds");
  auto* show = app.add_subcommand("show-cache", "list cached artifacts and verify checksums");

  std::string export_id, export_dir = "results", export_format = "csv";
  auto* exp = app.add_subcommand("export", "print a stored result");
  exp->add_option("run-id", export_id, "run id printed by 'run'")->required();
  exp->add_option("--dir", export_dir, "result directory")->capture_default_str();
  exp->add_option("--format", export_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfig;
  }

  try {
    if (*run) return cmd_run(config_path, no_cache, output_override, quiet);
    if (*list) return cmd_list();
    if (*show) return cmd_show_cache();
    if (*exp) return cmd_export(export_id, export_dir, export_format);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitRuntime;
}
