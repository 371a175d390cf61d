#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include <json.hpp>

#include "rieszlab/error.hpp"
#include "rieszlab/experiment.hpp"

using namespace rieszlab;

namespace {

std::string config_error_path(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "";
}

std::string csv_of(const std::string& text) {
  ArtifactCache off;
  const auto r = run_experiment(parse_config(text), off);
  std::ostringstream os;
  write_csv(os, r);
  return os.str();
}

}  // namespace

TEST_CASE("config errors name the offending field") {
  CHECK(config_error_path("not json") == "/");
  CHECK(config_error_path("[1]") == "/");
  CHECK(config_error_path(R"({"n":1})") == "/experiment");
  CHECK(config_error_path(R"({"experiment":"nope"})") == "/experiment");
  CHECK(config_error_path(R"({"experiment":"trace_slope","n":1,"alpha":1,"k_values":[1,2,3,4],"bogus":1})") == "/bogus");
  CHECK(config_error_path(R"({"experiment":"trace_slope","n":1,"k_values":[1,2,3,4]})") == "/alpha");
  CHECK(config_error_path(R"({"experiment":"trace_slope","n":1,"alpha":-1,"k_values":[1,2,3,4]})") == "/alpha");
  CHECK(config_error_path(R"({"experiment":"trace_slope","n":1,"alpha":1,"k_values":[1,2,3]})") == "/k_values");
  CHECK(config_error_path(R"({"experiment":"trace_slope","n":1,"alpha":1,"k_values":[1,3,2,4]})") == "/k_values");
  CHECK(config_error_path(R"({"experiment":"trace_slope","n":1,"alpha":1,"k_range":{"from":1,"to":8}})") == "/k_range/factor");
  CHECK(config_error_path(R"({"experiment":"trace_slope","n":1,"alpha":1,"k_range":{"from":1,"to":8,"factor":0.5}})") == "/k_range");
  CHECK(config_error_path(R"({"experiment":"trace_slope","n":1,"alpha":1,"k_range":{"from":1,"to":8,"factor":1.5}})") == "/k_range");
  CHECK(config_error_path(R"({"experiment":"trace_slope","n":1,"alpha":1,"k_values":[1,2,3,4],"method":"x"})") == "/method");
  CHECK(config_error_path(R"({"experiment":"moment_slope","alpha":1,"k_values":[1,2,3,4]})") == "/sign");
  CHECK(config_error_path(R"({"experiment":"moment_slope","n":2,"alpha":1,"sign":1,"k_values":[1,2,3,4]})") == "/n");
  CHECK(config_error_path(R"({"experiment":"square_fn","alpha":1,"K":8,"delta_values":[0.25,0.6],"samples":1,"seed":1})") ==
        "/delta_values/1");
  CHECK(config_error_path(R"({"experiment":"square_fn","alpha":1,"K":8,"delta_values":[0.25,0.1],"seed":1})") == "/samples");
  CHECK(config_error_path(R"({"experiment":"wave_support","t":1,"k_values":[4,8]})") == "/margin");
  CHECK(config_error_path(R"({"experiment":"riesz_converge","n":1,"lambda":1,"K":4,"R_values":[2,1],"seed":1})") == "/R_values");
  CHECK(config_error_path(R"({"experiment":"sharpness_radial","n":2,"p":2,"k_values":[1,2,3,4]})") == "/p");
  CHECK(config_error_path(R"({"experiment":"weyl_identity","n":1,"K":4,"nu":2,"F":{"center":5,"half_width":1},"seed":1})") == "/nu");
  CHECK(config_error_path(R"({"experiment":"weyl_identity","n":1,"K":4,"nu":1,"F":{"center":1,"half_width":2},"seed":1})") == "/F");
  CHECK(config_error_path(R"({"experiment":"weyl_identity","n":1,"K":4,"nu":1,"F":{"center":5,"width":1},"seed":1})") == "/F/width");
  CHECK(config_error_path(R"({"experiment":"karadzhov_sup","n":2,"k_values":[4,8],"seed":-3})") == "/seed");
}

TEST_CASE("k_range expands geometrically and run ids ignore the output directory") {
  const auto a = parse_config(R"({"experiment":"trace_slope","n":1,"alpha":1,"k_range":{"from":4,"to":64,"factor":2}})");
  CHECK(a.k_values == std::vector<int>{4, 8, 16, 32, 64});
  const auto b = parse_config(R"({"experiment":"trace_slope","n":1,"alpha":1,"k_range":{"from":4,"to":64,"factor":2},"output":"elsewhere"})");
  CHECK(b.output == "elsewhere");
  CHECK(run_id(a) == run_id(b));
  CHECK(run_id(a).size() == 16);
  const auto c = parse_config(R"({"experiment":"trace_slope","n":1,"alpha":1.5,"k_range":{"from":4,"to":64,"factor":2}})");
  CHECK(run_id(a) != run_id(c));
  const auto d = parse_config(R"({"experiment":"square_fn","alpha":1,"K":8,"delta_range":{"from":0.5,"to":0.0625,"factor":0.5},"samples":1,"seed":1})");
  CHECK(d.delta_values.size() == 4);
}

TEST_CASE("every experiment kind runs on a small config") {
  const char* configs[] = {
      R"({"experiment":"trace_slope","n":1,"alpha":2,"k_values":[16,32,64,128]})",
      R"({"experiment":"trace_slope","n":2,"quantity":"local_mass","M":1,"k_values":[8,16,32,64]})",
      R"({"experiment":"moment_slope","alpha":1,"sign":1,"k_values":[16,32,64,128]})",
      R"({"experiment":"square_fn","alpha":0.5,"K":16,"delta_values":[0.25,0.125],"samples":2,"seed":3})",
      R"({"experiment":"wave_support","t":1,"margin":0.1,"k_values":[16,32]})",
      R"({"experiment":"riesz_converge","n":1,"lambda":1,"K":8,"R_values":[2,4,8,16],"seed":1,"points":9})",
      R"({"experiment":"sharpness_radial","n":2,"p":4,"k_values":[8,16,32,64]})",
      R"({"experiment":"sharpness_weighted","n":2,"alpha":3,"k_values":[8,16,32,64]})",
      R"({"experiment":"karadzhov_sup","n":2,"k_values":[8,16,32]})",
      R"({"experiment":"weyl_identity","n":1,"K":10,"nu":1,"F":{"center":10,"half_width":6},"seed":1})",
  };
  for (const char* text : configs) {
    CAPTURE(text);
    ArtifactCache off;
    const auto cfg = parse_config(text);
    const auto r = run_experiment(cfg, off);
    CHECK_FALSE(r.rows.empty());
    CHECK(r.run_id == run_id(cfg));
    for (const auto& row : r.rows) {
      CHECK(row.experiment == to_string(cfg.kind));
      CHECK(std::isfinite(row.value));
    }
    std::ostringstream js;
    write_summary_json(js, r);
    const auto j = nlohmann::json::parse(js.str());
    CHECK(j.at("schema") == kSummarySchema);
    CHECK(j.at("run_id") == r.run_id);
    CHECK(j.at("verdict") == to_string(r.summary.verdict));
  }
}

TEST_CASE("CSV output is deterministic and follows the schema") {
  const std::string cfg = R"({"experiment":"riesz_converge","n":2,"lambda":0.5,"K":6,"R_values":[2,4,8],"seed":9,"points":5})";
  const auto a = csv_of(cfg);
  CHECK(a == csv_of(cfg));
  std::istringstream in(a);
  std::string line;
  std::getline(in, line);
  CHECK(line == std::string("#schema: ") + kCsvSchema);
  std::getline(in, line);
  CHECK(line == "experiment,parameters,value,reference,verdict");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(line.rfind("riesz_converge,", 0) == 0);
  }
  CHECK(rows >= 3);
}

TEST_CASE("catalog and kind names round trip") {
  const auto catalog = experiment_catalog();
  CHECK(catalog.size() == 9);
  for (const auto& [kind, description] : catalog) {
    CHECK(parse_experiment_kind(to_string(kind)) == kind);
    CHECK_FALSE(description.empty());
  }
  CHECK_FALSE(parse_experiment_kind("nothing").has_value());
}
