// SPDX-License-Identifier: Apache-2.0
#include <CLI11.hpp>

#include <iostream>
#include <thread>

#include "wfsem/config.hpp"
#include "wfsem/error.hpp"
#include "wfsem/pipeline.hpp"

namespace {

constexpr const char* kStages = "filter|prune|harvest|annotate|score|emit|stats|pipeline";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Workflow semantic annotation pipeline"};
  app.set_version_flag("--version", "wfsem 0.1.0");

  std::string stage_name;
  std::string config_path;
  std::string input;
  std::string workspace;
  size_t jobs = 0;
  std::string metric;
  std::optional<double> zhou_k;
  std::vector<std::string> overrides;
  bool quiet = false;

  app.add_option("stage", stage_name, kStages)->required();
  app.add_option("--config", config_path, "Config file (default: $WFSEM_CONFIG)");
  app.add_option("--input", input, "Directory of workflow documents (read by filter)");
  app.add_option("--workspace", workspace, "Workspace directory")->required();
  app.add_option("--jobs,-j", jobs, "Worker threads (default: hardware concurrency)");
  app.add_option("--metric", metric, "IC metric")->check(CLI::IsMember({"seco", "zhou", "sanchez"}));
  app.add_option("--zhou-k", zhou_k, "Zhou weighting k in [0,1]");
  app.add_option("--set", overrides, "Override a config key (key=value), repeatable");
  app.add_flag("--quiet,-q", quiet, "Suppress per-stage progress lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  const auto stage = wfsem::stage_from_string(stage_name);
  if (!stage) {
    std::cerr << "wfsem: unknown stage '" << stage_name << "' (expected " << kStages << ")\n";
    return 1;
  }
  if (!metric.empty()) overrides.push_back("score.metric=" + metric);
  if (zhou_k) overrides.push_back("score.zhou_k=" + std::to_string(*zhou_k));

  try {
    const wfsem::PipelineConfig config = wfsem::load_config_file(config_path, overrides);
    wfsem::RunOptions options;
    options.input = input;
    options.workspace = workspace;
    options.jobs = jobs;
    options.log = quiet ? nullptr : &std::cerr;
    const wfsem::RunReport report = wfsem::run_stage(*stage, config, options);
    const int code = report.exit_code();
    if (code == 3) std::cerr << "wfsem: completed with per-item failures, see <stage>/errors.jsonl\n";
    return code;
  } catch (const wfsem::Error& e) {
    std::cerr << "wfsem: " << e.what() << '\n';
    return wfsem::exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "wfsem: " << e.what() << '\n';
    return 1;
  }
}
