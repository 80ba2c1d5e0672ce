// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wfsem/config.hpp"
#include "wfsem/error.hpp"
#include "wfsem/serialization.hpp"

namespace wfsem {

enum class Stage { Filter, Prune, Stats, Harvest, Annotate, Score, Emit, Pipeline };

std::string_view to_string(Stage stage);
std::optional<Stage> stage_from_string(std::string_view name);

// Stages run by `pipeline`, in dependency order. `stats` is standalone.
inline constexpr std::array kPipelineStages = {Stage::Filter,   Stage::Prune, Stage::Harvest,
                                               Stage::Annotate, Stage::Score, Stage::Emit};

struct StageRecord {
  std::string stage;
  std::string input_hash;
  std::map<std::string, std::string> outputs;  // workspace-relative path -> sha256
  json::Json counts = json::Json::object();
  std::string computed_at;  // last real run
  std::string checked_at;   // last run, including no-op reruns

  bool operator==(const StageRecord&) const = default;
};

// <workspace>/manifest.json. Records are kept in stage dependency order.
class WorkspaceManifest {
public:
  static WorkspaceManifest load(const std::filesystem::path& workspace);
  void save(const std::filesystem::path& workspace) const;

  const StageRecord* find(Stage stage) const;
  void put(StageRecord record);

  const std::vector<StageRecord>& stages() const { return stages_; }
  json::Json to_json() const;

private:
  std::vector<StageRecord> stages_;
};

struct RunOptions {
  std::filesystem::path input;
  std::filesystem::path workspace;
  size_t jobs = 0;  // 0: hardware concurrency
  std::ostream* log = nullptr;
};

struct StageReport {
  Stage stage;
  bool reused = false;  // inputs and outputs unchanged, nothing recomputed
  size_t failures = 0;
  json::Json counts;
};

struct RunReport {
  std::vector<StageReport> stages;
  // 0, or 3 when any stage logged per-item failures.
  int exit_code() const;
};

// Runs one stage (or every pipeline stage in order) against the workspace,
// holding the workspace lock. Throws MissingUpstream when an upstream stage
// has no record or its outputs are gone; ConfigError for unusable settings.
RunReport run_stage(Stage stage, const PipelineConfig& config, const RunOptions& options);

// 1 config/usage error, 2 missing upstream.
int exit_code_for(const Error& error);

// Loads and freezes every configured ontology.
OntologyStore load_ontologies(const PipelineConfig& config);

}  // namespace wfsem
