// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wfsem/annotator.hpp"
#include "wfsem/harvester.hpp"
#include "wfsem/http.hpp"
#include "wfsem/ontology.hpp"
#include "wfsem/opmw.hpp"
#include "wfsem/workflow.hpp"

namespace wfsem {

// Flat `dotted.key = value` settings. Grammar, one entry per line:
//
//   line    := blank | comment | entry
//   comment := '#' anything
//   entry   := key '=' value
//   key     := segment ('.' segment)*      segment: [A-Za-z0-9_-]+
//   value   := rest of line, trimmed; lists are comma-separated
//
// A later entry for the same key replaces the earlier one.
class ConfigFile {
public:
  // Throws ConfigError naming the offending line.
  static ConfigFile parse(std::string_view text);

  void set(const std::string& key, std::string value);
  // "key=value"; throws ConfigError.
  void set_assignment(std::string_view assignment);

  std::optional<std::string> get(std::string_view key) const;
  std::vector<std::string> list(std::string_view key) const;
  // Keys below `prefix.` (one level), in sorted order.
  std::vector<std::string> children(std::string_view prefix) const;

  const std::map<std::string, std::string, std::less<>>& values() const { return values_; }

  // Sorted `key = value` lines; parse(to_text()) round-trips.
  std::string to_text() const;

private:
  std::map<std::string, std::string, std::less<>> values_;
};

struct OntologySpec {
  std::string id;
  std::filesystem::path path;
  OntologyFormat format = OntologyFormat::OboFlat;
};

// Seeds filter base terms from ontology class definitions.
struct DefinitionSearchSpec {
  std::string namespace_name;
  std::string query;
  bool include_subclasses = true;
};

enum class FetchMode { Fixture, Http };

struct PipelineConfig {
  std::filesystem::path config_dir;
  std::vector<OntologySpec> ontologies;
  std::vector<std::string> precedence;
  std::optional<std::filesystem::path> term_list;
  std::optional<DefinitionSearchSpec> definition_search;
  std::vector<MetadataSource> sources;
  HarvestOptions harvest;
  FetchMode fetch_mode = FetchMode::Fixture;
  std::optional<std::filesystem::path> fetch_fixtures;
  FetchPolicy fetch;
  CategoryTable categories = CategoryTable::defaults();
  ICMetric metric;
  size_t histogram_bins = 10;
  std::optional<std::filesystem::path> gold;
  UriMintingPolicy uris;
  bool ntriples = true;
  DictionaryOptions dictionary;
  // Canonical text of the settings, used for stage input hashing.
  std::string fingerprint;
};

inline const std::vector<std::string>& default_precedence() {
  static const std::vector<std::string> ids = {"SWO", "OBIWS", "OBI", "EFO", "NIFSTD"};
  return ids;
}

// Validates and resolves paths relative to `config_dir`. Throws ConfigError
// naming the field.
PipelineConfig load_config(const ConfigFile& file, const std::filesystem::path& config_dir);

// Reads `path`, or $WFSEM_CONFIG when `path` is empty, then applies the
// `overrides` assignments.
PipelineConfig load_config_file(const std::filesystem::path& path, const std::vector<std::string>& overrides = {});

}  // namespace wfsem
