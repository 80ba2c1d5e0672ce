// SPDX-License-Identifier: Apache-2.0
#include "wfsem/config.hpp"

#include <cstdlib>
#include <set>

#include "wfsem/error.hpp"
#include "wfsem/text.hpp"

namespace fs = std::filesystem;

namespace wfsem {

namespace {

bool valid_key(std::string_view key) {
  if (key.empty() || key.front() == '.' || key.back() == '.') return false;
  char prev = 0;
  for (char c : key) {
    const bool word = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
    if (!word && c != '.') return false;
    if (c == '.' && prev == '.') return false;
    prev = c;
  }
  return true;
}

[[noreturn]] void fail(std::string_view field, const std::string& what) {
  throw Error(ErrorCode::ConfigError, std::string(field) + ": " + what);
}

// Set and non-empty; `key=` on the command line clears an optional setting.
bool present(const ConfigFile& f, std::string_view key) {
  auto v = f.get(key);
  return v && !v->empty();
}

std::string require(const ConfigFile& f, const std::string& key) {
  auto v = f.get(key);
  if (!v || v->empty()) fail(key, "required");
  return *v;
}

fs::path resolve(const fs::path& base, const std::string& value) {
  fs::path p(value);
  return p.is_absolute() ? p : (base / p).lexically_normal();
}

fs::path existing_path(const ConfigFile& f, const std::string& key, const fs::path& base) {
  fs::path p = resolve(base, require(f, key));
  if (!fs::exists(p)) fail(key, "path does not exist: " + p.string());
  return p;
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  try {
    size_t used = 0;
    T value;
    if constexpr (std::is_floating_point_v<T>) {
      value = static_cast<T>(std::stod(text, &used));
    } else {
      const long long v = std::stoll(text, &used);
      if (v < 0) fail(key, "must not be negative");
      value = static_cast<T>(v);
    }
    if (used != text.size()) fail(key, "not a number: " + text);
    return value;
  } catch (const std::logic_error&) {
    fail(key, "not a number: " + text);
  }
}

bool parse_bool(const std::string& key, const std::string& text) {
  const std::string v = to_lower(text);
  if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
  if (v == "false" || v == "no" || v == "0" || v == "off") return false;
  fail(key, "not a boolean: " + text);
}

}  // namespace

ConfigFile ConfigFile::parse(std::string_view text) {
  ConfigFile out;
  size_t line_no = 0;
  for (const std::string& raw : split(text, '\n')) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::ConfigError, "line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    if (!valid_key(key)) {
      throw Error(ErrorCode::ConfigError, "line " + std::to_string(line_no) + ": bad key '" + key + "'");
    }
    out.values_[key] = trim(std::string_view(line).substr(eq + 1));
  }
  return out;
}

void ConfigFile::set(const std::string& key, std::string value) {
  if (!valid_key(key)) throw Error(ErrorCode::ConfigError, "bad key '" + key + "'");
  values_[key] = trim(value);
}

void ConfigFile::set_assignment(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw Error(ErrorCode::ConfigError, "override '" + std::string(assignment) + "' is not key=value");
  }
  set(trim(assignment.substr(0, eq)), std::string(assignment.substr(eq + 1)));
}

std::optional<std::string> ConfigFile::get(std::string_view key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> ConfigFile::list(std::string_view key) const {
  std::vector<std::string> out;
  auto v = get(key);
  if (!v) return out;
  for (const auto& item : split(*v, ',')) {
    std::string t = trim(item);
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

std::vector<std::string> ConfigFile::children(std::string_view prefix) const {
  const std::string p = std::string(prefix) + ".";
  std::set<std::string> out;
  for (auto it = values_.lower_bound(p); it != values_.end() && it->first.compare(0, p.size(), p) == 0; ++it) {
    const std::string rest = it->first.substr(p.size());
    out.insert(rest.substr(0, rest.find('.')));
  }
  return {out.begin(), out.end()};
}

std::string ConfigFile::to_text() const {
  std::string out;
  for (const auto& [k, v] : values_) out += k + " = " + v + "\n";
  return out;
}

PipelineConfig load_config(const ConfigFile& f, const fs::path& config_dir) {
  PipelineConfig c;
  c.config_dir = config_dir;

  // Ontologies.
  const auto ids = f.list("ontologies");
  if (ids.empty()) fail("ontologies", "at least one ontology is required");
  std::set<std::string> seen;
  for (const auto& id : ids) {
    if (!seen.insert(id).second) fail("ontologies", "duplicate id " + id);
    OntologySpec spec;
    spec.id = id;
    spec.path = existing_path(f, "ontology." + id + ".path", config_dir);
    const std::string fmt_key = "ontology." + id + ".format";
    const auto fmt = ontology_format_from_string(f.get(fmt_key).value_or("obo"));
    if (!fmt) fail(fmt_key, "unknown format");
    spec.format = *fmt;
    c.ontologies.push_back(std::move(spec));
  }

  if (present(f, "precedence")) {
    c.precedence = f.list("precedence");
    for (const auto& id : c.precedence) {
      if (!seen.count(id)) fail("precedence", "'" + id + "' is not a loaded ontology");
    }
    try {
      PrecedenceOrder check(c.precedence);
    } catch (const Error& e) {
      fail("precedence", e.what());
    }
  } else {
    for (const auto& id : default_precedence()) {
      if (seen.count(id)) c.precedence.push_back(id);
    }
  }

  // Filter.
  if (present(f, "filter.terms")) c.term_list = existing_path(f, "filter.terms", config_dir);
  if (present(f, "filter.search.query") || present(f, "filter.search.namespace")) {
    DefinitionSearchSpec s;
    s.namespace_name = require(f, "filter.search.namespace");
    s.query = require(f, "filter.search.query");
    if (auto v = f.get("filter.search.subclasses")) s.include_subclasses = parse_bool("filter.search.subclasses", *v);
    c.definition_search = s;
  }
  if (!c.term_list && !c.definition_search) fail("filter.terms", "a term list or filter.search is required");

  // Harvest chain.
  const auto source_ids = f.list("harvest.sources");
  if (source_ids.empty()) fail("harvest.sources", "at least one source is required");
  std::set<std::string> source_seen;
  for (const auto& id : source_ids) {
    if (!source_seen.insert(id).second) fail("harvest.sources", "duplicate source " + id);
    MetadataSource s;
    s.id = id;
    const std::string kind_key = "harvest.source." + id + ".kind";
    const auto kind = source_kind_from_string(require(f, kind_key));
    if (!kind) fail(kind_key, "unknown source kind");
    s.kind = *kind;
    const std::string loc_key = "harvest.source." + id + ".locator";
    if (s.kind == SourceKind::Fixture) {
      s.locator = existing_path(f, loc_key, config_dir).string();
    } else {
      s.locator = f.get(loc_key).value_or("");
      if (s.locator.empty() && s.kind != SourceKind::EmbeddedWorkflow && s.kind != SourceKind::WsdlDocument) {
        fail(loc_key, "required for " + std::string(to_string(s.kind)));
      }
    }
    c.sources.push_back(std::move(s));
  }
  if (present(f, "harvest.keys")) {
    c.harvest.keys.clear();
    for (const auto& k : f.list("harvest.keys")) {
      const auto key = lookup_key_from_string(k);
      if (!key) fail("harvest.keys", "unknown key '" + k + "'");
      c.harvest.keys.push_back(*key);
    }
  }

  // Fetching.
  const std::string mode = to_lower(f.get("fetch.mode").value_or("fixture"));
  if (mode == "fixture") {
    c.fetch_mode = FetchMode::Fixture;
    if (present(f, "fetch.fixtures")) c.fetch_fixtures = existing_path(f, "fetch.fixtures", config_dir);
  } else if (mode == "http") {
    c.fetch_mode = FetchMode::Http;
  } else {
    fail("fetch.mode", "expected fixture or http");
  }
  if (auto v = f.get("fetch.timeout_ms")) c.fetch.timeout = std::chrono::milliseconds(parse_number<long>("fetch.timeout_ms", *v));
  if (auto v = f.get("fetch.retries")) c.fetch.retries = parse_number<int>("fetch.retries", *v);
  c.harvest.timeout = c.fetch.timeout;

  // Category table overrides.
  for (const auto& [format_name, format] : {std::pair{"scufl", Format::Scufl}, std::pair{"t2flow", Format::T2flow}}) {
    const std::string prefix = std::string("categories.") + format_name;
    for (const auto& kind : f.children(prefix)) {
      const std::string key = prefix + "." + kind;
      const auto value = f.get(key);
      if (!value) fail(key, "nested keys are not allowed here");
      const auto category = category_from_string(*value);
      if (!category) fail(key, "unknown category '" + *value + "'");
      c.categories.set(format, kind, *category);
    }
  }

  // Scoring.
  double k = 0.5;
  if (auto v = f.get("score.zhou_k")) k = parse_number<double>("score.zhou_k", *v);
  try {
    c.metric = metric_from_string(f.get("score.metric").value_or("zhou"), k);
  } catch (const Error& e) {
    fail(f.get("score.metric") && to_lower(*f.get("score.metric")) != "zhou" ? "score.metric" : "score.zhou_k", e.what());
  }
  if (auto v = f.get("score.bins")) {
    c.histogram_bins = parse_number<size_t>("score.bins", *v);
    if (c.histogram_bins == 0) fail("score.bins", "must be positive");
  }
  if (present(f, "score.gold")) c.gold = existing_path(f, "score.gold", config_dir);

  // Emission.
  if (auto v = f.get("emit.numeric_base")) c.uris.numeric_base = *v;
  if (auto v = f.get("emit.namespace_base")) c.uris.namespace_base = *v;
  if (auto v = f.get("emit.ntriples")) c.ntriples = parse_bool("emit.ntriples", *v);

  if (auto v = f.get("annotate.min_token_length")) {
    c.dictionary.min_single_token_length = parse_number<size_t>("annotate.min_token_length", *v);
  }

  // Resolved, path-independent settings for hashing.
  ConfigFile canonical = f;
  canonical.set("score.metric", to_string(c.metric));
  c.fingerprint = canonical.to_text();
  return c;
}

PipelineConfig load_config_file(const fs::path& path, const std::vector<std::string>& overrides) {
  fs::path file = path;
  if (file.empty()) {
    const char* env = std::getenv("WFSEM_CONFIG");
    if (!env || !*env) throw Error(ErrorCode::ConfigError, "config: no --config given and WFSEM_CONFIG is unset");
    file = env;
  }
  if (!fs::is_regular_file(file)) throw Error(ErrorCode::ConfigError, "config: cannot read " + file.string());
  ConfigFile cfg = ConfigFile::parse(read_file(file.string()));
  for (const auto& o : overrides) cfg.set_assignment(o);
  return load_config(cfg, fs::absolute(file).parent_path());
}

}  // namespace wfsem
