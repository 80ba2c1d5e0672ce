// SPDX-License-Identifier: Apache-2.0
#include "wfsem/pipeline.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <functional>
#include <mutex>
#include <ostream>
#include <set>
#include <thread>

#include "wfsem/annotator.hpp"
#include "wfsem/error.hpp"
#include "wfsem/harvester.hpp"
#include "wfsem/opmw.hpp"
#include "wfsem/relevance_filter.hpp"
#include "wfsem/scoring.hpp"
#include "wfsem/shim_pruner.hpp"
#include "wfsem/text.hpp"

namespace fs = std::filesystem;

namespace wfsem {

using json::Json;

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::Filter: return "filter";
    case Stage::Prune: return "prune";
    case Stage::Stats: return "stats";
    case Stage::Harvest: return "harvest";
    case Stage::Annotate: return "annotate";
    case Stage::Score: return "score";
    case Stage::Emit: return "emit";
    case Stage::Pipeline: return "pipeline";
  }
  return "";
}

std::optional<Stage> stage_from_string(std::string_view name) {
  for (auto s : {Stage::Filter, Stage::Prune, Stage::Stats, Stage::Harvest, Stage::Annotate, Stage::Score,
                 Stage::Emit, Stage::Pipeline}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Manifest

namespace {

// Position of a stage in the manifest.
int stage_order(std::string_view name) {
  static constexpr std::string_view order[] = {"filter", "prune", "stats", "harvest", "annotate", "score", "emit"};
  for (int i = 0; i < 7; ++i) {
    if (order[i] == name) return i;
  }
  return 7;
}

std::string now_utc() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

WorkspaceManifest WorkspaceManifest::load(const fs::path& workspace) {
  WorkspaceManifest m;
  const fs::path file = workspace / "manifest.json";
  if (!fs::exists(file)) return m;
  try {
    const Json j = Json::parse(read_file(file.string()));
    for (const auto& s : j.at("stages")) {
      StageRecord r;
      r.stage = s.at("stage").get<std::string>();
      r.input_hash = s.at("input_hash").get<std::string>();
      r.outputs = s.at("outputs").get<std::map<std::string, std::string>>();
      r.counts = s.at("counts");
      r.computed_at = s.value("computed_at", "");
      r.checked_at = s.value("checked_at", "");
      m.put(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Io, "unreadable manifest " + file.string() + ": " + e.what());
  }
  return m;
}

Json WorkspaceManifest::to_json() const {
  Json stages = Json::array();
  for (const auto& r : stages_) {
    stages.push_back(Json{{"stage", r.stage},
                          {"input_hash", r.input_hash},
                          {"outputs", r.outputs},
                          {"counts", r.counts},
                          {"computed_at", r.computed_at},
                          {"checked_at", r.checked_at}});
  }
  return Json{{"version", 1}, {"stages", std::move(stages)}};
}

void WorkspaceManifest::save(const fs::path& workspace) const {
  const fs::path tmp = workspace / "manifest.json.tmp";
  write_file(tmp.string(), json::pretty(to_json()));
  fs::rename(tmp, workspace / "manifest.json");
}

const StageRecord* WorkspaceManifest::find(Stage stage) const {
  for (const auto& r : stages_) {
    if (r.stage == to_string(stage)) return &r;
  }
  return nullptr;
}

void WorkspaceManifest::put(StageRecord record) {
  std::erase_if(stages_, [&](const StageRecord& r) { return r.stage == record.stage; });
  const int pos = stage_order(record.stage);
  auto it = std::find_if(stages_.begin(), stages_.end(), [&](const StageRecord& r) { return stage_order(r.stage) > pos; });
  stages_.insert(it, std::move(record));
}

int RunReport::exit_code() const {
  for (const auto& s : stages) {
    if (s.failures > 0) return 3;
  }
  return 0;
}

int exit_code_for(const Error& error) {
  return error.code() == ErrorCode::MissingUpstream ? 2 : 1;
}

OntologyStore load_ontologies(const PipelineConfig& config) {
  OntologyStore store;
  for (const auto& spec : config.ontologies) {
    store.load(read_file(spec.path.string()), spec.format, spec.id);
  }
  store.freeze();
  return store;
}

// ---------------------------------------------------------------------------
// Stage runner

namespace {

// Owns <workspace>/.lock for the lifetime of a run.
class WorkspaceLock {
public:
  explicit WorkspaceLock(const fs::path& workspace) : path_(workspace / ".lock") {
    fd_ = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd_ < 0) {
      std::string holder;
      try {
        holder = trim(read_file(path_.string()));
      } catch (...) {
      }
      throw Error(ErrorCode::Io, "workspace " + workspace.string() + " is locked" +
                                     (holder.empty() ? "" : " by pid " + holder) + " (remove " + path_.string() +
                                     " if stale)");
    }
    const std::string pid = std::to_string(::getpid()) + "\n";
    [[maybe_unused]] auto n = ::write(fd_, pid.data(), pid.size());
  }
  ~WorkspaceLock() {
    ::close(fd_);
    std::error_code ec;
    fs::remove(path_, ec);
  }
  WorkspaceLock(const WorkspaceLock&) = delete;
  WorkspaceLock& operator=(const WorkspaceLock&) = delete;

private:
  fs::path path_;
  int fd_ = -1;
};

// Length-prefixed parts so ("ab","c") and ("a","bc") differ.
class InputHasher {
public:
  void add(std::string_view part) {
    buffer_ += std::to_string(part.size());
    buffer_ += ':';
    buffer_ += part;
  }
  void add_file(const fs::path& file) {
    add(file.filename().string());
    add(read_file(file.string()));
  }
  void add_dir(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(dir)) {
      if (e.is_regular_file()) files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      add(fs::relative(f, dir).generic_string());
      add(read_file(f.string()));
    }
  }
  std::string digest() const { return sha256_hex(buffer_); }

private:
  std::string buffer_;
};

// Runs fn(i) for i in [0, n) on up to `jobs` threads. Results must be
// written to per-index slots so ordering never depends on scheduling.
void parallel_for(size_t n, size_t jobs, const std::function<void(size_t)>& fn) {
  jobs = std::max<size_t>(1, std::min(jobs, n));
  if (jobs <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> threads;
  for (size_t t = 0; t < jobs; ++t) {
    threads.emplace_back([&] {
      for (size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

struct CorpusEntry {
  std::string file;
  WorkflowGraph workflow;
};

Json corpus_json(const std::vector<CorpusEntry>& corpus) {
  Json items = Json::array();
  for (const auto& e : corpus) items.push_back(Json{{"file", e.file}, {"workflow", json::to_json(e.workflow)}});
  return Json{{"workflows", std::move(items)}};
}

std::vector<CorpusEntry> read_corpus(const fs::path& file) {
  const Json j = Json::parse(read_file(file.string()));
  std::vector<CorpusEntry> out;
  for (const auto& item : j.at("workflows")) {
    out.push_back({item.at("file").get<std::string>(), json::workflow_from_json(item.at("workflow"))});
  }
  return out;
}

bool is_workflow_file(const fs::path& p) {
  const std::string ext = to_lower(p.extension().string());
  return ext == ".xml" || ext == ".scufl" || ext == ".t2flow";
}

std::optional<Format> format_hint(const fs::path& p) {
  const std::string ext = to_lower(p.extension().string());
  if (ext == ".scufl") return Format::Scufl;
  if (ext == ".t2flow") return Format::T2flow;
  return std::nullopt;
}

class StageRunner {
public:
  StageRunner(const PipelineConfig& config, const RunOptions& options)
      : config_(config), options_(options), ws_(options.workspace) {
    jobs_ = options.jobs ? options.jobs : std::max(1u, std::thread::hardware_concurrency());
    manifest_ = WorkspaceManifest::load(ws_);
  }

  StageReport run(Stage stage) {
    StageRecord record;
    record.stage = std::string(to_string(stage));
    record.input_hash = input_hash(stage);

    const StageRecord* previous = manifest_.find(stage);
    if (previous && previous->input_hash == record.input_hash && outputs_intact(*previous)) {
      record = *previous;
      record.checked_at = now_utc();
      manifest_.put(record);
      manifest_.save(ws_);
      log(record.stage + ": inputs unchanged, skipped");
      return {stage, true, record.counts.value("failures", size_t{0}), record.counts};
    }

    fs::remove_all(ws_ / record.stage);
    fs::create_directories(ws_ / record.stage);
    outputs_.clear();
    Json counts = Json::object();
    switch (stage) {
      case Stage::Filter: counts = filter(); break;
      case Stage::Prune: counts = prune(); break;
      case Stage::Stats: counts = stats(); break;
      case Stage::Harvest: counts = harvest(); break;
      case Stage::Annotate: counts = annotate(); break;
      case Stage::Score: counts = score(); break;
      case Stage::Emit: counts = emit(); break;
      case Stage::Pipeline: break;
    }
    record.counts = counts;
    record.outputs = outputs_;
    record.computed_at = record.checked_at = now_utc();
    manifest_.put(record);
    manifest_.save(ws_);
    log(record.stage + ": " + counts.dump());
    return {stage, false, counts.value("failures", size_t{0}), counts};
  }

private:
  void log(const std::string& line) const {
    if (options_.log) *options_.log << line << '\n';
  }

  fs::path stage_file(std::string_view stage, std::string_view name) const { return ws_ / stage / name; }

  void write_output(std::string_view stage, const std::string& name, std::string_view contents) {
    const fs::path path = stage_file(stage, name);
    fs::create_directories(path.parent_path());
    write_file(path.string(), contents);
    outputs_[fs::path(stage) / name] = sha256_hex(contents);
  }

  bool outputs_intact(const StageRecord& r) const {
    for (const auto& [rel, digest] : r.outputs) {
      const fs::path p = ws_ / rel;
      if (!fs::is_regular_file(p) || sha256_hex(read_file(p.string())) != digest) return false;
    }
    return true;
  }

  // Upstream record present with its outputs on disk.
  fs::path upstream(Stage stage, std::string_view name) const {
    const StageRecord* r = manifest_.find(stage);
    const fs::path path = stage_file(to_string(stage), name);
    if (!r || !fs::is_regular_file(path)) {
      throw Error(ErrorCode::MissingUpstream,
                  "stage '" + std::string(to_string(stage)) + "' has not produced " + path.string());
    }
    return path;
  }

  void add_ontologies(InputHasher& h) const {
    for (const auto& o : config_.ontologies) {
      h.add(o.id);
      h.add_file(o.path);
    }
  }

  std::vector<fs::path> input_files() const {
    if (!fs::is_directory(options_.input)) {
      throw Error(ErrorCode::ConfigError, "input: not a directory: " + options_.input.string());
    }
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(options_.input)) {
      if (e.is_regular_file() && is_workflow_file(e.path())) files.push_back(e.path());
    }
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });
    return files;
  }

  std::string input_hash(Stage stage) const {
    InputHasher h;
    h.add(to_string(stage));
    h.add(config_.fingerprint);
    switch (stage) {
      case Stage::Filter:
        for (const auto& f : input_files()) {
          h.add_file(f);
          const fs::path meta = f.string() + ".meta.json";
          if (fs::exists(meta)) h.add_file(meta);
        }
        if (config_.term_list) h.add_file(*config_.term_list);
        if (config_.definition_search) add_ontologies(h);
        break;
      case Stage::Prune:
      case Stage::Stats:
        h.add_file(upstream(Stage::Filter, "corpus.json"));
        break;
      case Stage::Harvest:
        h.add_file(upstream(Stage::Prune, "corpus.json"));
        for (const auto& s : config_.sources) {
          if (s.kind == SourceKind::Fixture) h.add_dir(s.locator);
        }
        if (config_.fetch_mode == FetchMode::Fixture && config_.fetch_fixtures) h.add_dir(*config_.fetch_fixtures);
        break;
      case Stage::Annotate:
        h.add_file(upstream(Stage::Harvest, "descriptions.json"));
        add_ontologies(h);
        break;
      case Stage::Score:
        h.add_file(upstream(Stage::Harvest, "descriptions.json"));
        h.add_file(upstream(Stage::Annotate, "annotations.jsonl"));
        h.add_file(upstream(Stage::Annotate, "annotations_dedup.jsonl"));
        add_ontologies(h);
        if (config_.gold) h.add_file(*config_.gold);
        break;
      case Stage::Emit:
        h.add_file(upstream(Stage::Prune, "corpus.json"));
        h.add_file(upstream(Stage::Annotate, "annotations_dedup.jsonl"));
        break;
      case Stage::Pipeline: break;
    }
    return h.digest();
  }

  TermList build_terms() const {
    TermList terms;
    if (config_.term_list) terms = TermList::parse(read_file(config_.term_list->string()));
    if (config_.definition_search) {
      const OntologyStore store = load_ontologies(config_);
      const auto& s = *config_.definition_search;
      for (const auto& label : labels_of(store, definition_search(store, s.namespace_name, s.query, s.include_subclasses))) {
        terms.add_base(label);
      }
    }
    if (terms.effective().empty()) throw Error(ErrorCode::ConfigError, "filter.terms: effective term set is empty");
    return terms;
  }

  // --- filter --------------------------------------------------------------

  Json filter() {
    const TermList terms = build_terms();
    const RelevanceFilter matcher(terms);
    const auto files = input_files();

    struct Parsed {
      std::optional<WorkflowGraph> workflow;
      std::string error;
    };
    std::vector<Parsed> parsed(files.size());
    parallel_for(files.size(), jobs_, [&](size_t i) {
      try {
        WorkflowGraph w = parse_workflow(read_file(files[i].string()), format_hint(files[i]), config_.categories);
        w.id = files[i].stem().string();
        const fs::path meta = files[i].string() + ".meta.json";
        if (fs::exists(meta)) {
          const Json m = Json::parse(read_file(meta.string()));
          w.id = m.value("id", w.id);
          w.title = m.value("title", w.title);
          w.description = m.value("description", w.description);
          w.tags = m.value("tags", w.tags);
        }
        parsed[i].workflow = std::move(w);
      } catch (const std::exception& e) {
        parsed[i].error = e.what();
      }
    });

    std::vector<FilterVerdict> verdicts;
    std::vector<CorpusEntry> corpus;
    std::vector<Json> errors;
    std::set<std::string> ids;
    for (size_t i = 0; i < files.size(); ++i) {
      const std::string name = files[i].filename().string();
      if (!parsed[i].workflow) {
        errors.push_back(Json{{"file", name}, {"error", parsed[i].error}});
        continue;
      }
      WorkflowGraph& w = *parsed[i].workflow;
      if (!ids.insert(w.id).second) {
        errors.push_back(Json{{"file", name}, {"error", "duplicate workflow id '" + w.id + "'"}});
        continue;
      }
      FilterVerdict v = matcher.apply(w);
      if (v.relevant) corpus.push_back({name, std::move(w)});
      verdicts.push_back(std::move(v));
    }
    write_output("filter", "verdicts.csv", verdicts_csv(verdicts));
    write_output("filter", "corpus.json", json::pretty(corpus_json(corpus)));
    write_output("filter", "errors.jsonl", json::to_jsonl(errors));
    for (const auto& e : errors) log("filter: " + e.at("file").get<std::string>() + ": " + e.at("error").get<std::string>());
    return Json{{"files", files.size()},
                {"failures", errors.size()},
                {"terms", terms.effective().size()},
                {"workflows_in", verdicts.size()},
                {"workflows_relevant", corpus.size()},
                {"workflows_irrelevant", verdicts.size() - corpus.size()}};
  }

  // --- prune / stats -------------------------------------------------------

  static Json composition_counts(const std::vector<CorpusEntry>& corpus) {
    std::vector<WorkflowGraph> graphs;
    for (const auto& e : corpus) graphs.push_back(e.workflow);
    if (graphs.empty()) return Json{{"processors", 0}, {"shims", 0}, {"non_shims", 0}, {"other", 0}};
    const CompositionStats s = compute_stats(graphs);
    return Json{{"processors", s.total}, {"shims", s.shims}, {"non_shims", s.non_shims}, {"other", s.other}};
  }

  Json prune() {
    const auto corpus = read_corpus(upstream(Stage::Filter, "corpus.json"));
    std::vector<CorpusEntry> pruned(corpus.size());
    std::vector<std::string> texts(corpus.size());
    std::vector<std::string> errors(corpus.size());
    parallel_for(corpus.size(), jobs_, [&](size_t i) {
      try {
        pruned[i] = {corpus[i].file, prune_shims(corpus[i].workflow)};
        texts[i] = serialize_workflow(pruned[i].workflow, config_.categories);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    });

    std::vector<CorpusEntry> kept;
    std::vector<Json> error_lines;
    size_t after = 0, inferred = 0, all_shim = 0;
    for (size_t i = 0; i < corpus.size(); ++i) {
      if (!errors[i].empty()) {
        error_lines.push_back(Json{{"file", corpus[i].file}, {"error", errors[i]}});
        continue;
      }
      const WorkflowGraph& w = pruned[i].workflow;
      after += w.processors.size();
      inferred += std::count_if(w.links.begin(), w.links.end(), [](const DataLink& l) { return l.inferred; });
      if (w.processors.empty() && !corpus[i].workflow.processors.empty()) ++all_shim;
      write_output("prune", pruned[i].file + ".pruned", texts[i]);
      kept.push_back(std::move(pruned[i]));
    }
    write_output("prune", "corpus.json", json::pretty(corpus_json(kept)));
    write_output("prune", "errors.jsonl", json::to_jsonl(error_lines));

    Json counts = composition_counts(corpus);
    counts["workflows"] = corpus.size();
    counts["failures"] = error_lines.size();
    counts["processors_after"] = after;
    counts["inferred_links"] = inferred;
    counts["all_shim_workflows"] = all_shim;
    return counts;
  }

  Json stats() {
    const auto corpus = read_corpus(upstream(Stage::Filter, "corpus.json"));
    std::vector<WorkflowGraph> graphs;
    for (const auto& e : corpus) graphs.push_back(e.workflow);
    const CompositionStats s = compute_stats(graphs);
    write_output("stats", "composition.csv", stats_csv(s));
    write_output("stats", "composition.json", json::pretty(json::to_json(s)));
    Json counts = composition_counts(corpus);
    counts["workflows"] = s.workflows;
    return counts;
  }

  // --- harvest -------------------------------------------------------------

  std::shared_ptr<const HttpFetcher> make_fetcher() const {
    std::shared_ptr<const HttpFetcher> inner;
    if (config_.fetch_mode == FetchMode::Http) {
      inner = std::make_shared<HttpClientFetcher>();
    } else {
      inner = std::make_shared<FixtureFetcher>(config_.fetch_fixtures.value_or(fs::path()));
    }
    return std::make_shared<RetryingFetcher>(inner, config_.fetch);
  }

  Json harvest() {
    const auto corpus = read_corpus(upstream(Stage::Prune, "corpus.json"));
    struct Service {
      const WorkflowGraph* workflow;
      const Processor* processor;
    };
    std::vector<Service> services;
    for (const auto& e : corpus) {
      for (const auto& p : e.workflow.processors) services.push_back({&e.workflow, &p});
    }

    const auto fetcher = make_fetcher();
    const Harvester harvester(config_.sources, *fetcher, config_.harvest);
    std::vector<HarvestResult> results(services.size());
    parallel_for(services.size(), jobs_, [&](size_t i) {
      results[i] = harvester.harvest(services[i].workflow->id, *services[i].processor);
    });

    Json descriptions = Json::array();
    std::vector<Json> log_lines;
    size_t name_only = 0, source_errors = 0;
    for (const auto& r : results) {
      descriptions.push_back(json::to_json(r.description));
      if (r.description.name_only()) ++name_only;
      for (const auto& entry : r.log) {
        if (entry.outcome.rfind("error", 0) == 0) ++source_errors;
        log_lines.push_back(json::to_json(entry));
      }
    }
    write_output("harvest", "descriptions.json", json::pretty(Json{{"services", std::move(descriptions)}}));
    write_output("harvest", "harvest_log.jsonl", json::to_jsonl(log_lines));
    return Json{{"workflows", corpus.size()},
                {"services", services.size()},
                {"services_name_only", name_only},
                {"source_errors", source_errors}};
  }

  // --- annotate ------------------------------------------------------------

  std::vector<ServiceDescription> read_descriptions() const {
    const Json j = Json::parse(read_file(upstream(Stage::Harvest, "descriptions.json").string()));
    std::vector<ServiceDescription> out;
    for (const auto& d : j.at("services")) out.push_back(json::description_from_json(d));
    return out;
  }

  Json annotate() {
    const auto descriptions = read_descriptions();
    const OntologyStore store = load_ontologies(config_);
    const Dictionary dictionary(store, config_.dictionary);
    const PrecedenceOrder order(config_.precedence);

    std::vector<std::vector<Annotation>> raw(descriptions.size()), deduped(descriptions.size());
    parallel_for(descriptions.size(), jobs_, [&](size_t i) {
      raw[i] = dictionary.annotate(descriptions[i].assembled);
      deduped[i] = dedup(raw[i], order);
    });

    std::vector<Json> lines, dedup_lines;
    size_t annotated = 0;
    for (size_t i = 0; i < descriptions.size(); ++i) {
      const auto& d = descriptions[i];
      for (const auto& a : raw[i]) lines.push_back(json::annotation_line(d.workflow_id, d.processor_name, a));
      for (const auto& a : deduped[i]) dedup_lines.push_back(json::annotation_line(d.workflow_id, d.processor_name, a));
      if (!raw[i].empty()) ++annotated;
    }
    write_output("annotate", "annotations.jsonl", json::to_jsonl(lines));
    write_output("annotate", "annotations_dedup.jsonl", json::to_jsonl(dedup_lines));
    return Json{{"services", descriptions.size()},
                {"services_annotated", annotated},
                {"services_unannotated", descriptions.size() - annotated},
                {"annotations", lines.size()},
                {"annotations_dedup", dedup_lines.size()},
                {"dictionary_entries", dictionary.entry_count()}};
  }

  // --- score ---------------------------------------------------------------

  using ServiceKey = std::pair<std::string, std::string>;

  std::map<ServiceKey, std::vector<Annotation>> read_annotations(const fs::path& file) const {
    std::map<ServiceKey, std::vector<Annotation>> out;
    for (const auto& j : json::parse_jsonl(read_file(file.string()))) {
      auto line = json::annotation_from_line(j);
      out[{line.workflow_id, line.processor}].push_back(std::move(line.annotation));
    }
    return out;
  }

  Json score() {
    const auto descriptions = read_descriptions();
    auto raw = read_annotations(upstream(Stage::Annotate, "annotations.jsonl"));
    auto deduped = read_annotations(upstream(Stage::Annotate, "annotations_dedup.jsonl"));
    const OntologyStore store = load_ontologies(config_);

    std::vector<ServiceAnnotations> services;
    for (const auto& d : descriptions) {
      const ServiceKey key{d.workflow_id, d.processor_name};
      services.push_back({d.workflow_id, d.processor_name, std::move(raw[key]), std::move(deduped[key])});
    }
    const ICReport report = wfsem::score(services, store, config_.metric, config_.histogram_bins);
    write_output("score", "ic_report.json", json::pretty(json::to_json(report)));
    for (const auto& [name, h] : report.histograms) {
      write_output("score", "histogram_" + name + ".csv", json::histogram_csv(h));
    }
    Json counts{{"annotations", report.summary.annotations},
                {"annotations_scored", report.summary.annotations_scored},
                {"annotations_dedup", report.summary.annotations_dedup},
                {"annotations_dedup_scored", report.summary.annotations_dedup_scored},
                {"services", report.summary.services},
                {"services_scored", report.summary.services_scored},
                {"workflows", report.summary.workflows},
                {"workflows_scored", report.summary.workflows_scored}};
    if (config_.gold) {
      const auto gold = parse_gold_tsv(read_file(config_.gold->string()));
      const GoldComparison g = compare_gold(gold, store, config_.metric, config_.histogram_bins);
      write_output("score", "gold_comparison.json", json::pretty(json::to_json(g)));
      write_output("score", "histogram_gold_annotation.csv", json::histogram_csv(g.annotation_histogram));
      write_output("score", "histogram_gold_entity.csv", json::histogram_csv(g.entity_histogram));
      counts["gold_entities"] = g.entities;
      counts["gold_pairs"] = g.pairs;
    }
    return counts;
  }

  // --- emit ----------------------------------------------------------------

  Json emit() {
    const auto corpus = read_corpus(upstream(Stage::Prune, "corpus.json"));
    const auto annotations = read_annotations(upstream(Stage::Annotate, "annotations_dedup.jsonl"));

    std::vector<OpmwDocument> docs(corpus.size());
    std::vector<std::string> errors(corpus.size());
    parallel_for(corpus.size(), jobs_, [&](size_t i) {
      const WorkflowGraph& w = corpus[i].workflow;
      std::map<std::string, std::vector<Annotation>> per_processor;
      for (const auto& p : w.processors) {
        auto it = annotations.find({w.id, p.name});
        if (it != annotations.end()) per_processor[p.name] = it->second;
      }
      try {
        docs[i] = emit_opmw(w, per_processor, config_.uris);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    });

    std::vector<RdfTriple> all;
    std::vector<Json> error_lines;
    size_t type_triples = 0, template_triples = 0, uses_triples = 0, files = 0;
    for (size_t i = 0; i < corpus.size(); ++i) {
      if (!errors[i].empty()) {
        error_lines.push_back(Json{{"file", corpus[i].file}, {"error", errors[i]}});
        continue;
      }
      write_output("emit", corpus[i].file + ".ttl", docs[i].turtle);
      ++files;
      for (const auto& t : docs[i].triples) {
        if (t.predicate == opmw::kRdfType) ++type_triples;
        if (t.predicate == opmw::kTemplate) ++template_triples;
        if (t.predicate == opmw::kUses) ++uses_triples;
        all.push_back(t);
      }
    }
    if (config_.ntriples) write_output("emit", "all.nt", to_ntriples(all));
    write_output("emit", "errors.jsonl", json::to_jsonl(error_lines));
    return Json{{"workflows", corpus.size()},
                {"files", files},
                {"failures", error_lines.size()},
                {"triples", all.size()},
                {"type_triples", type_triples},
                {"template_triples", template_triples},
                {"uses_triples", uses_triples}};
  }

  const PipelineConfig& config_;
  const RunOptions& options_;
  fs::path ws_;
  size_t jobs_ = 1;
  WorkspaceManifest manifest_;
  std::map<std::string, std::string> outputs_;
};

}  // namespace

RunReport run_stage(Stage stage, const PipelineConfig& config, const RunOptions& options) {
  fs::create_directories(options.workspace);
  WorkspaceLock lock(options.workspace);
  StageRunner runner(config, options);
  RunReport report;
  if (stage == Stage::Pipeline) {
    for (auto s : kPipelineStages) report.stages.push_back(runner.run(s));
  } else {
    report.stages.push_back(runner.run(stage));
  }
  return report;
}

}  // namespace wfsem
