// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wfsem/annotator.hpp"
#include "wfsem/ontology.hpp"

namespace wfsem {

// Annotations of one harvested service, before and after dedup.
struct ServiceAnnotations {
  std::string workflow_id;
  std::string processor;
  std::vector<Annotation> annotations;
  std::vector<Annotation> deduped;
};

struct ServiceScore {
  std::string workflow_id;
  std::string processor;
  double ic = 0.0;      // max over scorable annotations, 0 when unscored
  bool scored = false;  // false: no scorable annotation
};

struct WorkflowScore {
  std::string workflow_id;
  std::optional<double> ic;  // mean over scored services
  double ic_including_unscored = 0.0;
  size_t services = 0;
  size_t scored_services = 0;
};

struct OntologyScore {
  double mean_ic = 0.0;
  double min_ic = 0.0;
  size_t annotation_count = 0;  // every annotation from the ontology
  size_t scored_count = 0;
  size_t distinct_terms = 0;
};

// Bins over [0,1]: right-open except the last, which is closed.
struct Histogram {
  std::vector<std::pair<double, size_t>> bins;  // (lower bound, count)

  static Histogram build(std::span<const double> values, size_t bin_count);
  size_t total() const;
};

struct ICReportSummary {
  size_t annotations = 0;
  size_t annotations_scored = 0;
  size_t annotations_dedup = 0;
  size_t annotations_dedup_scored = 0;
  std::optional<double> mean_annotation_ic;        // pre-dedup
  std::optional<double> mean_annotation_ic_dedup;  // post-dedup
  size_t services = 0;
  size_t services_scored = 0;
  std::optional<double> mean_service_ic_excluding_unscored;
  std::optional<double> mean_service_ic_including_unscored;
  size_t workflows = 0;
  size_t workflows_scored = 0;
  std::optional<double> mean_workflow_ic;
};

struct ScoredAnnotation {
  std::string workflow_id;
  std::string processor;
  Annotation annotation;  // ic filled, nullopt when unscorable
};

struct ICReport {
  ICMetric metric;
  std::vector<ScoredAnnotation> per_annotation;  // post-dedup
  std::vector<ServiceScore> per_service;
  std::vector<WorkflowScore> per_workflow;  // first-appearance order
  std::map<std::string, OntologyScore> per_ontology;
  std::map<std::string, Histogram> histograms;
  ICReportSummary summary;
};

// Throws UnknownClass when an annotation references a class absent from
// its ontology.
ICReport score(std::span<const ServiceAnnotations> services, const OntologyStore& store, const ICMetric& metric,
               size_t bin_count = 10);

// Max over scorable ICs of `annotations` (each in its own ontology).
std::optional<double> service_ic(std::span<const Annotation> annotations, const OntologyStore& store,
                                 const ICMetric& metric);

struct GoldStandardEntry {
  std::string entity_id;
  std::vector<std::string> term_uris;
};

// Two tab-separated columns (entity id, term uri); '#' lines and blanks are
// skipped. Pairs are grouped per entity in first-appearance order.
// Throws InvalidArgument.
std::vector<GoldStandardEntry> parse_gold_tsv(std::string_view text);

struct GoldComparison {
  size_t entities = 0;
  size_t pairs = 0;
  size_t unknown_terms = 0;     // skipped, counted
  size_t unscorable_terms = 0;  // known but obsolete/detached
  size_t scored_entities = 0;
  std::optional<double> mean_annotation_ic;
  std::optional<double> mean_entity_ic_excluding_unscored;
  std::optional<double> mean_entity_ic_including_unscored;
  Histogram annotation_histogram;
  Histogram entity_histogram;
};

// Scores a manually curated annotation set the same way services are
// scored: entity IC = max over its term ICs.
GoldComparison compare_gold(std::span<const GoldStandardEntry> gold, const OntologyStore& store,
                            const ICMetric& metric, size_t bin_count = 10);

}  // namespace wfsem
