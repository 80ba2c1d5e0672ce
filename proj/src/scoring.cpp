// SPDX-License-Identifier: Apache-2.0
#include "wfsem/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "wfsem/error.hpp"
#include "wfsem/text.hpp"

namespace wfsem {

namespace {

std::optional<double> mean(std::span<const double> values) {
  if (values.empty()) return std::nullopt;
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

std::optional<double> annotation_ic(const Annotation& a, const OntologyStore& store, const ICMetric& metric) {
  if (!store.find(a.ontology_id, a.class_uri)) {
    throw Error(ErrorCode::UnknownClass, a.class_uri + " is not a class of " + a.ontology_id);
  }
  return store.information_content(a.ontology_id, a.class_uri, metric);
}

}  // namespace

Histogram Histogram::build(std::span<const double> values, size_t bin_count) {
  if (bin_count == 0) throw Error(ErrorCode::InvalidArgument, "histogram needs at least one bin");
  Histogram h;
  for (size_t i = 0; i < bin_count; ++i) {
    h.bins.emplace_back(static_cast<double>(i) / static_cast<double>(bin_count), 0);
  }
  for (double v : values) {
    auto bin = static_cast<size_t>(std::floor(v * static_cast<double>(bin_count)));
    bin = std::min(bin, bin_count - 1);
    ++h.bins[bin].second;
  }
  return h;
}

size_t Histogram::total() const {
  size_t n = 0;
  for (const auto& [lower, count] : bins) n += count;
  return n;
}

std::optional<double> service_ic(std::span<const Annotation> annotations, const OntologyStore& store,
                                 const ICMetric& metric) {
  std::optional<double> best;
  for (const auto& a : annotations) {
    const auto ic = annotation_ic(a, store, metric);
    if (ic && (!best || *ic > *best)) best = ic;
  }
  return best;
}

ICReport score(std::span<const ServiceAnnotations> services, const OntologyStore& store, const ICMetric& metric,
               size_t bin_count) {
  ICReport report;
  report.metric = metric;
  std::vector<double> all_ics;
  std::vector<double> dedup_ics;
  std::vector<double> service_all;
  std::vector<double> service_scored;
  std::map<std::string, std::vector<double>> ontology_ics;
  std::map<std::string, std::set<std::string>> ontology_terms;
  std::map<std::string, size_t> ontology_counts;
  std::map<std::string, size_t> workflow_index;

  for (const auto& s : services) {
    std::optional<double> best;
    for (const auto& a : s.annotations) {
      const auto ic = annotation_ic(a, store, metric);
      ++report.summary.annotations;
      ++ontology_counts[a.ontology_id];
      ontology_terms[a.ontology_id].insert(a.class_uri);
      if (!ic) continue;
      ++report.summary.annotations_scored;
      all_ics.push_back(*ic);
      ontology_ics[a.ontology_id].push_back(*ic);
      if (!best || *ic > *best) best = ic;
    }
    for (const auto& a : s.deduped) {
      ScoredAnnotation scored{s.workflow_id, s.processor, a};
      scored.annotation.ic = annotation_ic(a, store, metric);
      ++report.summary.annotations_dedup;
      if (scored.annotation.ic) {
        ++report.summary.annotations_dedup_scored;
        dedup_ics.push_back(*scored.annotation.ic);
      }
      report.per_annotation.push_back(std::move(scored));
    }

    ServiceScore service{s.workflow_id, s.processor, best.value_or(0.0), best.has_value()};
    service_all.push_back(service.ic);
    if (service.scored) service_scored.push_back(service.ic);
    report.per_service.push_back(service);

    auto [it, inserted] = workflow_index.emplace(s.workflow_id, report.per_workflow.size());
    if (inserted) report.per_workflow.push_back({s.workflow_id, std::nullopt, 0.0, 0, 0});
    WorkflowScore& w = report.per_workflow[it->second];
    ++w.services;
    // running sums; converted to means below
    w.ic_including_unscored += service.ic;
    if (service.scored) {
      ++w.scored_services;
      w.ic = w.ic.value_or(0.0) + service.ic;
    }
  }

  std::vector<double> workflow_ics;
  for (auto& w : report.per_workflow) {
    w.ic_including_unscored /= static_cast<double>(w.services);
    if (w.ic) {
      *w.ic /= static_cast<double>(w.scored_services);
      workflow_ics.push_back(*w.ic);
    }
  }

  for (const auto& [id, count] : ontology_counts) {
    OntologyScore o;
    o.annotation_count = count;
    o.distinct_terms = ontology_terms[id].size();
    const auto& ics = ontology_ics[id];
    o.scored_count = ics.size();
    if (!ics.empty()) {
      o.mean_ic = *mean(ics);
      o.min_ic = *std::min_element(ics.begin(), ics.end());
    }
    report.per_ontology.emplace(id, o);
  }

  auto& sum = report.summary;
  sum.mean_annotation_ic = mean(all_ics);
  sum.mean_annotation_ic_dedup = mean(dedup_ics);
  sum.services = service_all.size();
  sum.services_scored = service_scored.size();
  sum.mean_service_ic_excluding_unscored = mean(service_scored);
  sum.mean_service_ic_including_unscored = mean(service_all);
  sum.workflows = report.per_workflow.size();
  sum.workflows_scored = workflow_ics.size();
  sum.mean_workflow_ic = mean(workflow_ics);

  report.histograms["annotation"] = Histogram::build(all_ics, bin_count);
  report.histograms["annotation_dedup"] = Histogram::build(dedup_ics, bin_count);
  report.histograms["service"] = Histogram::build(service_all, bin_count);
  report.histograms["service_scored"] = Histogram::build(service_scored, bin_count);
  report.histograms["workflow"] = Histogram::build(workflow_ics, bin_count);
  return report;
}

std::vector<GoldStandardEntry> parse_gold_tsv(std::string_view text) {
  std::vector<GoldStandardEntry> entries;
  std::map<std::string, size_t> index;
  std::istringstream in{std::string(text)};
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || trim(line)[0] == '#') continue;
    const auto cols = split(line, '\t');
    if (cols.size() != 2 || trim(cols[0]).empty() || trim(cols[1]).empty()) {
      throw Error(ErrorCode::InvalidArgument, "gold standard line " + std::to_string(line_no) + " needs two tab-separated columns");
    }
    const std::string entity = trim(cols[0]);
    const std::string term = trim(cols[1]);
    auto [it, inserted] = index.emplace(entity, entries.size());
    if (inserted) entries.push_back({entity, {}});
    auto& terms = entries[it->second].term_uris;
    if (std::find(terms.begin(), terms.end(), term) == terms.end()) terms.push_back(term);
  }
  return entries;
}

GoldComparison compare_gold(std::span<const GoldStandardEntry> gold, const OntologyStore& store,
                            const ICMetric& metric, size_t bin_count) {
  GoldComparison out;
  std::vector<double> term_ics;
  std::vector<double> entity_all;
  std::vector<double> entity_scored;
  for (const auto& entry : gold) {
    ++out.entities;
    std::optional<double> best;
    for (const auto& uri : entry.term_uris) {
      ++out.pairs;
      const auto copies = store.find_all(uri);
      if (copies.empty()) {
        ++out.unknown_terms;
        continue;
      }
      // first ontology (by id) holding a scorable copy
      std::optional<double> ic;
      for (const OntologyClass* c : copies) {
        ic = store.information_content(c->ontology_id, uri, metric);
        if (ic) break;
      }
      if (!ic) {
        ++out.unscorable_terms;
        continue;
      }
      term_ics.push_back(*ic);
      if (!best || *ic > *best) best = ic;
    }
    entity_all.push_back(best.value_or(0.0));
    if (best) {
      ++out.scored_entities;
      entity_scored.push_back(*best);
    }
  }
  out.mean_annotation_ic = mean(term_ics);
  out.mean_entity_ic_excluding_unscored = mean(entity_scored);
  out.mean_entity_ic_including_unscored = mean(entity_all);
  out.annotation_histogram = Histogram::build(term_ics, bin_count);
  out.entity_histogram = Histogram::build(entity_scored, bin_count);
  return out;
}

}  // namespace wfsem
