// SPDX-License-Identifier: Apache-2.0
#include "wfsem/serialization.hpp"

#include <cstdio>
#include <memory>

#include "wfsem/error.hpp"

namespace wfsem::json {

namespace {

template <typename T>
Json optional_value(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

std::optional<std::string> optional_string(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<std::string>();
}

const Json& field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw Error(ErrorCode::InvalidArgument, std::string("missing field '") + key + "'");
  return *it;
}

Json port_end(const std::optional<std::string>& processor, const std::string& port) {
  return Json{{"processor", optional_value(processor)}, {"port", port}};
}

}  // namespace

Json to_json(const WorkflowGraph& w) {
  Json processors = Json::array();
  for (const auto& p : w.processors) {
    Json jp{{"name", p.name},
            {"category", std::string(to_string(p.category))},
            {"kind", p.kind},
            {"description", optional_value(p.embedded_description)},
            {"endpoint", optional_value(p.endpoint)},
            {"operation", optional_value(p.operation_name)}};
    if (p.nested) jp["nested"] = to_json(*p.nested);
    processors.push_back(std::move(jp));
  }
  Json links = Json::array();
  for (const auto& l : w.links) {
    links.push_back(Json{{"source", port_end(l.source_processor, l.source_port)},
                         {"sink", port_end(l.sink_processor, l.sink_port)},
                         {"inferred", l.inferred}});
  }
  return Json{{"id", w.id},
              {"title", w.title},
              {"description", w.description},
              {"tags", w.tags},
              {"format", std::string(to_string(w.format))},
              {"processors", std::move(processors)},
              {"links", std::move(links)},
              {"inputs", w.input_ports},
              {"outputs", w.output_ports}};
}

WorkflowGraph workflow_from_json(const Json& j) {
  try {
    WorkflowGraph w;
    w.id = field(j, "id").get<std::string>();
    w.title = j.value("title", "");
    w.description = j.value("description", "");
    w.tags = j.value("tags", std::vector<std::string>{});
    const auto format = format_from_string(field(j, "format").get<std::string>());
    if (!format) throw Error(ErrorCode::InvalidArgument, "unknown format in workflow " + w.id);
    w.format = *format;
    for (const auto& jp : field(j, "processors")) {
      Processor p;
      p.name = field(jp, "name").get<std::string>();
      const auto category = category_from_string(field(jp, "category").get<std::string>());
      if (!category) throw Error(ErrorCode::InvalidArgument, "unknown category for processor " + p.name);
      p.category = *category;
      p.kind = jp.value("kind", "");
      p.embedded_description = optional_string(jp, "description");
      p.endpoint = optional_string(jp, "endpoint");
      p.operation_name = optional_string(jp, "operation");
      if (auto it = jp.find("nested"); it != jp.end() && !it->is_null()) {
        p.nested = std::make_shared<const WorkflowGraph>(workflow_from_json(*it));
      }
      w.processors.push_back(std::move(p));
    }
    for (const auto& jl : field(j, "links")) {
      DataLink l;
      const Json& src = field(jl, "source");
      const Json& snk = field(jl, "sink");
      l.source_processor = optional_string(src, "processor");
      l.source_port = src.value("port", "");
      l.sink_processor = optional_string(snk, "processor");
      l.sink_port = snk.value("port", "");
      l.inferred = jl.value("inferred", false);
      w.links.push_back(std::move(l));
    }
    w.input_ports = j.value("inputs", std::vector<std::string>{});
    w.output_ports = j.value("outputs", std::vector<std::string>{});
    return w;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("bad workflow json: ") + e.what());
  }
}

Json to_json(const ServiceDescription& d) {
  Json fragments = Json::array();
  for (const auto& f : d.fragments) {
    fragments.push_back(Json{{"kind", std::string(to_string(f.kind))}, {"text", f.text}, {"source", f.source_id}});
  }
  return Json{{"workflow", d.workflow_id},
              {"processor", d.processor_name},
              {"fragments", std::move(fragments)},
              {"assembled", d.assembled},
              {"name_only", d.name_only()}};
}

ServiceDescription description_from_json(const Json& j) {
  try {
    ServiceDescription d;
    d.workflow_id = field(j, "workflow").get<std::string>();
    d.processor_name = field(j, "processor").get<std::string>();
    for (const auto& jf : field(j, "fragments")) {
      const auto kind = fragment_kind_from_string(field(jf, "kind").get<std::string>());
      if (!kind) throw Error(ErrorCode::InvalidArgument, "unknown fragment kind");
      d.fragments.push_back(Fragment{*kind, field(jf, "text").get<std::string>(), jf.value("source", "")});
    }
    d.assembled = field(j, "assembled").get<std::string>();
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("bad description json: ") + e.what());
  }
}

Json to_json(const HarvestLogEntry& e) {
  return Json{{"workflow", e.workflow_id}, {"processor", e.processor}, {"source", e.source_id}, {"outcome", e.outcome}};
}

Json annotation_line(const std::string& workflow_id, const std::string& processor, const Annotation& a) {
  return Json{{"workflow", workflow_id},
              {"processor", processor},
              {"class_uri", a.class_uri},
              {"ontology", a.ontology_id},
              {"matched_text", a.matched_text},
              {"span", Json::array({a.first_token, a.last_token})}};
}

AnnotationLine annotation_from_line(const Json& j) {
  try {
    AnnotationLine line;
    line.workflow_id = field(j, "workflow").get<std::string>();
    line.processor = field(j, "processor").get<std::string>();
    line.annotation.class_uri = field(j, "class_uri").get<std::string>();
    line.annotation.ontology_id = field(j, "ontology").get<std::string>();
    line.annotation.matched_text = j.value("matched_text", "");
    const Json& span = field(j, "span");
    if (!span.is_array() || span.size() != 2) throw Error(ErrorCode::InvalidArgument, "span must be [first, last]");
    line.annotation.first_token = span[0].get<size_t>();
    line.annotation.last_token = span[1].get<size_t>();
    return line;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("bad annotation line: ") + e.what());
  }
}

Json to_json(const FilterVerdict& v) {
  Json fields = Json::array();
  for (auto f : v.matched_fields) fields.push_back(std::string(to_string(f)));
  return Json{{"workflow", v.workflow_id},
              {"relevant", v.relevant},
              {"matched_terms", v.matched_terms},
              {"matched_fields", std::move(fields)}};
}

Json to_json(const CompositionStats& s) {
  Json per_category = Json::object();
  for (auto c : kAllCategories) {
    auto it = s.per_category.find(c);
    per_category[std::string(to_string(c))] = it == s.per_category.end() ? 0 : it->second;
  }
  Json per_format = Json::object();
  for (const auto& [format, ratio] : s.per_format_ratio) {
    per_format[std::string(to_string(format))] =
        Json{{"workflows", ratio.workflows}, {"mean_shims", ratio.mean_shims}, {"mean_non_shims", ratio.mean_non_shims}};
  }
  return Json{{"workflows", s.workflows},
              {"total", s.total},
              {"shims", s.shims},
              {"non_shims", s.non_shims},
              {"other", s.other},
              {"shim_fraction", s.shim_fraction()},
              {"per_category", std::move(per_category)},
              {"per_format", std::move(per_format)}};
}

Json to_json(const Histogram& h) {
  Json bins = Json::array();
  for (const auto& [lower, count] : h.bins) bins.push_back(Json{{"lower", lower}, {"count", count}});
  return bins;
}

Json to_json(const ICReport& r) {
  Json summary{{"annotations", r.summary.annotations},
               {"annotations_scored", r.summary.annotations_scored},
               {"annotations_dedup", r.summary.annotations_dedup},
               {"annotations_dedup_scored", r.summary.annotations_dedup_scored},
               {"mean_annotation_ic", optional_value(r.summary.mean_annotation_ic)},
               {"mean_annotation_ic_dedup", optional_value(r.summary.mean_annotation_ic_dedup)},
               {"services", r.summary.services},
               {"services_scored", r.summary.services_scored},
               {"mean_service_ic_excluding_unscored", optional_value(r.summary.mean_service_ic_excluding_unscored)},
               {"mean_service_ic_including_unscored", optional_value(r.summary.mean_service_ic_including_unscored)},
               {"workflows", r.summary.workflows},
               {"workflows_scored", r.summary.workflows_scored},
               {"mean_workflow_ic", optional_value(r.summary.mean_workflow_ic)}};

  Json annotations = Json::array();
  for (const auto& sa : r.per_annotation) {
    Json line = annotation_line(sa.workflow_id, sa.processor, sa.annotation);
    line["ic"] = optional_value(sa.annotation.ic);
    annotations.push_back(std::move(line));
  }
  Json services = Json::array();
  for (const auto& s : r.per_service) {
    services.push_back(
        Json{{"workflow", s.workflow_id}, {"processor", s.processor}, {"ic", s.ic}, {"scored", s.scored}});
  }
  Json workflows = Json::array();
  for (const auto& w : r.per_workflow) {
    workflows.push_back(Json{{"workflow", w.workflow_id},
                             {"ic", optional_value(w.ic)},
                             {"ic_including_unscored", w.ic_including_unscored},
                             {"services", w.services},
                             {"scored_services", w.scored_services}});
  }
  Json ontologies = Json::object();
  for (const auto& [id, o] : r.per_ontology) {
    ontologies[id] = Json{{"mean_ic", o.mean_ic},
                          {"min_ic", o.min_ic},
                          {"annotation_count", o.annotation_count},
                          {"scored_count", o.scored_count},
                          {"distinct_terms", o.distinct_terms}};
  }
  Json histograms = Json::object();
  for (const auto& [name, h] : r.histograms) histograms[name] = to_json(h);

  return Json{{"metric", Json{{"name", to_string(r.metric)}, {"zhou_k", r.metric.zhou_k}}},
              {"summary", std::move(summary)},
              {"per_annotation", std::move(annotations)},
              {"per_service", std::move(services)},
              {"per_workflow", std::move(workflows)},
              {"per_ontology", std::move(ontologies)},
              {"histograms", std::move(histograms)}};
}

Json to_json(const GoldComparison& g) {
  return Json{{"entities", g.entities},
              {"pairs", g.pairs},
              {"unknown_terms", g.unknown_terms},
              {"unscorable_terms", g.unscorable_terms},
              {"scored_entities", g.scored_entities},
              {"mean_annotation_ic", optional_value(g.mean_annotation_ic)},
              {"mean_entity_ic_excluding_unscored", optional_value(g.mean_entity_ic_excluding_unscored)},
              {"mean_entity_ic_including_unscored", optional_value(g.mean_entity_ic_including_unscored)},
              {"annotation_histogram", to_json(g.annotation_histogram)},
              {"entity_histogram", to_json(g.entity_histogram)}};
}

std::string histogram_csv(const Histogram& h) {
  std::string out = "bin,count\n";
  char buf[64];
  for (const auto& [lower, count] : h.bins) {
    std::snprintf(buf, sizeof buf, "%.2f,%zu\n", lower, count);
    out += buf;
  }
  return out;
}

std::string to_jsonl(const std::vector<Json>& lines) {
  std::string out;
  for (const auto& j : lines) {
    out += j.dump(-1, ' ', false, Json::error_handler_t::replace);
    out += '\n';
  }
  return out;
}

std::vector<Json> parse_jsonl(std::string_view text) {
  std::vector<Json> out;
  size_t pos = 0;
  size_t line_no = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      out.push_back(Json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::InvalidArgument, "jsonl line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::string pretty(const Json& j) {
  return j.dump(2, ' ', false, Json::error_handler_t::replace) + "\n";
}

}  // namespace wfsem::json
