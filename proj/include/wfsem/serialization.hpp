// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

#include "wfsem/annotator.hpp"
#include "wfsem/harvester.hpp"
#include "wfsem/relevance_filter.hpp"
#include "wfsem/scoring.hpp"
#include "wfsem/shim_pruner.hpp"
#include "wfsem/workflow.hpp"

// JSON forms of the stage intermediates. Object keys are sorted (plain
// nlohmann::json), so dump() output is canonical for a given value.
namespace wfsem::json {

using Json = nlohmann::json;

Json to_json(const WorkflowGraph& workflow);
// Throws InvalidArgument on missing fields or unknown enum names.
WorkflowGraph workflow_from_json(const Json& j);

Json to_json(const ServiceDescription& description);
ServiceDescription description_from_json(const Json& j);

Json to_json(const HarvestLogEntry& entry);

// {workflow, processor, class_uri, ontology, matched_text, span}
Json annotation_line(const std::string& workflow_id, const std::string& processor, const Annotation& a);
struct AnnotationLine {
  std::string workflow_id;
  std::string processor;
  Annotation annotation;
};
AnnotationLine annotation_from_line(const Json& j);

Json to_json(const FilterVerdict& verdict);
Json to_json(const CompositionStats& stats);
Json to_json(const Histogram& histogram);
Json to_json(const ICReport& report);
Json to_json(const GoldComparison& comparison);

// bin,count rows; bin is the lower bound printed with 2 decimals.
std::string histogram_csv(const Histogram& histogram);

// One compact JSON document per line.
std::string to_jsonl(const std::vector<Json>& lines);
std::vector<Json> parse_jsonl(std::string_view text);

// Two-space indented dump with a trailing newline.
std::string pretty(const Json& j);

}  // namespace wfsem::json
