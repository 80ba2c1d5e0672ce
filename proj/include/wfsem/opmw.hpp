// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "wfsem/annotator.hpp"
#include "wfsem/workflow.hpp"

namespace wfsem {

namespace opmw {
inline constexpr std::string_view kNamespace = "http://www.opmw.org/ontology/";
inline constexpr std::string_view kProcessTemplate = "http://www.opmw.org/ontology/WorkflowTemplateProcess";
inline constexpr std::string_view kTemplate = "http://www.opmw.org/ontology/template";
inline constexpr std::string_view kUses = "http://www.opmw.org/ontology/uses";
inline constexpr std::string_view kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
}  // namespace opmw

struct RdfTriple {
  std::string subject;
  std::string predicate;
  std::string object;
  bool literal = false;

  auto operator<=>(const RdfTriple&) const = default;
};

// Lowercase, [a-z0-9-] only, hyphen runs collapsed, never empty.
std::string slug(std::string_view name);

struct UriMintingPolicy {
  std::string numeric_base = "http://www.myexperiment.org/workflows/";
  std::string namespace_base = "http://example.org/wfsem/workflows/";

  std::string workflow_uri(const WorkflowGraph& workflow) const;
  // Distinct URIs for every processor; collisions get -2, -3, ... suffixes
  // in processor order.
  std::map<std::string, std::string> processor_uris(const WorkflowGraph& workflow) const;
};

struct OpmwDocument {
  std::vector<RdfTriple> triples;  // emission order
  std::string turtle;
};

// One subject per processor of a pruned workflow, typed as an OPMW process
// template and as every annotation class, linked to its workflow and to each
// distinct upstream processor. Throws UnprunedInput when a shim is present.
OpmwDocument emit_opmw(const WorkflowGraph& workflow,
                       const std::map<std::string, std::vector<Annotation>>& annotations,
                       const UriMintingPolicy& policy = {});

std::string to_ntriples(const std::vector<RdfTriple>& triples);

}  // namespace wfsem
