// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace wfsem {

enum class Format { Scufl, T2flow };

std::string_view to_string(Format format);
std::optional<Format> format_from_string(std::string_view name);

enum class ProcessorCategory {
  XmlSplitter,
  SpreadsheetImport,
  StringConstant,
  Beanshell,
  LocalService,
  Xpath,
  Wsdl,
  Rest,
  BioMoby,
  BioMart,
  Soaplab,
  Rshell,
  NestedWorkflow,
  Other,
};

inline constexpr std::array kAllCategories = {
    ProcessorCategory::XmlSplitter, ProcessorCategory::SpreadsheetImport,
    ProcessorCategory::StringConstant, ProcessorCategory::Beanshell,
    ProcessorCategory::LocalService, ProcessorCategory::Xpath,
    ProcessorCategory::Wsdl, ProcessorCategory::Rest,
    ProcessorCategory::BioMoby, ProcessorCategory::BioMart,
    ProcessorCategory::Soaplab, ProcessorCategory::Rshell,
    ProcessorCategory::NestedWorkflow, ProcessorCategory::Other,
};

// Data-transformation steps with no scientific meaning.
constexpr bool is_shim(ProcessorCategory c) {
  switch (c) {
    case ProcessorCategory::XmlSplitter:
    case ProcessorCategory::SpreadsheetImport:
    case ProcessorCategory::StringConstant:
    case ProcessorCategory::Beanshell:
    case ProcessorCategory::LocalService:
    case ProcessorCategory::Xpath:
      return true;
    default:
      return false;
  }
}

// Other is neither shim nor non-shim.
constexpr bool is_non_shim(ProcessorCategory c) {
  return !is_shim(c) && c != ProcessorCategory::Other;
}

std::string_view to_string(ProcessorCategory category);
std::optional<ProcessorCategory> category_from_string(std::string_view name);

struct WorkflowGraph;

struct Processor {
  std::string name;
  ProcessorCategory category = ProcessorCategory::Other;
  // Dialect element (scufl) or activity class (t2flow) the category came from.
  std::string kind;
  std::optional<std::string> embedded_description;
  std::optional<std::string> endpoint;
  std::optional<std::string> operation_name;
  // Present iff category == NestedWorkflow.
  std::shared_ptr<const WorkflowGraph> nested;

  bool operator==(const Processor& other) const;
};

struct DataLink {
  std::optional<std::string> source_processor;  // absent: workflow input port
  std::string source_port;
  std::optional<std::string> sink_processor;  // absent: workflow output port
  std::string sink_port;
  bool inferred = false;  // internal only, never serialized to XML

  auto key() const { return std::tie(source_processor, source_port, sink_processor, sink_port); }
  bool operator==(const DataLink& other) const { return key() == other.key() && inferred == other.inferred; }
};

struct WorkflowGraph {
  std::string id;
  std::string title;
  std::string description;
  std::vector<std::string> tags;
  Format format = Format::Scufl;
  std::vector<Processor> processors;
  std::vector<DataLink> links;
  std::vector<std::string> input_ports;
  std::vector<std::string> output_ports;

  const Processor* find(std::string_view name) const;

  bool operator==(const WorkflowGraph& other) const;
};

// Structural equality on (processors, categories, links, ports); ignores
// metadata, descriptions, endpoints and the inferred flag.
bool isomorphic(const WorkflowGraph& a, const WorkflowGraph& b);

// Maps dialect processor kinds to categories. T2flow activity classes are
// matched on their simple (last dotted segment) name.
class CategoryTable {
public:
  static const CategoryTable& defaults();

  ProcessorCategory lookup(Format format, std::string_view kind) const;
  void set(Format format, std::string kind, ProcessorCategory category);
  // Kind written when serializing a processor that carries none.
  std::string canonical_kind(Format format, ProcessorCategory category) const;

  const std::map<std::pair<Format, std::string>, ProcessorCategory>& entries() const { return entries_; }

private:
  std::map<std::pair<Format, std::string>, ProcessorCategory> entries_;
};

inline constexpr std::string_view kScuflNamespace = "http://org.embl.ebi.escience/xscufl/0.1alpha";
inline constexpr std::string_view kT2flowNamespace = "http://taverna.sf.net/2008/xml/t2flow";

// Throws Error with MalformedXml, UnknownDialect, DanglingLink or
// DuplicateProcessor.
WorkflowGraph parse_workflow(std::string_view document,
                             std::optional<Format> format_hint = std::nullopt,
                             const CategoryTable& table = CategoryTable::defaults());

std::string serialize_workflow(const WorkflowGraph& workflow,
                               const CategoryTable& table = CategoryTable::defaults());

// Checks the link/processor invariants; throws DanglingLink,
// DuplicateProcessor or InvalidArgument.
void validate(const WorkflowGraph& workflow);

}  // namespace wfsem
