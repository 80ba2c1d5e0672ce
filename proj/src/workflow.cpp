// SPDX-License-Identifier: Apache-2.0
#include "wfsem/workflow.hpp"

#include <algorithm>
#include <set>

#include "wfsem/error.hpp"
#include "wfsem/text.hpp"
#include "wfsem/xml.hpp"

namespace wfsem {

std::string_view to_string(Format format) {
  return format == Format::Scufl ? "scufl" : "t2flow";
}

std::optional<Format> format_from_string(std::string_view name) {
  const std::string lower = to_lower(name);
  if (lower == "scufl") return Format::Scufl;
  if (lower == "t2flow") return Format::T2flow;
  return std::nullopt;
}

std::string_view to_string(ProcessorCategory category) {
  switch (category) {
    case ProcessorCategory::XmlSplitter: return "XmlSplitter";
    case ProcessorCategory::SpreadsheetImport: return "SpreadsheetImport";
    case ProcessorCategory::StringConstant: return "StringConstant";
    case ProcessorCategory::Beanshell: return "Beanshell";
    case ProcessorCategory::LocalService: return "LocalService";
    case ProcessorCategory::Xpath: return "Xpath";
    case ProcessorCategory::Wsdl: return "Wsdl";
    case ProcessorCategory::Rest: return "Rest";
    case ProcessorCategory::BioMoby: return "BioMoby";
    case ProcessorCategory::BioMart: return "BioMart";
    case ProcessorCategory::Soaplab: return "Soaplab";
    case ProcessorCategory::Rshell: return "Rshell";
    case ProcessorCategory::NestedWorkflow: return "NestedWorkflow";
    case ProcessorCategory::Other: return "Other";
  }
  return "Other";
}

std::optional<ProcessorCategory> category_from_string(std::string_view name) {
  for (auto c : kAllCategories) {
    if (to_lower(to_string(c)) == to_lower(name)) return c;
  }
  return std::nullopt;
}

bool Processor::operator==(const Processor& other) const {
  if (name != other.name || category != other.category || kind != other.kind ||
      embedded_description != other.embedded_description || endpoint != other.endpoint ||
      operation_name != other.operation_name) {
    return false;
  }
  if (static_cast<bool>(nested) != static_cast<bool>(other.nested)) return false;
  return !nested || *nested == *other.nested;
}

const Processor* WorkflowGraph::find(std::string_view name) const {
  for (const auto& p : processors) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

bool WorkflowGraph::operator==(const WorkflowGraph& other) const {
  return id == other.id && title == other.title && description == other.description &&
         tags == other.tags && format == other.format && processors == other.processors &&
         links == other.links && input_ports == other.input_ports &&
         output_ports == other.output_ports;
}

bool isomorphic(const WorkflowGraph& a, const WorkflowGraph& b) {
  if (a.format != b.format || a.input_ports != b.input_ports || a.output_ports != b.output_ports) {
    return false;
  }
  auto processor_set = [](const WorkflowGraph& w) {
    std::set<std::pair<std::string, ProcessorCategory>> out;
    for (const auto& p : w.processors) out.emplace(p.name, p.category);
    return out;
  };
  auto link_set = [](const WorkflowGraph& w) {
    std::set<std::tuple<std::optional<std::string>, std::string, std::optional<std::string>, std::string>> out;
    for (const auto& l : w.links) out.emplace(l.source_processor, l.source_port, l.sink_processor, l.sink_port);
    return out;
  };
  if (processor_set(a) != processor_set(b) || link_set(a) != link_set(b)) return false;
  for (const auto& p : a.processors) {
    const Processor* q = b.find(p.name);
    if (static_cast<bool>(p.nested) != static_cast<bool>(q->nested)) return false;
    if (p.nested && !isomorphic(*p.nested, *q->nested)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Category table

namespace {

constexpr std::string_view kT2Prefix = "net.sf.taverna.t2.activities.";

struct DefaultKind {
  Format format;
  std::string_view kind;
  ProcessorCategory category;
};

constexpr DefaultKind kDefaultKinds[] = {
    {Format::Scufl, "xmlsplitter", ProcessorCategory::XmlSplitter},
    {Format::Scufl, "spreadsheetimport", ProcessorCategory::SpreadsheetImport},
    {Format::Scufl, "stringconstant", ProcessorCategory::StringConstant},
    {Format::Scufl, "beanshell", ProcessorCategory::Beanshell},
    {Format::Scufl, "local", ProcessorCategory::LocalService},
    {Format::Scufl, "xpath", ProcessorCategory::Xpath},
    {Format::Scufl, "arbitrarywsdl", ProcessorCategory::Wsdl},
    {Format::Scufl, "wsdl", ProcessorCategory::Wsdl},
    {Format::Scufl, "rest", ProcessorCategory::Rest},
    {Format::Scufl, "biomobywsdl", ProcessorCategory::BioMoby},
    {Format::Scufl, "biomobyobject", ProcessorCategory::BioMoby},
    {Format::Scufl, "biomobyparser", ProcessorCategory::BioMoby},
    {Format::Scufl, "biomart", ProcessorCategory::BioMart},
    {Format::Scufl, "soaplabwsdl", ProcessorCategory::Soaplab},
    {Format::Scufl, "rshell", ProcessorCategory::Rshell},
    {Format::Scufl, "workflow", ProcessorCategory::NestedWorkflow},
    {Format::T2flow, "XMLInputSplitterActivity", ProcessorCategory::XmlSplitter},
    {Format::T2flow, "XMLOutputSplitterActivity", ProcessorCategory::XmlSplitter},
    {Format::T2flow, "SpreadsheetImportActivity", ProcessorCategory::SpreadsheetImport},
    {Format::T2flow, "StringConstantActivity", ProcessorCategory::StringConstant},
    {Format::T2flow, "BeanshellActivity", ProcessorCategory::Beanshell},
    {Format::T2flow, "LocalworkerActivity", ProcessorCategory::LocalService},
    {Format::T2flow, "XPathActivity", ProcessorCategory::Xpath},
    {Format::T2flow, "WSDLActivity", ProcessorCategory::Wsdl},
    {Format::T2flow, "RESTActivity", ProcessorCategory::Rest},
    {Format::T2flow, "BiomobyActivity", ProcessorCategory::BioMoby},
    {Format::T2flow, "BiomobyObjectActivity", ProcessorCategory::BioMoby},
    {Format::T2flow, "MobyParseDatatypeActivity", ProcessorCategory::BioMoby},
    {Format::T2flow, "BiomartActivity", ProcessorCategory::BioMart},
    {Format::T2flow, "SoaplabActivity", ProcessorCategory::Soaplab},
    {Format::T2flow, "RshellActivity", ProcessorCategory::Rshell},
    {Format::T2flow, "DataflowActivity", ProcessorCategory::NestedWorkflow},
};

// Full class names written for processors that have no recorded kind.
std::string t2flow_class_for(ProcessorCategory category) {
  switch (category) {
    case ProcessorCategory::XmlSplitter: return std::string(kT2Prefix) + "wsdl.xmlsplitter.XMLInputSplitterActivity";
    case ProcessorCategory::SpreadsheetImport: return std::string(kT2Prefix) + "spreadsheet.SpreadsheetImportActivity";
    case ProcessorCategory::StringConstant: return std::string(kT2Prefix) + "stringconstant.StringConstantActivity";
    case ProcessorCategory::Beanshell: return std::string(kT2Prefix) + "beanshell.BeanshellActivity";
    case ProcessorCategory::LocalService: return std::string(kT2Prefix) + "localworker.LocalworkerActivity";
    case ProcessorCategory::Xpath: return std::string(kT2Prefix) + "xpath.XPathActivity";
    case ProcessorCategory::Wsdl: return std::string(kT2Prefix) + "wsdl.WSDLActivity";
    case ProcessorCategory::Rest: return std::string(kT2Prefix) + "rest.RESTActivity";
    case ProcessorCategory::BioMoby: return std::string(kT2Prefix) + "biomoby.BiomobyActivity";
    case ProcessorCategory::BioMart: return std::string(kT2Prefix) + "biomart.BiomartActivity";
    case ProcessorCategory::Soaplab: return std::string(kT2Prefix) + "soaplab.SoaplabActivity";
    case ProcessorCategory::Rshell: return std::string(kT2Prefix) + "rshell.RshellActivity";
    case ProcessorCategory::NestedWorkflow: return std::string(kT2Prefix) + "dataflow.DataflowActivity";
    case ProcessorCategory::Other: return "";
  }
  return "";
}

std::string simple_class_name(std::string_view kind) {
  const auto dot = kind.rfind('.');
  return std::string(dot == std::string_view::npos ? kind : kind.substr(dot + 1));
}

}  // namespace

const CategoryTable& CategoryTable::defaults() {
  static const CategoryTable table = [] {
    CategoryTable t;
    for (const auto& d : kDefaultKinds) t.set(d.format, std::string(d.kind), d.category);
    return t;
  }();
  return table;
}

ProcessorCategory CategoryTable::lookup(Format format, std::string_view kind) const {
  const std::string key = format == Format::T2flow ? simple_class_name(kind) : to_lower(kind);
  const auto it = entries_.find({format, key});
  return it == entries_.end() ? ProcessorCategory::Other : it->second;
}

void CategoryTable::set(Format format, std::string kind, ProcessorCategory category) {
  std::string key = format == Format::T2flow ? simple_class_name(kind) : to_lower(kind);
  entries_[{format, std::move(key)}] = category;
}

std::string CategoryTable::canonical_kind(Format format, ProcessorCategory category) const {
  if (format == Format::T2flow) {
    std::string cls = t2flow_class_for(category);
    if (!cls.empty() && lookup(format, cls) == category) return cls;
  }
  for (const auto& [key, value] : entries_) {
    if (key.first == format && value == category) return key.second;
  }
  return "";
}

// ---------------------------------------------------------------------------
// Validation

void validate(const WorkflowGraph& workflow) {
  std::set<std::string> names;
  for (const auto& p : workflow.processors) {
    if (!names.insert(p.name).second) {
      throw Error(ErrorCode::DuplicateProcessor, "processor '" + p.name + "' declared twice in " + workflow.id);
    }
    if ((p.category == ProcessorCategory::NestedWorkflow) != static_cast<bool>(p.nested)) {
      throw Error(ErrorCode::InvalidArgument, "processor '" + p.name + "': nested graph must be present iff NestedWorkflow");
    }
  }
  const std::set<std::string> inputs(workflow.input_ports.begin(), workflow.input_ports.end());
  const std::set<std::string> outputs(workflow.output_ports.begin(), workflow.output_ports.end());
  std::set<std::tuple<std::optional<std::string>, std::string, std::optional<std::string>, std::string>> seen;
  for (const auto& l : workflow.links) {
    if (l.source_processor) {
      if (!names.count(*l.source_processor)) {
        throw Error(ErrorCode::DanglingLink, "link source references missing processor '" + *l.source_processor + "'");
      }
    } else if (!inputs.count(l.source_port)) {
      throw Error(ErrorCode::DanglingLink, "link source references missing workflow input '" + l.source_port + "'");
    }
    if (l.sink_processor) {
      if (!names.count(*l.sink_processor)) {
        throw Error(ErrorCode::DanglingLink, "link sink references missing processor '" + *l.sink_processor + "'");
      }
    } else if (!outputs.count(l.sink_port)) {
      throw Error(ErrorCode::DanglingLink, "link sink references missing workflow output '" + l.sink_port + "'");
    }
    if (l.source_processor && l.sink_processor && *l.source_processor == *l.sink_processor) {
      throw Error(ErrorCode::InvalidArgument, "self-loop on processor '" + *l.source_processor + "'");
    }
    if (!seen.insert({l.source_processor, l.source_port, l.sink_processor, l.sink_port}).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate link in " + workflow.id);
    }
  }
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

// Drops self-loops and repeated tuples, then checks the remaining invariants.
void finish_graph(WorkflowGraph& w) {
  std::set<std::tuple<std::optional<std::string>, std::string, std::optional<std::string>, std::string>> seen;
  std::vector<DataLink> kept;
  for (auto& l : w.links) {
    if (l.source_processor && l.sink_processor && *l.source_processor == *l.sink_processor) continue;
    if (!seen.insert({l.source_processor, l.source_port, l.sink_processor, l.sink_port}).second) continue;
    kept.push_back(std::move(l));
  }
  w.links = std::move(kept);
  validate(w);
}

std::optional<std::string> non_empty(std::string text) {
  text = normalize_space(text);
  if (text.empty()) return std::nullopt;
  return text;
}

void add_unique(std::vector<std::string>& ports, std::string name) {
  if (std::find(ports.begin(), ports.end(), name) == ports.end()) ports.push_back(std::move(name));
}

// "processor:port" or a bare workflow port name.
std::pair<std::optional<std::string>, std::string> split_scufl_endpoint(const std::string& ref) {
  const auto colon = ref.find(':');
  if (colon == std::string::npos) return {std::nullopt, ref};
  return {ref.substr(0, colon), ref.substr(colon + 1)};
}

constexpr std::string_view kScuflNonWorker[] = {"description", "defaults", "iterationstrategy",
                                                "alternate", "mergemode"};

WorkflowGraph parse_scufl(const xml::Element& root, const CategoryTable& table, int depth);

Processor parse_scufl_processor(const xml::Element& el, const CategoryTable& table, int depth) {
  Processor p;
  p.name = el.attribute("name").value_or("");
  p.embedded_description = non_empty(el.child_text("description"));
  const xml::Element* worker = nullptr;
  for (const auto& c : el.children) {
    if (std::find(std::begin(kScuflNonWorker), std::end(kScuflNonWorker), c.name) == std::end(kScuflNonWorker)) {
      worker = &c;
      break;
    }
  }
  if (!worker) return p;
  p.kind = worker->name;
  p.category = table.lookup(Format::Scufl, worker->name);
  if (worker->name == "arbitrarywsdl" || worker->name == "wsdl") {
    p.endpoint = non_empty(worker->child_text("wsdl"));
    p.operation_name = non_empty(worker->child_text("operation"));
  } else if (worker->name == "soaplabwsdl") {
    p.endpoint = non_empty(worker->text);
  } else if (worker->name.rfind("biomoby", 0) == 0) {
    p.endpoint = non_empty(worker->child_text("mobyEndpoint"));
    p.operation_name = non_empty(worker->child_text("serviceName"));
  } else if (worker->name == "rest") {
    p.endpoint = non_empty(worker->child_text("url"));
  }
  if (p.category == ProcessorCategory::NestedWorkflow) {
    const xml::Element* inner = worker->child("scufl");
    auto nested = inner ? parse_scufl(*inner, table, depth + 1) : WorkflowGraph{};
    nested.format = Format::Scufl;
    nested.id = p.name;
    if (!p.embedded_description && !nested.description.empty()) p.embedded_description = nested.description;
    p.nested = std::make_shared<const WorkflowGraph>(std::move(nested));
  }
  return p;
}

WorkflowGraph parse_scufl(const xml::Element& root, const CategoryTable& table, int depth) {
  if (depth > 64) throw Error(ErrorCode::MalformedXml, "nested workflows too deep");
  WorkflowGraph w;
  w.format = Format::Scufl;
  if (const xml::Element* d = root.child("workflowdescription")) {
    w.title = normalize_space(d->attribute("title").value_or(""));
    w.description = normalize_space(d->text);
  }
  for (const xml::Element* s : root.children_named("source")) add_unique(w.input_ports, s->attribute("name").value_or(""));
  for (const xml::Element* s : root.children_named("sink")) add_unique(w.output_ports, s->attribute("name").value_or(""));
  for (const xml::Element* p : root.children_named("processor")) {
    w.processors.push_back(parse_scufl_processor(*p, table, depth));
  }
  for (const xml::Element* l : root.children_named("link")) {
    DataLink link;
    std::tie(link.source_processor, link.source_port) = split_scufl_endpoint(l->attribute("source").value_or(""));
    std::tie(link.sink_processor, link.sink_port) = split_scufl_endpoint(l->attribute("sink").value_or(""));
    w.links.push_back(std::move(link));
  }
  finish_graph(w);
  return w;
}

std::string annotation_text(const xml::Element& dataflow, std::string_view bean_suffix) {
  const xml::Element* annotations = dataflow.child("annotations");
  if (!annotations) return "";
  std::vector<const xml::Element*> beans;
  annotations->collect_descendants("annotationBean", beans);
  for (const xml::Element* b : beans) {
    const std::string cls = b->attribute("class").value_or("");
    if (cls.size() >= bean_suffix.size() && cls.compare(cls.size() - bean_suffix.size(), bean_suffix.size(), bean_suffix) == 0) {
      return normalize_space(b->child_text("text"));
    }
  }
  return "";
}

struct T2flowContext {
  const CategoryTable& table;
  std::map<std::string, const xml::Element*> dataflows;
  std::set<std::string> active;  // recursion guard on dataflow ids
};

WorkflowGraph parse_dataflow(const xml::Element& df, T2flowContext& ctx);

Processor parse_t2flow_processor(const xml::Element& el, T2flowContext& ctx) {
  Processor p;
  p.name = el.child_text("name");
  const xml::Element* activities = el.child("activities");
  const xml::Element* activity = activities ? activities->child("activity") : nullptr;
  if (!activity) return p;
  p.kind = activity->child_text("class");
  p.category = ctx.table.lookup(Format::T2flow, p.kind);
  const xml::Element* config = activity->child("configBean");
  const xml::Element* bean = config && !config->children.empty() ? &config->children.front() : nullptr;
  if (bean && p.category != ProcessorCategory::NestedWorkflow) {
    p.endpoint = non_empty(bean->child_text("wsdl"));
    if (!p.endpoint) p.endpoint = non_empty(bean->child_text("urlSignature"));
    if (!p.endpoint) p.endpoint = non_empty(bean->child_text("mobyEndpoint"));
    if (!p.endpoint) p.endpoint = non_empty(bean->child_text("endpoint"));
    p.operation_name = non_empty(bean->child_text("operation"));
    if (!p.operation_name) p.operation_name = non_empty(bean->child_text("serviceName"));
  }
  if (p.category == ProcessorCategory::NestedWorkflow) {
    WorkflowGraph nested;
    nested.format = Format::T2flow;
    const std::string ref = bean ? bean->attribute("ref").value_or("") : "";
    const auto it = ctx.dataflows.find(ref);
    if (it != ctx.dataflows.end()) {
      if (ctx.active.count(ref)) throw Error(ErrorCode::MalformedXml, "nested dataflow '" + ref + "' references itself");
      nested = parse_dataflow(*it->second, ctx);
      p.embedded_description = non_empty(nested.description);
    }
    nested.id = p.name;
    p.nested = std::make_shared<const WorkflowGraph>(std::move(nested));
  }
  return p;
}

std::pair<std::optional<std::string>, std::string> t2flow_endpoint(const xml::Element* el) {
  if (!el) return {std::nullopt, ""};
  const std::string type = el->attribute("type").value_or("processor");
  std::string port = el->child_text("port");
  if (type == "dataflow") return {std::nullopt, port};
  // merge constructs may omit the port
  if (port.empty()) port = "merged";
  return {el->child_text("processor"), port};
}

WorkflowGraph parse_dataflow(const xml::Element& df, T2flowContext& ctx) {
  const std::string id = df.attribute("id").value_or("");
  ctx.active.insert(id);
  WorkflowGraph w;
  w.format = Format::T2flow;
  w.title = annotation_text(df, "DescriptiveTitle");
  if (w.title.empty()) w.title = normalize_space(df.child_text("name"));
  w.description = annotation_text(df, "FreeTextDescription");
  if (const xml::Element* in = df.child("inputPorts")) {
    for (const xml::Element* port : in->children_named("port")) add_unique(w.input_ports, port->child_text("name"));
  }
  if (const xml::Element* out = df.child("outputPorts")) {
    for (const xml::Element* port : out->children_named("port")) add_unique(w.output_ports, port->child_text("name"));
  }
  if (const xml::Element* procs = df.child("processors")) {
    for (const xml::Element* p : procs->children_named("processor")) w.processors.push_back(parse_t2flow_processor(*p, ctx));
  }
  if (const xml::Element* links = df.child("datalinks")) {
    for (const xml::Element* l : links->children_named("datalink")) {
      DataLink link;
      std::tie(link.source_processor, link.source_port) = t2flow_endpoint(l->child("source"));
      std::tie(link.sink_processor, link.sink_port) = t2flow_endpoint(l->child("sink"));
      w.links.push_back(std::move(link));
    }
  }
  finish_graph(w);
  ctx.active.erase(id);
  return w;
}

WorkflowGraph parse_t2flow(const xml::Element& root, const CategoryTable& table) {
  T2flowContext ctx{table, {}, {}};
  const xml::Element* top = nullptr;
  for (const xml::Element* df : root.children_named("dataflow")) {
    ctx.dataflows[df->attribute("id").value_or("")] = df;
    if (!top && df->attribute("role").value_or("") == "top") top = df;
  }
  if (!top) {
    const auto all = root.children_named("dataflow");
    if (all.empty()) throw Error(ErrorCode::MalformedXml, "t2flow document has no dataflow");
    top = all.front();
  }
  return parse_dataflow(*top, ctx);
}

}  // namespace

WorkflowGraph parse_workflow(std::string_view document, std::optional<Format> format_hint,
                             const CategoryTable& table) {
  const xml::Element root = xml::parse(document);
  Format format;
  if (format_hint) {
    format = *format_hint;
  } else if (root.ns.find("xscufl") != std::string::npos) {
    format = Format::Scufl;
  } else if (root.ns.find("/t2flow") != std::string::npos) {
    format = Format::T2flow;
  } else {
    throw Error(ErrorCode::UnknownDialect, "root namespace '" + root.ns + "' is neither scufl nor t2flow");
  }
  if (format == Format::Scufl) {
    if (root.name != "scufl") throw Error(ErrorCode::UnknownDialect, "expected <scufl> root, got <" + root.name + ">");
    return parse_scufl(root, table, 0);
  }
  if (root.name != "workflow") throw Error(ErrorCode::UnknownDialect, "expected <workflow> root, got <" + root.name + ">");
  return parse_t2flow(root, table);
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

std::string scufl_ref(const std::optional<std::string>& processor, const std::string& port) {
  return processor ? *processor + ":" + port : port;
}

void write_scufl(xml::Writer& out, const WorkflowGraph& w, const CategoryTable& table, bool with_ns) {
  xml::Attributes root_attrs;
  if (with_ns) root_attrs.emplace_back("xmlns:s", std::string(kScuflNamespace));
  root_attrs.emplace_back("version", "0.2");
  root_attrs.emplace_back("log", "0");
  out.open("s:scufl", root_attrs);
  out.leaf("s:workflowdescription", w.description, {{"lsid", ""}, {"author", ""}, {"title", w.title}});
  for (const auto& p : w.processors) {
    out.open("s:processor", {{"name", p.name}});
    if (p.embedded_description) out.leaf("s:description", *p.embedded_description);
    std::string kind = p.kind.empty() || p.category != table.lookup(Format::Scufl, p.kind)
                           ? table.canonical_kind(Format::Scufl, p.category)
                           : p.kind;
    if (!kind.empty()) {
      const std::string element = "s:" + kind;
      if (p.category == ProcessorCategory::NestedWorkflow) {
        out.open(element);
        write_scufl(out, p.nested ? *p.nested : WorkflowGraph{}, table, false);
        out.close();
      } else if (kind == "arbitrarywsdl" || kind == "wsdl") {
        out.open(element);
        out.leaf("s:wsdl", p.endpoint.value_or(""));
        if (p.operation_name) out.leaf("s:operation", *p.operation_name);
        out.close();
      } else if (kind == "soaplabwsdl") {
        out.leaf(element, p.endpoint.value_or(""));
      } else if (kind.rfind("biomoby", 0) == 0) {
        out.open(element);
        if (p.endpoint) out.leaf("s:mobyEndpoint", *p.endpoint);
        if (p.operation_name) out.leaf("s:serviceName", *p.operation_name);
        out.close();
      } else if (kind == "rest" && p.endpoint) {
        out.open(element);
        out.leaf("s:url", *p.endpoint);
        out.close();
      } else {
        out.empty(element);
      }
    }
    out.close();
  }
  for (const auto& l : w.links) {
    out.empty("s:link", {{"source", scufl_ref(l.source_processor, l.source_port)},
                         {"sink", scufl_ref(l.sink_processor, l.sink_port)}});
  }
  for (const auto& port : w.input_ports) out.empty("s:source", {{"name", port}});
  for (const auto& port : w.output_ports) out.empty("s:sink", {{"name", port}});
  out.close();
}

void write_annotation(xml::Writer& out, std::string_view bean, const std::string& text) {
  out.open("annotation_chain", {{"encoding", "xstream"}});
  out.open("net.sf.taverna.t2.annotation.AnnotationChainImpl", {{"xmlns", ""}});
  out.open("annotationAssertions");
  out.open("net.sf.taverna.t2.annotation.AnnotationAssertionImpl");
  out.open("annotationBean", {{"class", "net.sf.taverna.t2.annotation.annotationbeans." + std::string(bean)}});
  out.leaf("text", text);
  out.close();
  out.close();
  out.close();
  out.close();
  out.close();
}

void write_t2flow_endpoint(xml::Writer& out, std::string_view element,
                           const std::optional<std::string>& processor, const std::string& port) {
  out.open(element, {{"type", processor ? "processor" : "dataflow"}});
  if (processor) out.leaf("processor", *processor);
  out.leaf("port", port);
  out.close();
}

// Dataflow ids: df0 is the top graph, pending[i] becomes df(i+1).
void write_dataflow(xml::Writer& out, const WorkflowGraph& w, const CategoryTable& table, std::string_view role,
                    size_t id, std::vector<const WorkflowGraph*>& pending) {
  out.open("dataflow", {{"id", "df" + std::to_string(id)}, {"role", std::string(role)}});
  out.leaf("name", w.title.empty() ? w.id : w.title);
  out.open("inputPorts");
  for (const auto& port : w.input_ports) {
    out.open("port");
    out.leaf("name", port);
    out.leaf("depth", "0");
    out.leaf("granularDepth", "0");
    out.close();
  }
  out.close();
  out.open("outputPorts");
  for (const auto& port : w.output_ports) {
    out.open("port");
    out.leaf("name", port);
    out.close();
  }
  out.close();
  out.open("processors");
  for (const auto& p : w.processors) {
    out.open("processor");
    out.leaf("name", p.name);
    std::string cls = p.kind.empty() || p.category != table.lookup(Format::T2flow, p.kind)
                          ? table.canonical_kind(Format::T2flow, p.category)
                          : p.kind;
    out.open("activities");
    if (!cls.empty() || p.category == ProcessorCategory::Other) {
      out.open("activity");
      out.leaf("class", cls);
      if (p.category == ProcessorCategory::NestedWorkflow) {
        const std::string ref = "df" + std::to_string(pending.size() + 1);
        pending.push_back(p.nested.get());
        out.open("configBean", {{"encoding", "dataflow"}});
        out.empty("dataflow", {{"ref", ref}});
        out.close();
      } else {
        out.open("configBean", {{"encoding", "xstream"}});
        out.open(cls.empty() ? "bean" : cls + "ConfigurationBean", {{"xmlns", ""}});
        if (p.endpoint) {
          if (p.category == ProcessorCategory::Rest) {
            out.leaf("urlSignature", *p.endpoint);
          } else if (p.category == ProcessorCategory::BioMoby) {
            out.leaf("mobyEndpoint", *p.endpoint);
          } else if (p.category == ProcessorCategory::Soaplab) {
            out.leaf("endpoint", *p.endpoint);
          } else {
            out.leaf("wsdl", *p.endpoint);
          }
        }
        if (p.operation_name) {
          out.leaf(p.category == ProcessorCategory::BioMoby ? "serviceName" : "operation", *p.operation_name);
        }
        out.close();
        out.close();
      }
      out.close();
    }
    out.close();
    out.close();
  }
  out.close();
  out.open("datalinks");
  for (const auto& l : w.links) {
    out.open("datalink");
    write_t2flow_endpoint(out, "sink", l.sink_processor, l.sink_port);
    write_t2flow_endpoint(out, "source", l.source_processor, l.source_port);
    out.close();
  }
  out.close();
  out.open("annotations");
  if (!w.title.empty()) write_annotation(out, "DescriptiveTitle", w.title);
  if (!w.description.empty()) write_annotation(out, "FreeTextDescription", w.description);
  out.close();
  out.close();
}

}  // namespace

std::string serialize_workflow(const WorkflowGraph& workflow, const CategoryTable& table) {
  xml::Writer out;
  if (workflow.format == Format::Scufl) {
    write_scufl(out, workflow, table, true);
    return out.finish();
  }
  out.open("workflow", {{"xmlns", std::string(kT2flowNamespace)}, {"version", "1"}, {"producedBy", "wfsem"}});
  std::vector<const WorkflowGraph*> pending;
  write_dataflow(out, workflow, table, "top", 0, pending);
  const WorkflowGraph empty_graph{};
  for (size_t i = 0; i < pending.size(); ++i) {
    const WorkflowGraph* nested = pending[i] ? pending[i] : &empty_graph;
    write_dataflow(out, *nested, table, "nested", i + 1, pending);
  }
  return out.finish();
}

}  // namespace wfsem
