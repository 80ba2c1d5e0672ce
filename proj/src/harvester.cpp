// SPDX-License-Identifier: Apache-2.0
#include "wfsem/harvester.hpp"

#include <json.hpp>

#include <filesystem>
#include <set>

#include "wfsem/error.hpp"
#include "wfsem/text.hpp"
#include "wfsem/xml.hpp"

namespace wfsem {

std::string_view to_string(FragmentKind kind) {
  switch (kind) {
    case FragmentKind::ServiceName: return "service_name";
    case FragmentKind::ServiceDescription: return "service_description";
    case FragmentKind::OperationName: return "operation_name";
    case FragmentKind::OperationDescription: return "operation_description";
  }
  return "";
}

std::optional<FragmentKind> fragment_kind_from_string(std::string_view name) {
  for (auto k : kAllFragmentKinds) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

std::string_view to_string(SourceKind kind) {
  switch (kind) {
    case SourceKind::EmbeddedWorkflow: return "EmbeddedWorkflow";
    case SourceKind::WsdlDocument: return "WsdlDocument";
    case SourceKind::BioMobyRegistry: return "BioMobyRegistry";
    case SourceKind::CatalogueEndpointSearch: return "CatalogueEndpointSearch";
    case SourceKind::CatalogueFreeSearch: return "CatalogueFreeSearch";
    case SourceKind::Fixture: return "Fixture";
  }
  return "";
}

std::optional<SourceKind> source_kind_from_string(std::string_view name) {
  for (auto k : {SourceKind::EmbeddedWorkflow, SourceKind::WsdlDocument, SourceKind::BioMobyRegistry,
                 SourceKind::CatalogueEndpointSearch, SourceKind::CatalogueFreeSearch, SourceKind::Fixture}) {
    if (to_lower(to_string(k)) == to_lower(name)) return k;
  }
  return std::nullopt;
}

std::optional<LookupKey> lookup_key_from_string(std::string_view name) {
  const std::string lower = to_lower(trim(name));
  if (lower == "endpoint") return LookupKey::Endpoint;
  if (lower == "name") return LookupKey::Name;
  return std::nullopt;
}

const Fragment* ServiceDescription::fragment(FragmentKind kind) const {
  for (const auto& f : fragments) {
    if (f.kind == kind) return &f;
  }
  return nullptr;
}

std::string assemble(const std::vector<Fragment>& fragments) {
  std::vector<std::string> parts;
  for (auto kind : kAllFragmentKinds) {
    for (const auto& f : fragments) {
      if (f.kind == kind && !f.text.empty()) parts.push_back(f.text);
    }
  }
  return join(parts, " ");
}

// ---------------------------------------------------------------------------
// Metadata document readers

namespace {

void put(FragmentMap& map, FragmentKind kind, std::string_view text) {
  std::string normalized = normalize_space(text);
  if (!normalized.empty()) map.emplace(kind, std::move(normalized));
}

std::string documentation_of(const xml::Element& el) {
  return normalize_space(el.child_text("documentation"));
}

}  // namespace

FragmentMap parse_wsdl_metadata(std::string_view document, const std::optional<std::string>& operation_name) {
  const xml::Element root = xml::parse(document);
  FragmentMap out;
  const xml::Element* service = root.child("service");
  if (service) {
    put(out, FragmentKind::ServiceName, service->attribute("name").value_or(""));
    put(out, FragmentKind::ServiceDescription, documentation_of(*service));
  }
  if (!out.count(FragmentKind::ServiceDescription)) put(out, FragmentKind::ServiceDescription, documentation_of(root));

  // Abstract operations (portType / interface) first, binding operations
  // fill in missing documentation.
  std::vector<std::string> names;
  std::map<std::string, std::string> docs;
  auto collect = [&](std::string_view container) {
    for (const xml::Element* c : root.children_named(container)) {
      for (const xml::Element* op : c->children_named("operation")) {
        const std::string name = normalize_space(op->attribute("name").value_or(""));
        if (name.empty()) continue;
        if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(name);
        const std::string doc = documentation_of(*op);
        if (!doc.empty() && docs[name].empty()) docs[name] = doc;
      }
    }
  };
  collect("portType");
  collect("interface");
  collect("binding");

  if (operation_name) {
    if (std::find(names.begin(), names.end(), *operation_name) != names.end()) {
      put(out, FragmentKind::OperationName, *operation_name);
      put(out, FragmentKind::OperationDescription, docs[*operation_name]);
    }
    return out;
  }
  std::vector<std::string> doc_list;
  for (const auto& n : names) {
    if (!docs[n].empty()) doc_list.push_back(docs[n]);
  }
  put(out, FragmentKind::OperationName, join(names, " "));
  put(out, FragmentKind::OperationDescription, join(doc_list, " "));
  return out;
}

FragmentMap parse_moby_registry(std::string_view document) {
  const xml::Element root = xml::parse(document);
  const xml::Element* service = root.name == "Service" ? &root : root.find_descendant("Service");
  FragmentMap out;
  if (!service) return out;
  std::string name = service->attribute("serviceName").value_or("");
  if (name.empty()) name = service->child_text("serviceName");
  put(out, FragmentKind::ServiceName, name);
  std::string description = service->child_text("Description");
  if (description.empty()) description = service->child_text("description");
  put(out, FragmentKind::ServiceDescription, description);
  return out;
}

FragmentMap parse_catalogue_response(std::string_view document, const std::optional<std::string>& operation_name) {
  const xml::Element root = xml::parse(document);
  const xml::Element* service = root.name == "service" ? &root : root.find_descendant("service");
  FragmentMap out;
  if (!service) return out;
  put(out, FragmentKind::ServiceName, service->child_text("name"));
  put(out, FragmentKind::ServiceDescription, service->child_text("description"));

  std::vector<const xml::Element*> operations;
  for (std::string_view tag : {"soapOperation", "restMethod", "operation"}) {
    service->collect_descendants(tag, operations);
  }
  auto op_name = [](const xml::Element* op) {
    std::string name = op->child_text("name");
    return name.empty() ? op->attribute("name").value_or("") : name;
  };
  const xml::Element* chosen = nullptr;
  if (operation_name) {
    for (const xml::Element* op : operations) {
      if (op_name(op) == *operation_name) {
        chosen = op;
        break;
      }
    }
  } else if (operations.size() == 1) {
    chosen = operations.front();
  }
  if (chosen) {
    put(out, FragmentKind::OperationName, op_name(chosen));
    put(out, FragmentKind::OperationDescription, chosen->child_text("description"));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Chain traversal

namespace {

std::string percent_encode(std::string_view value) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : value) {
    if ((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' || c == '_' ||
        c == '.' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0xF]);
    }
  }
  return out;
}

std::optional<std::string> key_value(LookupKey key, const Processor& p) {
  if (key == LookupKey::Endpoint) return p.endpoint;
  return p.name;
}

// Values are percent-encoded unless the placeholder opens the template
// (a template of just "{endpoint}" is the URL itself).
std::optional<std::string> expand(const std::string& tmpl, const Processor& p, const std::optional<std::string>& key) {
  std::string out;
  size_t i = 0;
  while (i < tmpl.size()) {
    if (tmpl[i] != '{') {
      out.push_back(tmpl[i++]);
      continue;
    }
    const auto close = tmpl.find('}', i);
    if (close == std::string::npos) {
      out.append(tmpl, i);
      break;
    }
    const std::string name = tmpl.substr(i + 1, close - i - 1);
    std::optional<std::string> value;
    if (name == "endpoint") {
      value = p.endpoint;
    } else if (name == "name") {
      value = p.name;
    } else if (name == "operation") {
      value = p.operation_name;
    } else if (name == "key") {
      value = key;
    } else {
      out.append(tmpl, i, close - i + 1);
      i = close + 1;
      continue;
    }
    if (!value || value->empty()) return std::nullopt;
    out += i == 0 ? *value : percent_encode(*value);
    i = close + 1;
  }
  return out;
}

FragmentMap read_fixture_fragments(const std::filesystem::path& file) {
  const auto doc = nlohmann::json::parse(read_file(file.string()));
  FragmentMap out;
  for (auto kind : kAllFragmentKinds) {
    const auto it = doc.find(std::string(to_string(kind)));
    if (it != doc.end() && it->is_string()) put(out, kind, it->get<std::string>());
  }
  return out;
}

std::string kinds_list(const FragmentMap& map) {
  std::vector<std::string> names;
  for (const auto& [kind, text] : map) names.emplace_back(to_string(kind));
  return join(names, ",");
}

}  // namespace

Harvester::Harvester(std::vector<MetadataSource> chain, const HttpFetcher& http, HarvestOptions options)
    : chain_(std::move(chain)), http_(http), options_(std::move(options)) {
  if (chain_.empty()) throw Error(ErrorCode::InvalidArgument, "source chain is empty");
  std::set<std::string> ids;
  for (const auto& s : chain_) {
    if (!ids.insert(s.id).second) throw Error(ErrorCode::InvalidArgument, "duplicate source id '" + s.id + "'");
  }
}

FragmentMap Harvester::query(const MetadataSource& source, const Processor& p, std::string& outcome) const {
  FragmentMap result;
  switch (source.kind) {
    case SourceKind::EmbeddedWorkflow:
      put(result, FragmentKind::ServiceName, p.name);
      if (p.embedded_description) put(result, FragmentKind::ServiceDescription, *p.embedded_description);
      return result;
    case SourceKind::WsdlDocument:
      if (p.category != ProcessorCategory::Wsdl && p.category != ProcessorCategory::Soaplab) {
        outcome = "skipped: not a WSDL service";
        return result;
      }
      break;
    case SourceKind::BioMobyRegistry:
      if (p.category != ProcessorCategory::BioMoby) {
        outcome = "skipped: not a BioMoby service";
        return result;
      }
      break;
    default:
      break;
  }

  // Candidate lookups: one per configured key when the locator uses {key}.
  std::vector<std::optional<std::string>> keys;
  const std::string tmpl = source.locator.empty() && source.kind == SourceKind::WsdlDocument ? "{endpoint}" : source.locator;
  if (source.kind == SourceKind::Fixture || tmpl.find("{key}") != std::string::npos) {
    for (auto k : options_.keys) {
      if (auto v = key_value(k, p); v && !v->empty()) keys.push_back(std::move(v));
    }
  } else {
    keys.emplace_back(std::nullopt);
  }
  if (tmpl.empty() && source.kind != SourceKind::Fixture) {
    outcome = "skipped: no locator";
    return result;
  }

  std::vector<std::string> errors;
  bool attempted = false;
  for (const auto& key : keys) {
    try {
      if (source.kind == SourceKind::Fixture) {
        const auto file = std::filesystem::path(source.locator) / (sha256_hex(*key) + ".json");
        attempted = true;
        if (!std::filesystem::exists(file)) continue;
        result = read_fixture_fragments(file);
      } else {
        const auto url = expand(tmpl, p, key);
        if (!url) continue;
        attempted = true;
        const FetchResult fetched = http_.fetch(*url, options_.timeout);
        if (!fetched.ok()) {
          errors.push_back(fetched.error);
          continue;
        }
        switch (source.kind) {
          case SourceKind::WsdlDocument: result = parse_wsdl_metadata(*fetched.body, p.operation_name); break;
          case SourceKind::BioMobyRegistry: result = parse_moby_registry(*fetched.body); break;
          default: result = parse_catalogue_response(*fetched.body, p.operation_name); break;
        }
      }
    } catch (const std::exception& e) {
      errors.emplace_back(e.what());
      continue;
    }
    if (!result.empty()) return result;
  }
  if (!errors.empty()) {
    outcome = "error: " + join(errors, "; ");
  } else if (!attempted) {
    outcome = "skipped: no lookup key";
  } else {
    outcome = "empty";
  }
  return result;
}

HarvestResult Harvester::harvest(const std::string& workflow_id, const Processor& processor) const {
  HarvestResult out;
  out.description.workflow_id = workflow_id;
  out.description.processor_name = processor.name;
  FragmentMap filled;
  std::map<FragmentKind, std::string> provenance;
  for (const auto& source : chain_) {
    if (filled.size() == kAllFragmentKinds.size()) break;
    std::string outcome;
    FragmentMap got;
    try {
      got = query(source, processor, outcome);
    } catch (const std::exception& e) {
      outcome = std::string("error: ") + e.what();
    }
    FragmentMap fresh;
    for (auto& [kind, text] : got) {
      if (filled.count(kind)) continue;
      provenance[kind] = source.id;
      fresh.emplace(kind, text);
      filled.emplace(kind, std::move(text));
    }
    if (!got.empty()) outcome = fresh.empty() ? "ok: nothing new" : "ok: " + kinds_list(fresh);
    out.log.push_back({workflow_id, processor.name, source.id, outcome});
  }
  if (!filled.count(FragmentKind::ServiceName)) {
    filled.emplace(FragmentKind::ServiceName, normalize_space(processor.name));
    provenance[FragmentKind::ServiceName] = "processor";
  }
  for (auto kind : kAllFragmentKinds) {
    const auto it = filled.find(kind);
    if (it != filled.end()) out.description.fragments.push_back({kind, it->second, provenance[kind]});
  }
  out.description.assembled = assemble(out.description.fragments);
  return out;
}

HarvestResult harvest(const std::string& workflow_id, const Processor& processor,
                      const std::vector<MetadataSource>& chain, const HttpFetcher& http) {
  return Harvester(chain, http).harvest(workflow_id, processor);
}

}  // namespace wfsem
