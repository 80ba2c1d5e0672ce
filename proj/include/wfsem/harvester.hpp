// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wfsem/http.hpp"
#include "wfsem/workflow.hpp"

namespace wfsem {

// Declaration order is assembly order.
enum class FragmentKind { ServiceName, ServiceDescription, OperationName, OperationDescription };

inline constexpr std::array kAllFragmentKinds = {FragmentKind::ServiceName, FragmentKind::ServiceDescription,
                                                 FragmentKind::OperationName, FragmentKind::OperationDescription};

std::string_view to_string(FragmentKind kind);
std::optional<FragmentKind> fragment_kind_from_string(std::string_view name);

struct Fragment {
  FragmentKind kind;
  std::string text;
  std::string source_id;

  bool operator==(const Fragment&) const = default;
};

struct ServiceDescription {
  std::string workflow_id;
  std::string processor_name;
  std::vector<Fragment> fragments;  // ordered by kind, at most one per kind
  std::string assembled;

  const Fragment* fragment(FragmentKind kind) const;
  bool name_only() const { return fragments.size() == 1 && fragments.front().kind == FragmentKind::ServiceName; }

  bool operator==(const ServiceDescription&) const = default;
};

// Fragment texts in kind order, space-separated.
std::string assemble(const std::vector<Fragment>& fragments);

enum class SourceKind {
  EmbeddedWorkflow,
  WsdlDocument,
  BioMobyRegistry,
  CatalogueEndpointSearch,
  CatalogueFreeSearch,
  Fixture,
};

std::string_view to_string(SourceKind kind);
std::optional<SourceKind> source_kind_from_string(std::string_view name);

// `locator` is a URL template for remote kinds and a directory for Fixture.
// Placeholders: {endpoint}, {name}, {operation}, and {key}, which is tried
// with each configured lookup key in turn.
struct MetadataSource {
  std::string id;
  SourceKind kind = SourceKind::Fixture;
  std::string locator;
};

enum class LookupKey { Endpoint, Name };

std::optional<LookupKey> lookup_key_from_string(std::string_view name);

struct HarvestOptions {
  std::vector<LookupKey> keys = {LookupKey::Endpoint, LookupKey::Name};
  std::chrono::milliseconds timeout{10000};
};

struct HarvestLogEntry {
  std::string workflow_id;
  std::string processor;
  std::string source_id;
  std::string outcome;  // "ok: kinds", "empty", "skipped: why", "error: what"
};

struct HarvestResult {
  ServiceDescription description;
  std::vector<HarvestLogEntry> log;
};

using FragmentMap = std::map<FragmentKind, std::string>;

// WSDL 1.1 or 2.0. With `operation_name` only that operation contributes;
// otherwise all operation names/docs are joined in document order.
// Throws MalformedXml.
FragmentMap parse_wsdl_metadata(std::string_view document,
                                const std::optional<std::string>& operation_name = std::nullopt);

// Lenient readers for the historical registry payloads; missing elements
// simply yield no fragment. Throw MalformedXml.
FragmentMap parse_moby_registry(std::string_view document);
FragmentMap parse_catalogue_response(std::string_view document,
                                     const std::optional<std::string>& operation_name = std::nullopt);

// Walks an ordered chain of metadata sources. Stateless per call and safe
// to share across threads when the fetcher is.
class Harvester {
public:
  // Throws InvalidArgument on an empty chain or duplicate source ids.
  Harvester(std::vector<MetadataSource> chain, const HttpFetcher& http, HarvestOptions options = {});

  HarvestResult harvest(const std::string& workflow_id, const Processor& processor) const;

  const std::vector<MetadataSource>& chain() const { return chain_; }

private:
  FragmentMap query(const MetadataSource& source, const Processor& processor, std::string& outcome) const;

  std::vector<MetadataSource> chain_;
  const HttpFetcher& http_;
  HarvestOptions options_;
};

HarvestResult harvest(const std::string& workflow_id, const Processor& processor,
                      const std::vector<MetadataSource>& chain, const HttpFetcher& http);

}  // namespace wfsem
