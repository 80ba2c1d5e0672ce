// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wfsem {

struct OntologyClass {
  std::string uri;
  std::string ontology_id;
  std::string label;
  std::set<std::string> synonyms;
  std::set<std::string> identifiers;
  std::string definition;
  // Sub-ontology branch (OBO `namespace:` tag), e.g. EDAM "topic".
  std::string namespace_name;
  bool obsolete = false;
  std::set<std::string> parents;

  bool operator==(const OntologyClass&) const = default;
};

enum class OntologyFormat { OboFlat, TermTable };

std::optional<OntologyFormat> ontology_format_from_string(std::string_view name);

// Per-class taxonomy statistics, only defined for in-hierarchy classes.
struct ClassStats {
  size_t hypo = 0;       // descendants, excluding self
  size_t depth = 0;      // longest root-to-class path, root = 1
  size_t leaves = 0;     // leaves among descendants-or-self
  size_t subsumers = 0;  // ancestors-or-self

  bool operator==(const ClassStats&) const = default;
};

struct OntologyStats {
  size_t node_count = 0;  // non-obsolete, in-hierarchy classes
  size_t leaf_count = 0;
  size_t max_depth = 0;
  double sanchez_max_raw = 0.0;
};

struct ICMetric {
  enum class Kind { Seco, Zhou, Sanchez };
  Kind kind = Kind::Zhou;
  double zhou_k = 0.5;

  static ICMetric seco() { return {Kind::Seco, 0.5}; }
  static ICMetric zhou(double k = 0.5) { return {Kind::Zhou, k}; }
  static ICMetric sanchez() { return {Kind::Sanchez, 0.5}; }
};

std::string to_string(const ICMetric& metric);
// "seco", "zhou", "sanchez"; throws InvalidArgument.
ICMetric metric_from_string(std::string_view name, double zhou_k = 0.5);

std::string expand_obo_id(std::string_view id);

// Loaded ontologies keyed by id. The same URI may live in several
// ontologies; each copy keeps its own statistics.
//
// Build phase: load()/add_class() then freeze(). After freeze() the store is
// read-only and safe for concurrent readers. Loading again un-freezes it.
class OntologyStore {
public:
  // Parses `document` and registers its classes under `ontology_id` (the OBO
  // `ontology:` header is used when the id is empty). Throws
  // MalformedOntology.
  std::string load(std::string_view document, OntologyFormat format, std::string ontology_id);
  void add_class(OntologyClass cls);

  // Computes graph statistics; throws CycleDetected naming a class on the cycle.
  void freeze();
  bool frozen() const { return frozen_; }

  std::vector<std::string> ontology_ids() const;
  bool has_ontology(std::string_view ontology_id) const;
  const std::vector<OntologyClass>& classes(std::string_view ontology_id) const;
  const OntologyClass* find(std::string_view ontology_id, std::string_view uri) const;
  // Every copy of `uri`, ordered by ontology id.
  std::vector<const OntologyClass*> find_all(std::string_view uri) const;

  // nullopt for obsolete or hierarchy-detached classes.
  std::optional<ClassStats> class_stats(std::string_view ontology_id, std::string_view uri) const;
  const OntologyStats& ontology_stats(std::string_view ontology_id) const;

  // Value in [0,1]; nullopt when the class is unscorable. Throws
  // UnknownClass.
  std::optional<double> information_content(std::string_view ontology_id, std::string_view uri,
                                            const ICMetric& metric) const;

  // Direct subclasses (non-obsolete) within one ontology.
  std::vector<std::string> children(std::string_view ontology_id, std::string_view uri) const;

private:
  struct Ontology {
    std::vector<OntologyClass> classes;
    std::unordered_map<std::string, size_t> index;
    std::vector<std::optional<ClassStats>> stats;
    std::vector<std::vector<size_t>> children;  // non-obsolete resolved edges
    OntologyStats summary;
  };

  const Ontology& ontology(std::string_view ontology_id) const;
  void require_frozen() const;
  static void compute(Ontology& o);

  std::map<std::string, Ontology, std::less<>> ontologies_;
  bool frozen_ = false;
};

}  // namespace wfsem
