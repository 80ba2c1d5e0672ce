// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "wfsem/ontology.hpp"
#include "wfsem/workflow.hpp"

namespace wfsem {

// Filter terms: definition-search results plus curated deltas. All terms are
// stored case-folded and whitespace-normalized.
class TermList {
public:
  TermList() = default;
  TermList(std::set<std::string> base, std::set<std::string> removed, std::set<std::string> added);

  // Plain text with "[base]", "[removed]", "[added]" sections, one term per
  // line; '#' starts a comment line. Throws ConfigError.
  static TermList parse(std::string_view text);
  std::string to_text() const;

  void add_base(std::string term);
  void add(std::string term);
  void remove(std::string term);

  const std::set<std::string>& base_terms() const { return base_; }
  const std::set<std::string>& removed() const { return removed_; }
  const std::set<std::string>& added() const { return added_; }
  // (base \ removed) U added
  const std::set<std::string>& effective() const { return effective_; }

private:
  void rebuild();

  std::set<std::string> base_;
  std::set<std::string> removed_;
  std::set<std::string> added_;
  std::set<std::string> effective_;
};

enum class MatchField { Title, Description, Tags };

std::string_view to_string(MatchField field);

struct FilterVerdict {
  std::string workflow_id;
  bool relevant = false;
  std::set<std::string> matched_terms;
  std::set<MatchField> matched_fields;
};

// Classes in `namespace_name` whose definition contains `query` as a
// whole-token sequence (case-insensitive), optionally with all their
// transitive subclasses. Returns class URIs. Throws UnknownNamespace.
std::set<std::string> definition_search(const OntologyStore& store, std::string_view namespace_name,
                                        std::string_view query, bool include_subclasses);

// Labels of the given classes, case-folded, for seeding TermList base terms.
std::set<std::string> labels_of(const OntologyStore& store, const std::set<std::string>& uris);

// Precompiled term matcher.
class RelevanceFilter {
public:
  explicit RelevanceFilter(const TermList& terms);

  FilterVerdict apply(const WorkflowGraph& workflow) const;

private:
  std::vector<std::pair<std::string, std::vector<std::string>>> terms_;
};

// Throws InvalidArgument when the effective term set is empty.
FilterVerdict apply_filter(const WorkflowGraph& workflow, const TermList& terms);

// workflow_id,relevant,matched_terms ('|'-joined)
std::string verdicts_csv(const std::vector<FilterVerdict>& verdicts);

}  // namespace wfsem
