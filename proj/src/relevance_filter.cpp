// SPDX-License-Identifier: Apache-2.0
#include "wfsem/relevance_filter.hpp"

#include <algorithm>
#include <sstream>

#include "wfsem/error.hpp"
#include "wfsem/text.hpp"

namespace wfsem {

namespace {

std::string fold(std::string_view term) { return to_lower(normalize_space(term)); }

std::set<std::string> fold_all(const std::set<std::string>& terms) {
  std::set<std::string> out;
  for (const auto& t : terms) {
    std::string f = fold(t);
    if (!f.empty()) out.insert(std::move(f));
  }
  return out;
}

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

TermList::TermList(std::set<std::string> base, std::set<std::string> removed, std::set<std::string> added)
    : base_(fold_all(base)), removed_(fold_all(removed)), added_(fold_all(added)) {
  rebuild();
}

TermList TermList::parse(std::string_view text) {
  TermList list;
  std::set<std::string>* section = nullptr;
  size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t == "[base]") {
      section = &list.base_;
    } else if (t == "[removed]") {
      section = &list.removed_;
    } else if (t == "[added]") {
      section = &list.added_;
    } else if (t.front() == '[') {
      throw Error(ErrorCode::ConfigError, "term list: unknown section " + t + " at line " + std::to_string(line_no));
    } else if (!section) {
      throw Error(ErrorCode::ConfigError, "term list: term outside a section at line " + std::to_string(line_no));
    } else {
      section->insert(fold(t));
    }
  }
  list.rebuild();
  return list;
}

std::string TermList::to_text() const {
  std::string out;
  auto section = [&](std::string_view name, const std::set<std::string>& terms) {
    out += name;
    out += '\n';
    for (const auto& t : terms) out += t + '\n';
  };
  section("[base]", base_);
  section("[removed]", removed_);
  section("[added]", added_);
  return out;
}

void TermList::add_base(std::string term) {
  base_.insert(fold(term));
  rebuild();
}

void TermList::add(std::string term) {
  added_.insert(fold(term));
  rebuild();
}

void TermList::remove(std::string term) {
  removed_.insert(fold(term));
  rebuild();
}

void TermList::rebuild() {
  effective_.clear();
  std::set_difference(base_.begin(), base_.end(), removed_.begin(), removed_.end(),
                      std::inserter(effective_, effective_.end()));
  effective_.insert(added_.begin(), added_.end());
}

std::string_view to_string(MatchField field) {
  switch (field) {
    case MatchField::Title: return "title";
    case MatchField::Description: return "description";
    case MatchField::Tags: return "tags";
  }
  return "";
}

std::set<std::string> definition_search(const OntologyStore& store, std::string_view namespace_name,
                                        std::string_view query, bool include_subclasses) {
  const auto query_tokens = tokenize(query);
  bool namespace_found = false;
  std::set<std::string> hits;
  std::vector<std::pair<std::string, std::string>> frontier;  // (ontology, uri)
  for (const auto& id : store.ontology_ids()) {
    for (const auto& c : store.classes(id)) {
      if (c.namespace_name != namespace_name) continue;
      namespace_found = true;
      if (c.obsolete) continue;
      if (contains_token_sequence(tokenize(c.definition), query_tokens) && hits.insert(c.uri).second) {
        frontier.emplace_back(id, c.uri);
      }
    }
  }
  if (!namespace_found) {
    throw Error(ErrorCode::UnknownNamespace, "no loaded class belongs to namespace '" + std::string(namespace_name) + "'");
  }
  if (include_subclasses) {
    while (!frontier.empty()) {
      auto [id, uri] = std::move(frontier.back());
      frontier.pop_back();
      for (auto& child : store.children(id, uri)) {
        if (hits.insert(child).second) frontier.emplace_back(id, std::move(child));
      }
    }
  }
  return hits;
}

std::set<std::string> labels_of(const OntologyStore& store, const std::set<std::string>& uris) {
  std::set<std::string> out;
  for (const auto& uri : uris) {
    for (const OntologyClass* c : store.find_all(uri)) {
      if (!c->label.empty()) out.insert(fold(c->label));
    }
  }
  return out;
}

RelevanceFilter::RelevanceFilter(const TermList& terms) {
  if (terms.effective().empty()) throw Error(ErrorCode::InvalidArgument, "effective term list is empty");
  for (const auto& t : terms.effective()) {
    auto tokens = tokenize(t);
    if (!tokens.empty()) terms_.emplace_back(t, std::move(tokens));
  }
}

FilterVerdict RelevanceFilter::apply(const WorkflowGraph& workflow) const {
  FilterVerdict verdict;
  verdict.workflow_id = workflow.id;
  const auto title = tokenize(workflow.title);
  const auto description = tokenize(workflow.description);
  std::vector<std::vector<std::string>> tags;
  for (const auto& tag : workflow.tags) tags.push_back(tokenize(tag));
  for (const auto& [term, tokens] : terms_) {
    bool hit = false;
    if (contains_token_sequence(title, tokens)) {
      verdict.matched_fields.insert(MatchField::Title);
      hit = true;
    }
    if (contains_token_sequence(description, tokens)) {
      verdict.matched_fields.insert(MatchField::Description);
      hit = true;
    }
    for (const auto& tag : tags) {
      if (contains_token_sequence(tag, tokens)) {
        verdict.matched_fields.insert(MatchField::Tags);
        hit = true;
      }
    }
    if (hit) verdict.matched_terms.insert(term);
  }
  verdict.relevant = !verdict.matched_terms.empty();
  return verdict;
}

FilterVerdict apply_filter(const WorkflowGraph& workflow, const TermList& terms) {
  return RelevanceFilter(terms).apply(workflow);
}

std::string verdicts_csv(const std::vector<FilterVerdict>& verdicts) {
  std::string out = "workflow_id,relevant,matched_terms\n";
  for (const auto& v : verdicts) {
    out += csv_field(v.workflow_id) + ',' + (v.relevant ? "true" : "false") + ',' +
           csv_field(join(std::vector<std::string>(v.matched_terms.begin(), v.matched_terms.end()), "|")) + '\n';
  }
  return out;
}

}  // namespace wfsem
