// SPDX-License-Identifier: Apache-2.0
#include "wfsem/annotator.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "wfsem/error.hpp"
#include "wfsem/text.hpp"

namespace wfsem {

PrecedenceOrder::PrecedenceOrder(std::vector<std::string> ids) : ids_(std::move(ids)) {
  std::set<std::string> seen;
  for (const auto& id : ids_) {
    if (!seen.insert(id).second) throw Error(ErrorCode::InvalidArgument, "ontology '" + id + "' listed twice in precedence order");
  }
}

size_t PrecedenceOrder::rank(std::string_view ontology_id) const {
  const auto it = std::find(ids_.begin(), ids_.end(), ontology_id);
  return static_cast<size_t>(it - ids_.begin());
}

Dictionary::Dictionary(const OntologyStore& store, DictionaryOptions options) {
  if (!store.frozen()) throw Error(ErrorCode::InvalidArgument, "dictionary needs a frozen ontology store");
  nodes_.emplace_back();
  for (const auto& id : store.ontology_ids()) {
    std::vector<const OntologyClass*> ordered;
    for (const auto& c : store.classes(id)) {
      if (!c.obsolete) ordered.push_back(&c);
    }
    std::sort(ordered.begin(), ordered.end(), [](auto* a, auto* b) { return a->uri < b->uri; });
    for (const OntologyClass* c : ordered) {
      std::vector<std::string> surfaces;
      if (!c->label.empty()) surfaces.push_back(c->label);
      surfaces.insert(surfaces.end(), c->synonyms.begin(), c->synonyms.end());
      surfaces.insert(surfaces.end(), c->identifiers.begin(), c->identifiers.end());
      for (const auto& s : surfaces) {
        auto tokens = tokenize(s);
        if (tokens.empty()) continue;
        if (tokens.size() == 1 && tokens.front().size() < options.min_single_token_length) continue;
        insert(tokens, {c->uri, id, s});
      }
    }
  }
}

void Dictionary::insert(const std::vector<std::string>& tokens, Entry entry) {
  size_t at = 0;
  for (const auto& t : tokens) {
    const auto it = nodes_[at].next.find(t);
    if (it != nodes_[at].next.end()) {
      at = it->second;
      continue;
    }
    const size_t fresh = nodes_.size();
    nodes_[at].next.emplace(t, fresh);
    nodes_.emplace_back();
    at = fresh;
  }
  auto& entries = nodes_[at].entries;
  // a class reached through several surfaces is kept once (first surface wins)
  for (const auto& e : entries) {
    if (e.class_uri == entry.class_uri && e.ontology_id == entry.ontology_id) return;
  }
  entries.push_back(std::move(entry));
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return std::tie(a.ontology_id, a.class_uri) < std::tie(b.ontology_id, b.class_uri);
  });
  ++entry_count_;
}

std::vector<Annotation> Dictionary::annotate(std::string_view text) const {
  const auto tokens = tokenize(text);
  std::vector<Annotation> out;
  size_t i = 0;
  while (i < tokens.size()) {
    size_t at = 0;
    size_t best_node = 0;
    size_t best_len = 0;
    for (size_t j = i; j < tokens.size(); ++j) {
      const auto it = nodes_[at].next.find(tokens[j]);
      if (it == nodes_[at].next.end()) break;
      at = it->second;
      if (!nodes_[at].entries.empty()) {
        best_node = at;
        best_len = j - i + 1;
      }
    }
    if (best_len == 0) {
      ++i;
      continue;
    }
    for (const auto& e : nodes_[best_node].entries) {
      out.push_back({e.class_uri, e.ontology_id, e.surface, i, i + best_len - 1, std::nullopt});
    }
    i += best_len;
  }
  return out;
}

std::vector<Annotation> annotate(std::string_view text, const Dictionary& dictionary) {
  return dictionary.annotate(text);
}

std::vector<Annotation> dedup(const std::vector<Annotation>& annotations, const PrecedenceOrder& order) {
  std::map<std::string, size_t> best;  // uri -> index of the winning copy
  for (size_t i = 0; i < annotations.size(); ++i) {
    const auto& a = annotations[i];
    const auto it = best.find(a.class_uri);
    if (it == best.end()) {
      best.emplace(a.class_uri, i);
      continue;
    }
    const auto& current = annotations[it->second];
    const auto key = std::make_tuple(order.rank(a.ontology_id), std::string_view(a.ontology_id));
    const auto current_key = std::make_tuple(order.rank(current.ontology_id), std::string_view(current.ontology_id));
    if (key < current_key) it->second = i;
  }
  std::vector<char> keep(annotations.size(), 0);
  for (const auto& [uri, index] : best) keep[index] = 1;
  std::vector<Annotation> out;
  for (size_t i = 0; i < annotations.size(); ++i) {
    if (keep[i]) out.push_back(annotations[i]);
  }
  return out;
}

}  // namespace wfsem
