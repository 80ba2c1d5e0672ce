// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wfsem/ontology.hpp"

namespace wfsem {

struct Annotation {
  std::string class_uri;
  std::string ontology_id;
  std::string matched_text;  // the label/synonym/identifier that matched
  size_t first_token = 0;    // inclusive token span in the description
  size_t last_token = 0;
  std::optional<double> ic;

  bool operator==(const Annotation&) const = default;
};

// Ontology ids ranked for duplicate-URI resolution, earliest wins.
class PrecedenceOrder {
public:
  PrecedenceOrder() = default;
  // Throws InvalidArgument on duplicates.
  explicit PrecedenceOrder(std::vector<std::string> ids);

  // Listed ids rank by position; unlisted ids rank after all of them.
  size_t rank(std::string_view ontology_id) const;
  const std::vector<std::string>& ids() const { return ids_; }

private:
  std::vector<std::string> ids_;
};

struct DictionaryOptions {
  // Single-token entries shorter than this many characters are dropped.
  size_t min_single_token_length = 3;
};

// Token-sequence trie over labels, synonyms and identifiers of every
// non-obsolete class in a frozen store. Immutable once built.
class Dictionary {
public:
  explicit Dictionary(const OntologyStore& store, DictionaryOptions options = {});

  struct Entry {
    std::string class_uri;
    std::string ontology_id;
    std::string surface;  // original dictionary string
  };

  // Longest/leftmost non-overlapping scan.
  std::vector<Annotation> annotate(std::string_view text) const;

  size_t entry_count() const { return entry_count_; }

private:
  struct Node {
    std::map<std::string, size_t, std::less<>> next;
    std::vector<Entry> entries;  // one per class, sorted by (ontology, uri)
  };

  void insert(const std::vector<std::string>& tokens, Entry entry);

  std::vector<Node> nodes_;
  size_t entry_count_ = 0;
};

std::vector<Annotation> annotate(std::string_view text, const Dictionary& dictionary);

// One annotation per class URI: the copy whose ontology ranks earliest
// (ties by lexicographic ontology id, then first occurrence). Output keeps
// the input order of the survivors.
std::vector<Annotation> dedup(const std::vector<Annotation>& annotations, const PrecedenceOrder& order);

}  // namespace wfsem
