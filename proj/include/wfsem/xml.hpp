// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wfsem::xml {

// Read-only element tree with namespace prefixes resolved. Text content is
// whitespace-trimmed and concatenated; mixed-content ordering is not kept.
struct Element {
  std::string name;  // local name
  std::string ns;    // resolved namespace URI, empty when unqualified
  std::vector<std::pair<std::string, std::string>> attributes;  // local name -> value, xmlns excluded
  std::string text;
  std::vector<Element> children;

  const Element* child(std::string_view local) const;
  std::vector<const Element*> children_named(std::string_view local) const;
  // Text of the first child called `local`, empty when missing.
  std::string child_text(std::string_view local) const;
  std::optional<std::string> attribute(std::string_view local) const;
  // Depth-first search over descendants (not self).
  const Element* find_descendant(std::string_view local) const;
  void collect_descendants(std::string_view local, std::vector<const Element*>& out) const;
};

// Throws Error(MalformedXml). Input is sanitized to valid UTF-8 first.
Element parse(std::string_view document);

std::string escape(std::string_view text);

using Attributes = std::vector<std::pair<std::string, std::string>>;

// Minimal pretty-printing writer, two-space indentation.
class Writer {
public:
  Writer();

  void open(std::string_view name, const Attributes& attrs = {});
  void leaf(std::string_view name, std::string_view text, const Attributes& attrs = {});
  void empty(std::string_view name, const Attributes& attrs = {});
  void close();

  // Closes any open elements and returns the document.
  std::string finish();

private:
  void indent();
  void write_start(std::string_view name, const Attributes& attrs);

  std::string out_;
  std::vector<std::string> open_;
};

}  // namespace wfsem::xml
