// SPDX-License-Identifier: Apache-2.0
#include "wfsem/xml.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <map>
#include <sstream>

#include "wfsem/error.hpp"
#include "wfsem/text.hpp"

namespace wfsem::xml {

namespace pt = boost::property_tree;

namespace {

using Scope = std::map<std::string, std::string>;

std::pair<std::string, std::string> split_qname(const std::string& qname) {
  const auto colon = qname.find(':');
  if (colon == std::string::npos) return {"", qname};
  return {qname.substr(0, colon), qname.substr(colon + 1)};
}

Element convert(const std::string& qname, const pt::ptree& node, Scope scope) {
  Element element;
  std::vector<std::pair<std::string, std::string>> raw_attrs;
  if (const auto attrs = node.get_child_optional("<xmlattr>")) {
    for (const auto& [key, value] : *attrs) {
      const std::string& v = value.data();
      if (key == "xmlns") {
        scope[""] = v;
      } else if (key.rfind("xmlns:", 0) == 0) {
        scope[key.substr(6)] = v;
      } else {
        raw_attrs.emplace_back(key, v);
      }
    }
  }
  auto [prefix, local] = split_qname(qname);
  element.name = local;
  if (const auto it = scope.find(prefix); it != scope.end()) element.ns = it->second;
  for (auto& [key, value] : raw_attrs) {
    element.attributes.emplace_back(split_qname(key).second, std::move(value));
  }
  element.text = node.data();
  for (const auto& [key, child] : node) {
    if (key == "<xmlattr>" || key == "<xmlcomment>") continue;
    if (key == "<xmltext>") {
      if (!element.text.empty()) element.text += ' ';
      element.text += child.data();
      continue;
    }
    element.children.push_back(convert(key, child, scope));
  }
  return element;
}

}  // namespace

const Element* Element::child(std::string_view local) const {
  for (const auto& c : children) {
    if (c.name == local) return &c;
  }
  return nullptr;
}

std::vector<const Element*> Element::children_named(std::string_view local) const {
  std::vector<const Element*> out;
  for (const auto& c : children) {
    if (c.name == local) out.push_back(&c);
  }
  return out;
}

std::string Element::child_text(std::string_view local) const {
  const Element* c = child(local);
  return c ? c->text : std::string();
}

std::optional<std::string> Element::attribute(std::string_view local) const {
  for (const auto& [key, value] : attributes) {
    if (key == local) return value;
  }
  return std::nullopt;
}

const Element* Element::find_descendant(std::string_view local) const {
  for (const auto& c : children) {
    if (c.name == local) return &c;
    if (const Element* hit = c.find_descendant(local)) return hit;
  }
  return nullptr;
}

void Element::collect_descendants(std::string_view local, std::vector<const Element*>& out) const {
  for (const auto& c : children) {
    if (c.name == local) out.push_back(&c);
    c.collect_descendants(local, out);
  }
}

Element parse(std::string_view document) {
  std::istringstream in(sanitize_utf8(document));
  pt::ptree tree;
  try {
    pt::read_xml(in, tree, pt::xml_parser::trim_whitespace | pt::xml_parser::no_comments);
  } catch (const pt::xml_parser_error& e) {
    throw Error(ErrorCode::MalformedXml, e.message() + " at line " + std::to_string(e.line()));
  }
  for (const auto& [key, node] : tree) {
    if (key.empty() || key[0] == '<') continue;
    return convert(key, node, {});
  }
  throw Error(ErrorCode::MalformedXml, "document has no root element");
}

std::string escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

Writer::Writer() { out_ = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"; }

void Writer::indent() { out_.append(open_.size() * 2, ' '); }

void Writer::write_start(std::string_view name, const Attributes& attrs) {
  indent();
  out_ += '<';
  out_ += name;
  for (const auto& [key, value] : attrs) {
    out_ += ' ';
    out_ += key;
    out_ += "=\"";
    out_ += escape(value);
    out_ += '"';
  }
}

void Writer::open(std::string_view name, const Attributes& attrs) {
  write_start(name, attrs);
  out_ += ">\n";
  open_.emplace_back(name);
}

void Writer::leaf(std::string_view name, std::string_view text, const Attributes& attrs) {
  write_start(name, attrs);
  out_ += '>';
  out_ += escape(text);
  out_ += "</";
  out_ += name;
  out_ += ">\n";
}

void Writer::empty(std::string_view name, const Attributes& attrs) {
  write_start(name, attrs);
  out_ += " />\n";
}

void Writer::close() {
  std::string name = std::move(open_.back());
  open_.pop_back();
  indent();
  out_ += "</" + name + ">\n";
}

std::string Writer::finish() {
  while (!open_.empty()) close();
  return std::move(out_);
}

}  // namespace wfsem::xml
