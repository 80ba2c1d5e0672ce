// SPDX-License-Identifier: Apache-2.0
#include "wfsem/ontology.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wfsem/error.hpp"
#include "wfsem/text.hpp"

namespace wfsem {

std::optional<OntologyFormat> ontology_format_from_string(std::string_view name) {
  const std::string lower = to_lower(name);
  if (lower == "obo" || lower == "oboflat") return OntologyFormat::OboFlat;
  if (lower == "termtable" || lower == "csv" || lower == "table") return OntologyFormat::TermTable;
  return std::nullopt;
}

std::string to_string(const ICMetric& metric) {
  switch (metric.kind) {
    case ICMetric::Kind::Seco: return "seco";
    case ICMetric::Kind::Sanchez: return "sanchez";
    case ICMetric::Kind::Zhou: break;
  }
  std::ostringstream out;
  out << "zhou(k=" << metric.zhou_k << ")";
  return out.str();
}

ICMetric metric_from_string(std::string_view name, double zhou_k) {
  const std::string lower = to_lower(name);
  if (lower == "seco") return ICMetric::seco();
  if (lower == "sanchez") return ICMetric::sanchez();
  if (lower == "zhou") {
    if (!(zhou_k >= 0.0 && zhou_k <= 1.0)) {
      throw Error(ErrorCode::InvalidArgument, "zhou k must lie in [0,1]");
    }
    return ICMetric::zhou(zhou_k);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown IC metric '" + std::string(name) + "'");
}

std::string expand_obo_id(std::string_view id) {
  if (id.find("://") != std::string_view::npos) return std::string(id);
  std::string local(id);
  if (const auto colon = local.find(':'); colon != std::string::npos) local[colon] = '_';
  return "http://purl.obolibrary.org/obo/" + local;
}

namespace {

// ---- OBO flat file ---------------------------------------------------------

// Reads a double-quoted OBO string starting at `value`; returns its content.
std::optional<std::string> quoted(std::string_view value) {
  if (value.empty() || value.front() != '"') return std::nullopt;
  std::string out;
  for (size_t i = 1; i < value.size(); ++i) {
    const char c = value[i];
    if (c == '\\' && i + 1 < value.size()) {
      const char next = value[++i];
      out.push_back(next == 'n' ? ' ' : next);
    } else if (c == '"') {
      return out;
    } else {
      out.push_back(c);
    }
  }
  return std::nullopt;
}

// First whitespace-delimited token, dropping trailing `! comment` and modifiers.
std::string first_word(std::string_view value) {
  const std::string t = trim(value);
  const auto end = t.find_first_of(" \t!{");
  return t.substr(0, end);
}

std::vector<OntologyClass> parse_obo(std::string_view document, std::string& ontology_id) {
  std::vector<OntologyClass> classes;
  std::istringstream in{std::string(document)};
  std::string line;
  size_t line_no = 0;
  enum class Section { Header, Term, Ignored } section = Section::Header;
  std::optional<OntologyClass> current;
  size_t current_line = 0;
  auto flush = [&] {
    if (!current) return;
    if (current->uri.empty()) {
      throw Error(ErrorCode::MalformedOntology, "[Term] stanza at line " + std::to_string(current_line) + " has no id");
    }
    classes.push_back(std::move(*current));
    current.reset();
  };
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '!') continue;
    if (t.front() == '[') {
      flush();
      if (t.back() != ']') throw Error(ErrorCode::MalformedOntology, "bad stanza header at line " + std::to_string(line_no));
      if (t == "[Term]") {
        section = Section::Term;
        current.emplace();
        current_line = line_no;
      } else {
        section = Section::Ignored;
      }
      continue;
    }
    const auto colon = t.find(':');
    if (colon == std::string::npos) {
      throw Error(ErrorCode::MalformedOntology, "expected 'tag: value' at line " + std::to_string(line_no));
    }
    const std::string tag = trim(std::string_view(t).substr(0, colon));
    const std::string value = trim(std::string_view(t).substr(colon + 1));
    if (section == Section::Header) {
      if (tag == "ontology" && ontology_id.empty()) ontology_id = value;
      continue;
    }
    if (section == Section::Ignored) continue;
    OntologyClass& c = *current;
    if (tag == "id") {
      c.uri = expand_obo_id(first_word(value));
    } else if (tag == "name") {
      c.label = normalize_space(value);
    } else if (tag == "namespace") {
      c.namespace_name = value;
    } else if (tag == "def") {
      const auto text = quoted(value);
      if (!text) throw Error(ErrorCode::MalformedOntology, "unterminated def at line " + std::to_string(line_no));
      c.definition = normalize_space(*text);
    } else if (tag == "synonym") {
      const auto text = quoted(value);
      if (!text) throw Error(ErrorCode::MalformedOntology, "unterminated synonym at line " + std::to_string(line_no));
      if (!normalize_space(*text).empty()) c.synonyms.insert(normalize_space(*text));
    } else if (tag == "alt_id" || tag == "xref") {
      const std::string id = first_word(value);
      if (!id.empty()) c.identifiers.insert(id);
    } else if (tag == "is_a") {
      const std::string parent = first_word(value);
      if (parent.empty()) throw Error(ErrorCode::MalformedOntology, "empty is_a at line " + std::to_string(line_no));
      c.parents.insert(expand_obo_id(parent));
    } else if (tag == "is_obsolete") {
      c.obsolete = to_lower(value) == "true";
    }
  }
  flush();
  return classes;
}

// ---- TermTable (CSV) -------------------------------------------------------

std::vector<std::vector<std::string>> parse_csv(std::string_view document) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool row_has_content = false;
  for (size_t i = 0; i < document.size(); ++i) {
    const char c = document[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < document.size() && document[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    if (c == '"') {
      in_quotes = true;
      row_has_content = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      row_has_content = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < document.size() && document[i + 1] == '\n') ++i;
      if (row_has_content || !field.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
      }
      row.clear();
      field.clear();
      row_has_content = false;
    } else {
      field.push_back(c);
      row_has_content = true;
    }
  }
  if (in_quotes) throw Error(ErrorCode::MalformedOntology, "unterminated quoted field in term table");
  if (row_has_content || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::set<std::string> split_set(const std::string& field) {
  std::set<std::string> out;
  for (auto& part : split(field, '|')) {
    std::string v = normalize_space(part);
    if (!v.empty()) out.insert(std::move(v));
  }
  return out;
}

std::vector<OntologyClass> parse_term_table(std::string_view document) {
  static const std::vector<std::string> kHeader = {"uri", "label", "synonyms", "identifiers",
                                                   "definition", "parents", "obsolete"};
  auto rows = parse_csv(document);
  if (rows.empty()) throw Error(ErrorCode::MalformedOntology, "term table is empty");
  auto header = rows.front();
  for (auto& h : header) h = to_lower(trim(h));
  const bool with_namespace = header.size() == kHeader.size() + 1 && header.back() == "namespace";
  if (!std::equal(kHeader.begin(), kHeader.end(), header.begin(), header.begin() + std::min(header.size(), kHeader.size())) ||
      (header.size() != kHeader.size() && !with_namespace)) {
    throw Error(ErrorCode::MalformedOntology, "term table header must be " + join(kHeader, ","));
  }
  std::vector<OntologyClass> classes;
  for (size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != header.size()) {
      throw Error(ErrorCode::MalformedOntology, "term table row " + std::to_string(r + 1) + " has " +
                                                    std::to_string(row.size()) + " fields");
    }
    OntologyClass c;
    c.uri = trim(row[0]);
    if (c.uri.empty()) throw Error(ErrorCode::MalformedOntology, "term table row " + std::to_string(r + 1) + " has no uri");
    c.label = normalize_space(row[1]);
    c.synonyms = split_set(row[2]);
    c.identifiers = split_set(row[3]);
    c.definition = normalize_space(row[4]);
    c.parents = split_set(row[5]);
    const std::string obsolete = to_lower(trim(row[6]));
    if (obsolete == "true" || obsolete == "1" || obsolete == "yes") {
      c.obsolete = true;
    } else if (!obsolete.empty() && obsolete != "false" && obsolete != "0" && obsolete != "no") {
      throw Error(ErrorCode::MalformedOntology, "bad obsolete flag '" + obsolete + "' in row " + std::to_string(r + 1));
    }
    if (with_namespace) c.namespace_name = trim(row[7]);
    classes.push_back(std::move(c));
  }
  return classes;
}

}  // namespace

// ---- store -----------------------------------------------------------------

std::string OntologyStore::load(std::string_view document, OntologyFormat format, std::string ontology_id) {
  const std::string text = sanitize_utf8(document);
  std::vector<OntologyClass> classes;
  if (format == OntologyFormat::OboFlat) {
    classes = parse_obo(text, ontology_id);
  } else {
    classes = parse_term_table(text);
  }
  if (ontology_id.empty()) throw Error(ErrorCode::MalformedOntology, "ontology id missing (no id given and no 'ontology:' header)");
  ontologies_[ontology_id];  // registers empty ontologies too
  for (auto& c : classes) {
    c.ontology_id = ontology_id;
    add_class(std::move(c));
  }
  return ontology_id;
}

void OntologyStore::add_class(OntologyClass cls) {
  if (cls.ontology_id.empty() || cls.uri.empty()) {
    throw Error(ErrorCode::MalformedOntology, "class needs an ontology id and a uri");
  }
  auto& o = ontologies_[cls.ontology_id];
  if (o.index.count(cls.uri)) {
    throw Error(ErrorCode::MalformedOntology, "duplicate class " + cls.uri + " in " + cls.ontology_id);
  }
  o.index.emplace(cls.uri, o.classes.size());
  o.classes.push_back(std::move(cls));
  frozen_ = false;
}

void OntologyStore::freeze() {
  for (auto& [id, o] : ontologies_) compute(o);
  frozen_ = true;
}

void OntologyStore::compute(Ontology& o) {
  const size_t n = o.classes.size();
  o.children.assign(n, {});
  std::vector<std::vector<size_t>> parents(n);
  for (size_t i = 0; i < n; ++i) {
    if (o.classes[i].obsolete) continue;
    for (const auto& p : o.classes[i].parents) {
      const auto it = o.index.find(p);
      if (it == o.index.end() || o.classes[it->second].obsolete || it->second == i) {
        if (it != o.index.end() && it->second == i) {
          throw Error(ErrorCode::CycleDetected, "class " + o.classes[i].uri + " is its own parent");
        }
        continue;
      }
      parents[i].push_back(it->second);
      o.children[it->second].push_back(i);
    }
  }
  for (auto& c : o.children) std::sort(c.begin(), c.end());

  // Kahn's algorithm, parents before children.
  std::vector<size_t> pending(n, 0);
  std::vector<size_t> order;
  order.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    if (o.classes[i].obsolete) continue;
    pending[i] = parents[i].size();
    if (pending[i] == 0) order.push_back(i);
  }
  for (size_t head = 0; head < order.size(); ++head) {
    for (size_t child : o.children[order[head]]) {
      if (--pending[child] == 0) order.push_back(child);
    }
  }
  size_t live = 0;
  for (const auto& c : o.classes) live += c.obsolete ? 0 : 1;
  if (order.size() != live) {
    // Walk parents among unresolved nodes until one repeats: it sits on a cycle.
    size_t at = 0;
    while (o.classes[at].obsolete || pending[at] == 0) ++at;
    std::vector<char> seen(n, 0);
    while (!seen[at]) {
      seen[at] = 1;
      for (size_t p : parents[at]) {
        if (pending[p] != 0) {
          at = p;
          break;
        }
      }
    }
    throw Error(ErrorCode::CycleDetected, "is-a cycle through " + o.classes[at].uri);
  }

  // A class is in the hierarchy when it is a root or has an in-hierarchy parent.
  std::vector<char> in(n, 0);
  for (size_t i : order) {
    if (o.classes[i].parents.empty()) {
      in[i] = 1;
      continue;
    }
    for (size_t p : parents[i]) {
      if (in[p]) {
        in[i] = 1;
        break;
      }
    }
  }

  std::vector<size_t> depth(n, 0);
  OntologyStats summary;
  for (size_t i : order) {
    if (!in[i]) continue;
    ++summary.node_count;
    size_t d = 1;
    for (size_t p : parents[i]) {
      if (in[p]) d = std::max(d, depth[p] + 1);
    }
    depth[i] = d;
    summary.max_depth = std::max(summary.max_depth, d);
  }
  auto is_leaf = [&](size_t i) {
    for (size_t c : o.children[i]) {
      if (in[c]) return false;
    }
    return true;
  };
  for (size_t i = 0; i < n; ++i) {
    if (in[i] && is_leaf(i)) ++summary.leaf_count;
  }

  o.stats.assign(n, std::nullopt);
  std::vector<size_t> stamp(n, 0);
  size_t current = 0;
  std::vector<size_t> stack;
  for (size_t i = 0; i < n; ++i) {
    if (!in[i]) continue;
    ClassStats s;
    s.depth = depth[i];
    ++current;
    stack.assign(1, i);
    stamp[i] = current;
    while (!stack.empty()) {
      const size_t v = stack.back();
      stack.pop_back();
      if (v != i) ++s.hypo;
      if (is_leaf(v)) ++s.leaves;
      for (size_t c : o.children[v]) {
        if (in[c] && stamp[c] != current) {
          stamp[c] = current;
          stack.push_back(c);
        }
      }
    }
    ++current;
    stack.assign(1, i);
    stamp[i] = current;
    while (!stack.empty()) {
      const size_t v = stack.back();
      stack.pop_back();
      ++s.subsumers;
      for (size_t p : parents[v]) {
        if (in[p] && stamp[p] != current) {
          stamp[p] = current;
          stack.push_back(p);
        }
      }
    }
    o.stats[i] = s;
  }
  for (size_t i = 0; i < n; ++i) {
    if (!o.stats[i]) continue;
    const auto& s = *o.stats[i];
    const double ratio = static_cast<double>(s.leaves) / static_cast<double>(s.subsumers);
    const double raw = -std::log((ratio + 1.0) / (static_cast<double>(summary.leaf_count) + 1.0));
    summary.sanchez_max_raw = std::max(summary.sanchez_max_raw, raw);
  }
  o.summary = summary;
}

std::vector<std::string> OntologyStore::ontology_ids() const {
  std::vector<std::string> ids;
  for (const auto& [id, o] : ontologies_) ids.push_back(id);
  return ids;
}

bool OntologyStore::has_ontology(std::string_view ontology_id) const {
  return ontologies_.find(ontology_id) != ontologies_.end();
}

const OntologyStore::Ontology& OntologyStore::ontology(std::string_view ontology_id) const {
  const auto it = ontologies_.find(ontology_id);
  if (it == ontologies_.end()) throw Error(ErrorCode::UnknownClass, "ontology '" + std::string(ontology_id) + "' is not loaded");
  return it->second;
}

void OntologyStore::require_frozen() const {
  if (!frozen_) throw Error(ErrorCode::InvalidArgument, "ontology store must be frozen first");
}

const std::vector<OntologyClass>& OntologyStore::classes(std::string_view ontology_id) const {
  return ontology(ontology_id).classes;
}

const OntologyClass* OntologyStore::find(std::string_view ontology_id, std::string_view uri) const {
  const auto it = ontologies_.find(ontology_id);
  if (it == ontologies_.end()) return nullptr;
  const auto c = it->second.index.find(std::string(uri));
  return c == it->second.index.end() ? nullptr : &it->second.classes[c->second];
}

std::vector<const OntologyClass*> OntologyStore::find_all(std::string_view uri) const {
  std::vector<const OntologyClass*> out;
  for (const auto& [id, o] : ontologies_) {
    const auto c = o.index.find(std::string(uri));
    if (c != o.index.end()) out.push_back(&o.classes[c->second]);
  }
  return out;
}

std::optional<ClassStats> OntologyStore::class_stats(std::string_view ontology_id, std::string_view uri) const {
  require_frozen();
  const Ontology& o = ontology(ontology_id);
  const auto c = o.index.find(std::string(uri));
  if (c == o.index.end()) throw Error(ErrorCode::UnknownClass, std::string(uri) + " not in " + std::string(ontology_id));
  return o.stats[c->second];
}

const OntologyStats& OntologyStore::ontology_stats(std::string_view ontology_id) const {
  require_frozen();
  return ontology(ontology_id).summary;
}

std::optional<double> OntologyStore::information_content(std::string_view ontology_id, std::string_view uri,
                                                         const ICMetric& metric) const {
  const auto stats = class_stats(ontology_id, uri);
  if (!stats) return std::nullopt;
  const OntologyStats& o = ontology(ontology_id).summary;
  const double descendant_term =
      o.node_count > 1 ? std::log(static_cast<double>(stats->hypo) + 1.0) / std::log(static_cast<double>(o.node_count))
                       : 1.0;
  const double seco = 1.0 - descendant_term;
  double value = 0.0;
  switch (metric.kind) {
    case ICMetric::Kind::Seco:
      value = seco;
      break;
    case ICMetric::Kind::Zhou: {
      const double depth_term = o.max_depth > 1 ? std::log(static_cast<double>(stats->depth)) /
                                                      std::log(static_cast<double>(o.max_depth))
                                                : 0.0;
      value = metric.zhou_k * seco + (1.0 - metric.zhou_k) * depth_term;
      break;
    }
    case ICMetric::Kind::Sanchez: {
      if (o.sanchez_max_raw <= 0.0) return 0.0;
      const double ratio = static_cast<double>(stats->leaves) / static_cast<double>(stats->subsumers);
      const double raw = -std::log((ratio + 1.0) / (static_cast<double>(o.leaf_count) + 1.0));
      value = raw / o.sanchez_max_raw;
      break;
    }
  }
  return std::clamp(value, 0.0, 1.0);
}

std::vector<std::string> OntologyStore::children(std::string_view ontology_id, std::string_view uri) const {
  require_frozen();
  const Ontology& o = ontology(ontology_id);
  const auto c = o.index.find(std::string(uri));
  if (c == o.index.end()) throw Error(ErrorCode::UnknownClass, std::string(uri) + " not in " + std::string(ontology_id));
  std::vector<std::string> out;
  for (size_t child : o.children[c->second]) out.push_back(o.classes[child].uri);
  return out;
}

}  // namespace wfsem
