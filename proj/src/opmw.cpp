// SPDX-License-Identifier: Apache-2.0
#include "wfsem/opmw.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "wfsem/error.hpp"

namespace wfsem {

std::string slug(std::string_view name) {
  std::string out;
  bool hyphen = false;
  for (unsigned char c : name) {
    const bool alnum = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || (c >= 'A' && c <= 'Z');
    if (alnum) {
      if (hyphen && !out.empty()) out.push_back('-');
      hyphen = false;
      out.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c));
    } else {
      hyphen = true;
    }
  }
  return out.empty() ? "processor" : out;
}

std::string UriMintingPolicy::workflow_uri(const WorkflowGraph& workflow) const {
  const bool numeric = !workflow.id.empty() &&
                       std::all_of(workflow.id.begin(), workflow.id.end(), [](char c) { return c >= '0' && c <= '9'; });
  return numeric ? numeric_base + workflow.id : namespace_base + slug(workflow.id);
}

std::map<std::string, std::string> UriMintingPolicy::processor_uris(const WorkflowGraph& workflow) const {
  const std::string base = workflow_uri(workflow);
  std::map<std::string, std::string> out;
  std::set<std::string> used;
  for (const auto& p : workflow.processors) {
    const std::string s = slug(p.name);
    std::string candidate = s;
    for (int n = 2; used.count(candidate); ++n) candidate = s + "-" + std::to_string(n);
    used.insert(candidate);
    out.emplace(p.name, base + "/" + candidate);
  }
  return out;
}

namespace {

std::string iri(std::string_view uri) {
  std::string out = "<";
  for (unsigned char c : uri) {
    if (c <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' || c == '}' || c == '|' || c == '^' || c == '`' ||
        c == '\\') {
      char buf[8];
      std::snprintf(buf, sizeof buf, "\\u%04X", c);
      out += buf;
    } else {
      out.push_back(static_cast<char>(c));
    }
  }
  return out + ">";
}

std::string literal(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out.push_back(c);
    }
  }
  return out + "\"";
}

std::string object_term(const RdfTriple& t) { return t.literal ? literal(t.object) : iri(t.object); }

}  // namespace

OpmwDocument emit_opmw(const WorkflowGraph& workflow, const std::map<std::string, std::vector<Annotation>>& annotations,
                       const UriMintingPolicy& policy) {
  for (const auto& p : workflow.processors) {
    if (is_shim(p.category)) {
      throw Error(ErrorCode::UnprunedInput, "shim processor '" + p.name + "' in " + workflow.id);
    }
  }
  const std::string workflow_uri = policy.workflow_uri(workflow);
  const auto uris = policy.processor_uris(workflow);

  OpmwDocument doc;
  std::string& ttl = doc.turtle;
  ttl += "@prefix opmw: <" + std::string(opmw::kNamespace) + "> .\n";
  ttl += "@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .\n";

  for (const auto& p : workflow.processors) {
    const std::string& subject = uris.at(p.name);
    std::vector<std::string> types{std::string(opmw::kProcessTemplate)};
    if (const auto it = annotations.find(p.name); it != annotations.end()) {
      for (const auto& a : it->second) {
        if (std::find(types.begin(), types.end(), a.class_uri) == types.end()) types.push_back(a.class_uri);
      }
    }
    std::vector<std::string> upstream;
    for (const auto& l : workflow.links) {
      if (!l.sink_processor || *l.sink_processor != p.name || !l.source_processor) continue;
      const std::string& u = uris.at(*l.source_processor);
      if (std::find(upstream.begin(), upstream.end(), u) == upstream.end()) upstream.push_back(u);
    }

    ttl += "\n" + iri(subject) + "\n    a opmw:WorkflowTemplateProcess";
    for (const auto& t : types) {
      doc.triples.push_back({subject, std::string(opmw::kRdfType), t});
      if (t != opmw::kProcessTemplate) ttl += ",\n        " + iri(t);
    }
    ttl += " ;\n    opmw:template " + iri(workflow_uri);
    doc.triples.push_back({subject, std::string(opmw::kTemplate), workflow_uri});
    if (!upstream.empty()) {
      ttl += " ;\n    opmw:uses ";
      for (size_t i = 0; i < upstream.size(); ++i) {
        if (i) ttl += ",\n        ";
        ttl += iri(upstream[i]);
        doc.triples.push_back({subject, std::string(opmw::kUses), upstream[i]});
      }
    }
    ttl += " .\n";
  }
  return doc;
}

std::string to_ntriples(const std::vector<RdfTriple>& triples) {
  std::string out;
  for (const auto& t : triples) out += iri(t.subject) + " " + iri(t.predicate) + " " + object_term(t) + " .\n";
  return out;
}

}  // namespace wfsem
