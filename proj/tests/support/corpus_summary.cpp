// SPDX-License-Identifier: Apache-2.0
#include "corpus_summary.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>
#include <tuple>
#include <vector>

#include "turtle.hpp"
#include "wfsem/text.hpp"

namespace wfsem::testing {

namespace {

using Json = nlohmann::json;
namespace fs = std::filesystem;

Json load(const fs::path& p) { return Json::parse(read_file(p.string())); }

std::string fmt(const Json& v) {
  if (v.is_null()) return "-";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v.get<double>());
  return buf;
}

// k=v pairs in key order; integers verbatim, everything else as a float
std::string render(const Json& obj) {
  std::vector<std::string> parts;
  for (const auto& [k, v] : obj.items()) {
    if (v.is_object() || v.is_array()) continue;
    parts.push_back(k + "=" + (v.is_number_integer() ? std::to_string(v.get<long long>()) : fmt(v)));
  }
  return join(parts, " ");
}

std::string hist(const Json& bins) {
  std::vector<std::string> counts;
  for (const auto& b : bins) counts.push_back(std::to_string(b.at("count").get<long long>()));
  return join(counts, ",");
}

std::string endpoint(const Json& e) {
  return (e.at("processor").is_null() ? std::string("-") : e.at("processor").get<std::string>()) + ":" +
         e.at("port").get<std::string>();
}

std::string span(const Json& a) {
  return std::to_string(a.at("span")[0].get<long long>()) + "-" + std::to_string(a.at("span")[1].get<long long>());
}

using ServiceKey = std::pair<std::string, std::string>;

ServiceKey key_of(const Json& j) { return {j.at("workflow").get<std::string>(), j.at("processor").get<std::string>()}; }

std::map<ServiceKey, std::vector<Json>> by_service(const fs::path& jsonl) {
  std::map<ServiceKey, std::vector<Json>> out;
  std::istringstream in(read_file(jsonl.string()));
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    const Json j = Json::parse(line);
    out[key_of(j)].push_back(j);
  }
  return out;
}

}  // namespace

std::string corpus_summary(const fs::path& ws) {
  std::vector<std::string> lines;
  auto add = [&](std::string s) { lines.push_back(std::move(s)); };

  const Json manifest = load(ws / "manifest.json");
  for (const char* stage : {"filter", "prune", "harvest", "annotate", "score", "emit"}) {
    for (const auto& s : manifest.at("stages")) {
      if (s.at("stage") == stage) add(std::string("counts ") + stage + " " + render(s.at("counts")));
    }
  }

  {
    std::istringstream in(read_file((ws / "filter" / "verdicts.csv").string()));
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto cols = split(line, ',');
      add("verdict " + cols[0] + " " + cols[1] + " " + (cols.size() < 3 || cols[2].empty() ? "-" : cols[2]));
    }
  }

  const Json pruned = load(ws / "prune" / "corpus.json");
  for (const auto& entry : pruned.at("workflows")) {
    const Json& w = entry.at("workflow");
    const std::string id = w.at("id");
    std::vector<std::string> names;
    for (const auto& p : w.at("processors")) names.push_back(p.at("name"));
    add("pruned " + id + " " + (names.empty() ? "-" : join(names, ",")));
    std::vector<std::tuple<std::string, std::string, std::string>> links;
    for (const auto& l : w.at("links")) {
      links.emplace_back(endpoint(l.at("source")), endpoint(l.at("sink")), l.at("inferred").get<bool>() ? "i" : "a");
    }
    std::sort(links.begin(), links.end());
    for (const auto& [src, sink, flag] : links) add("link " + id + " " + src + " " + sink + " " + flag);
  }

  const Json descriptions = load(ws / "harvest" / "descriptions.json");
  for (const auto& d : descriptions.at("services")) {
    const std::string who = d.at("workflow").get<std::string>() + " " + d.at("processor").get<std::string>();
    add("service " + who + " " + (d.at("name_only").get<bool>() ? "1" : "0") + " " + d.at("assembled").get<std::string>());
    for (const auto& f : d.at("fragments")) {
      add("fragment " + who + " " + f.at("kind").get<std::string>() + " " + f.at("source").get<std::string>());
    }
  }

  auto raw = by_service(ws / "annotate" / "annotations.jsonl");
  auto deduped = by_service(ws / "annotate" / "annotations_dedup.jsonl");
  for (const auto& d : descriptions.at("services")) {
    const ServiceKey key = key_of(d);
    for (const auto& [kind, table] : {std::pair{"raw", &raw}, std::pair{"dedup", &deduped}}) {
      for (const auto& a : (*table)[key]) {
        add(std::string("annotation ") + kind + " " + key.first + " " + key.second + " " + span(a) + " " +
            a.at("ontology").get<std::string>() + " " + a.at("class_uri").get<std::string>() + " " +
            a.at("matched_text").get<std::string>());
      }
    }
  }

  const Json report = load(ws / "score" / "ic_report.json");
  std::map<ServiceKey, std::vector<Json>> scored;
  for (const auto& a : report.at("per_annotation")) scored[key_of(a)].push_back(a);
  for (const auto& s : report.at("per_service")) {
    const ServiceKey key = key_of(s);
    for (const auto& a : scored[key]) {
      add("score annotation " + key.first + " " + key.second + " " + span(a) + " " + a.at("ontology").get<std::string>() +
          " " + a.at("class_uri").get<std::string>() + " " + fmt(a.at("ic")));
    }
    add("score service " + key.first + " " + key.second + " " + (s.at("scored").get<bool>() ? fmt(s.at("ic")) : "-"));
  }
  for (const auto& w : report.at("per_workflow")) {
    add("score workflow " + w.at("workflow").get<std::string>() + " " + fmt(w.at("ic")) + " " +
        fmt(w.at("ic_including_unscored")) + " " + std::to_string(w.at("services").get<long long>()) + " " +
        std::to_string(w.at("scored_services").get<long long>()));
  }
  for (const auto& [id, o] : report.at("per_ontology").items()) {
    const bool any = o.at("scored_count").get<long long>() > 0;
    add("score ontology " + id + " " + std::to_string(o.at("annotation_count").get<long long>()) + " " +
        std::to_string(o.at("scored_count").get<long long>()) + " " +
        std::to_string(o.at("distinct_terms").get<long long>()) + " " + (any ? fmt(o.at("mean_ic")) : "-") + " " +
        (any ? fmt(o.at("min_ic")) : "-"));
  }
  add("score summary " + render(report.at("summary")));
  for (const char* name : {"annotation", "annotation_dedup", "service", "service_scored", "workflow"}) {
    add(std::string("histogram ") + name + " " + hist(report.at("histograms").at(name)));
  }

  const Json gold = load(ws / "score" / "gold_comparison.json");
  add("gold " + render(gold));
  add("gold_histogram annotation " + hist(gold.at("annotation_histogram")));
  add("gold_histogram entity " + hist(gold.at("entity_histogram")));

  for (const auto& entry : pruned.at("workflows")) {
    const std::string file = entry.at("file").get<std::string>() + ".ttl";
    add("emit " + file + " " + std::to_string(parse_turtle(read_file((ws / "emit" / file).string())).size()));
  }
  auto triples = parse_ntriples(read_file((ws / "emit" / "all.nt").string()));
  std::sort(triples.begin(), triples.end());
  for (const auto& t : triples) add("triple " + t.subject + " " + t.predicate + " " + t.object);

  return join(lines, "\n") + "\n";
}

}  // namespace wfsem::testing
