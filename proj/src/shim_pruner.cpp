// SPDX-License-Identifier: Apache-2.0
#include "wfsem/shim_pruner.hpp"

#include <set>
#include <sstream>
#include <tuple>

#include "wfsem/error.hpp"

namespace wfsem {

namespace {

using LinkKey = std::tuple<std::optional<std::string>, std::string, std::optional<std::string>, std::string>;

}  // namespace

WorkflowGraph prune_shims(const WorkflowGraph& workflow) {
  std::set<std::string> shims;
  for (const auto& p : workflow.processors) {
    if (is_shim(p.category)) shims.insert(p.name);
  }

  WorkflowGraph out = workflow;
  if (shims.empty()) return out;

  out.processors.clear();
  for (const auto& p : workflow.processors) {
    if (!shims.count(p.name)) out.processors.push_back(p);
  }

  // Outgoing links of each shim, in document order.
  std::map<std::string, std::vector<const DataLink*>> shim_out;
  for (const auto& l : workflow.links) {
    if (l.source_processor && shims.count(*l.source_processor)) shim_out[*l.source_processor].push_back(&l);
  }
  auto touches_shim = [&](const std::optional<std::string>& end) { return end && shims.count(*end); };

  out.links.clear();
  std::set<LinkKey> seen;
  for (const auto& l : workflow.links) {
    if (touches_shim(l.source_processor) || touches_shim(l.sink_processor)) continue;
    if (seen.insert(l.key()).second) out.links.push_back(l);
  }

  // For every link entering a shim from a surviving endpoint, walk the
  // shim-only subgraph and connect to every surviving endpoint it reaches.
  for (const auto& entry : workflow.links) {
    if (touches_shim(entry.source_processor) || !touches_shim(entry.sink_processor)) continue;
    std::set<std::string> visited{*entry.sink_processor};
    std::vector<std::string> stack{*entry.sink_processor};
    while (!stack.empty()) {
      const std::string shim = std::move(stack.back());
      stack.pop_back();
      const auto it = shim_out.find(shim);
      if (it == shim_out.end()) continue;
      for (const DataLink* exit : it->second) {
        if (touches_shim(exit->sink_processor)) {
          if (visited.insert(*exit->sink_processor).second) stack.push_back(*exit->sink_processor);
          continue;
        }
        // port-to-port pass-through is not reconnected
        if (!entry.source_processor && !exit->sink_processor) continue;
        if (entry.source_processor && exit->sink_processor && *entry.source_processor == *exit->sink_processor) continue;
        DataLink inferred{entry.source_processor, entry.source_port, exit->sink_processor, exit->sink_port, true};
        if (seen.insert(inferred.key()).second) out.links.push_back(std::move(inferred));
      }
    }
  }
  return out;
}

CompositionStats compute_stats(std::span<const WorkflowGraph> corpus) {
  if (corpus.empty()) throw Error(ErrorCode::EmptyCorpus, "composition statistics need at least one workflow");
  CompositionStats stats;
  for (auto c : kAllCategories) stats.per_category[c] = 0;
  std::map<Format, std::pair<size_t, size_t>> format_sums;
  for (const auto& w : corpus) {
    ++stats.workflows;
    size_t shims = 0;
    size_t non_shims = 0;
    for (const auto& p : w.processors) {
      ++stats.total;
      ++stats.per_category[p.category];
      if (is_shim(p.category)) {
        ++shims;
      } else if (is_non_shim(p.category)) {
        ++non_shims;
      } else {
        ++stats.other;
      }
    }
    stats.shims += shims;
    stats.non_shims += non_shims;
    auto& ratio = stats.per_format_ratio[w.format];
    ++ratio.workflows;
    format_sums[w.format].first += shims;
    format_sums[w.format].second += non_shims;
  }
  for (auto& [format, ratio] : stats.per_format_ratio) {
    const auto& [shims, non_shims] = format_sums[format];
    ratio.mean_shims = static_cast<double>(shims) / static_cast<double>(ratio.workflows);
    ratio.mean_non_shims = static_cast<double>(non_shims) / static_cast<double>(ratio.workflows);
  }
  return stats;
}

std::string stats_csv(const CompositionStats& stats) {
  std::ostringstream out;
  out << "category,count\n";
  for (auto c : kAllCategories) {
    const auto it = stats.per_category.find(c);
    out << to_string(c) << ',' << (it == stats.per_category.end() ? 0 : it->second) << '\n';
  }
  return out.str();
}

}  // namespace wfsem
