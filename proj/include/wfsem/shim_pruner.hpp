// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <span>
#include <string>

#include "wfsem/workflow.hpp"

namespace wfsem {

struct FormatRatio {
  size_t workflows = 0;
  double mean_shims = 0.0;
  double mean_non_shims = 0.0;
};

struct CompositionStats {
  size_t workflows = 0;
  size_t total = 0;
  size_t shims = 0;
  size_t non_shims = 0;
  size_t other = 0;
  std::map<ProcessorCategory, size_t> per_category;
  std::map<Format, FormatRatio> per_format_ratio;

  double shim_fraction() const { return total ? static_cast<double>(shims) / static_cast<double>(total) : 0.0; }
};

// Removes every shim processor and reconnects the flow across shim-only
// paths. Inferred links carry the outermost ports of the path. Shim-only
// cycles produce nothing; non-shim processors left without links are kept.
WorkflowGraph prune_shims(const WorkflowGraph& workflow);

// Counts top-level processors only. Throws EmptyCorpus.
CompositionStats compute_stats(std::span<const WorkflowGraph> corpus);

// category,count rows (every category, in enum order) after a header.
std::string stats_csv(const CompositionStats& stats);

}  // namespace wfsem
