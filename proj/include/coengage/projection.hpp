#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "coengage/coengagement_graph.hpp"
#include "coengage/engagement_graph.hpp"

namespace coengage {

struct ProjectionOptions {
  // Engagers whose qualifying-target fanout exceeds the cap are flagged;
  // with cap_hard they are skipped instead of processed.
  std::optional<std::uint32_t> max_fanout_cap;
  bool cap_hard = false;
  // Budget on distinct accumulated pairs; 0 means unlimited. Exceeding it
  // raises CapacityError naming the phase.
  std::uint64_t max_pairs = 0;
  unsigned threads = 1;
  bool progress = false; // engager-range ticks on stderr
};

struct ProjectionDiagnostics {
  struct CapEvent {
    NodeId engager;
    std::size_t fanout;
    bool skipped;
  };
  std::vector<CapEvent> cap_events; // in engager ordinal order
  std::uint64_t pair_entries = 0;   // distinct pairs accumulated before filtering
};

// Targets the engager hit at least s times, sorted by ordinal. Unknown
// engagers yield an empty set.
std::vector<NodeId> qualifying_targets(const EngagementGraph& g, NodeId engager, std::uint32_t s);

// The coengagement projection X under (n, s): c(i, j) counts engagers with
// w(u, i) >= s and w(u, j) >= s; pairs with c >= n become edges weighted by
// c. Output is independent of the worker count.
CoengagementGraph project(const EngagementGraph& g, ProjectionParams params,
                          const ProjectionOptions& opts = {},
                          ProjectionDiagnostics* diagnostics = nullptr);

} // namespace coengage
