#include "coengage/projection.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <unordered_map>

#include "coengage/parallel.hpp"

namespace coengage {

std::vector<NodeId> qualifying_targets(const EngagementGraph& g, NodeId engager,
                                       std::uint32_t s) {
  if (s < 1)
    throw ValidationError("threshold s must be >= 1");
  std::vector<NodeId> out;
  for (const auto& e : g.out_edges(engager))
    if (e.weight >= s)
      out.push_back(e.target); // out_edges are target-sorted already
  return out;
}

namespace {

using PairCounts = std::unordered_map<std::uint64_t, std::uint32_t>;

constexpr std::size_t kEngagersPerChunk = 4096;

struct ChunkResult {
  PairCounts counts;
  std::vector<ProjectionDiagnostics::CapEvent> cap_events;
};

// Expands each engager's qualifying targets into unordered pairs and counts
// them. Pair keys pack the two ordinals (low ordinal in the high word), which
// keeps the final edge sort cheap.
void accumulate_range(const EngagementGraph& g, ProjectionParams params,
                      const ProjectionOptions& opts, NodeId begin, NodeId end, ChunkResult& out) {
  std::vector<NodeId> targets;
  for (NodeId u = begin; u < end; ++u) {
    targets.clear();
    for (const auto& e : g.out_edges(u))
      if (e.weight >= params.s)
        targets.push_back(e.target);
    if (targets.size() < 2)
      continue;
    if (opts.max_fanout_cap && targets.size() > *opts.max_fanout_cap) {
      out.cap_events.push_back({u, targets.size(), opts.cap_hard});
      if (opts.cap_hard)
        continue;
    }
    for (std::size_t i = 0; i + 1 < targets.size(); ++i) {
      const std::uint64_t hi = static_cast<std::uint64_t>(targets[i]) << 32;
      for (std::size_t j = i + 1; j < targets.size(); ++j)
        out.counts[hi | targets[j]]++;
    }
  }
}

} // namespace

CoengagementGraph project(const EngagementGraph& g, ProjectionParams params,
                          const ProjectionOptions& opts, ProjectionDiagnostics* diagnostics) {
  params.validate();

  const std::size_t n_nodes = g.node_count();
  const std::size_t n_chunks =
      n_nodes == 0 ? 0 : (n_nodes + kEngagersPerChunk - 1) / kEngagersPerChunk;
  std::vector<ChunkResult> chunks(n_chunks);
  std::atomic<std::size_t> done{0};
  parallel_chunks(n_nodes, kEngagersPerChunk, opts.threads,
                  [&](std::size_t chunk, std::size_t begin, std::size_t end) {
                    accumulate_range(g, params, opts, static_cast<NodeId>(begin),
                                     static_cast<NodeId>(end), chunks[chunk]);
                    if (opts.progress) {
                      std::size_t finished = done.fetch_add(1) + 1;
                      std::fprintf(stderr, "projection: %zu/%zu engager ranges\n", finished,
                                   n_chunks);
                    }
                  });

  // merge in chunk order; integer sums make the result independent of
  // scheduling either way
  PairCounts merged;
  std::vector<ProjectionDiagnostics::CapEvent> cap_events;
  for (auto& chunk : chunks) {
    if (merged.empty()) {
      merged = std::move(chunk.counts);
    } else {
      for (const auto& [key, c] : chunk.counts)
        merged[key] += c;
    }
    if (opts.max_pairs > 0 && merged.size() > opts.max_pairs)
      throw CapacityError("pair accumulation",
                          "distinct pair count exceeded budget of " +
                              std::to_string(opts.max_pairs));
    cap_events.insert(cap_events.end(), chunk.cap_events.begin(), chunk.cap_events.end());
    chunk.counts = PairCounts();
  }

  if (diagnostics) {
    std::sort(cap_events.begin(), cap_events.end(),
              [](const auto& a, const auto& b) { return a.engager < b.engager; });
    diagnostics->cap_events = std::move(cap_events);
    diagnostics->pair_entries = merged.size();
  }

  std::vector<CoengagementGraph::Edge> edges;
  for (const auto& [key, c] : merged) {
    if (c >= params.n)
      edges.push_back({static_cast<NodeId>(key >> 32), static_cast<NodeId>(key & 0xffffffffu), c});
  }
  return CoengagementGraph(g.interner_ptr(), params, std::move(edges));
}

} // namespace coengage
