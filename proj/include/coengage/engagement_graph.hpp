#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "coengage/interner.hpp"
#include "coengage/types.hpp"

namespace coengage {

// Directed weighted engagement graph G = (V, E, w). Immutable after build;
// stores both orientations in CSR form so in- and out-scans are cheap.
// The bipartite send/receive split is implicit: adjacency rows are the
// sending role of each account, referenced targets the receiving role.
class EngagementGraph {
public:
  struct OutEdge {
    NodeId target;
    std::uint64_t weight;
  };
  struct InEdge {
    NodeId engager;
    std::uint64_t weight;
  };
  // (engager, target, weight) with weight >= 1
  struct Edge {
    NodeId engager;
    NodeId target;
    std::uint64_t weight;
  };

  EngagementGraph() : interner_(std::make_shared<Interner>()) {}

  // edges must be unique (engager, target) pairs; they get sorted here.
  static EngagementGraph build(Interner interner, std::vector<Edge> edges);

  // Convenience for tests and in-memory pipelines: aggregates duplicate rows,
  // drops self-loops unless asked to keep them.
  static EngagementGraph from_records(std::span<const InteractionRecord> rows,
                                      bool keep_self_loops = false);

  std::size_t node_count() const { return interner_->size(); }
  std::size_t edge_count() const { return targets_.size(); }
  std::uint64_t total_weight() const { return total_weight_; }
  // number of nodes with at least one outgoing engagement
  std::size_t engager_count() const { return engager_count_; }

  std::span<const OutEdge> out_edges(NodeId engager) const;
  std::span<const InEdge> in_edges(NodeId target) const;

  std::uint64_t weighted_in_degree(NodeId node) const;  // NotFoundError if unknown
  std::uint64_t weighted_out_degree(NodeId node) const; // NotFoundError if unknown

  const Interner& interner() const { return *interner_; }
  std::shared_ptr<const Interner> interner_ptr() const { return interner_; }

private:
  std::shared_ptr<const Interner> interner_;
  // out CSR, sorted by (engager, target)
  std::vector<std::size_t> out_offsets_;
  std::vector<OutEdge> targets_;
  // in CSR, sorted by (target, engager)
  std::vector<std::size_t> in_offsets_;
  std::vector<InEdge> engagers_;
  std::vector<std::uint64_t> in_degree_;
  std::vector<std::uint64_t> out_degree_;
  std::uint64_t total_weight_ = 0;
  std::size_t engager_count_ = 0;
};

} // namespace coengage
