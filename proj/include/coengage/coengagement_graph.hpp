#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "coengage/interner.hpp"
#include "coengage/types.hpp"

namespace coengage {

// Undirected weighted projection X under (n, s). Nodes are the receiving
// accounts that survived filtering; every node has at least one edge.
class CoengagementGraph {
public:
  struct Edge {
    NodeId a; // a < b by ordinal
    NodeId b;
    std::uint32_t weight; // count of qualifying co-engagers
  };
  struct Neighbor {
    std::uint32_t index; // compact node index
    std::uint32_t weight;
  };

  CoengagementGraph() : interner_(std::make_shared<Interner>()) {}

  // edges must satisfy a < b with no duplicate pairs; sorted here.
  CoengagementGraph(std::shared_ptr<const Interner> interner, ProjectionParams params,
                    std::vector<Edge> edges);

  const std::vector<NodeId>& nodes() const { return nodes_; } // sorted ordinals
  const std::vector<Edge>& edges() const { return edges_; }   // sorted by (a, b)
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }
  ProjectionParams params() const { return params_; }

  bool contains(NodeId ordinal) const;
  std::size_t index_of(NodeId ordinal) const; // compact index; NotFoundError if absent
  std::optional<std::size_t> index_of_handle(std::string_view handle) const;
  NodeId ordinal_at(std::size_t index) const { return nodes_[index]; }
  const std::string& handle_at(std::size_t index) const { return interner_->handle(nodes_[index]); }

  std::span<const Neighbor> neighbors(std::size_t index) const;
  std::uint32_t degree(std::size_t index) const;
  std::uint64_t weighted_degree(NodeId ordinal) const; // NotFoundError if absent
  std::uint64_t weighted_degree_at(std::size_t index) const { return weighted_degree_[index]; }
  std::uint64_t total_edge_weight() const { return total_edge_weight_; }

  const Interner& interner() const { return *interner_; }
  std::shared_ptr<const Interner> interner_ptr() const { return interner_; }

private:
  std::shared_ptr<const Interner> interner_;
  ProjectionParams params_;
  std::vector<NodeId> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> adj_offsets_; // CSR over compact indices, both directions
  std::vector<Neighbor> adj_;
  std::vector<std::uint64_t> weighted_degree_;
  std::uint64_t total_edge_weight_ = 0;
};

} // namespace coengage
