#include "coengage/coengagement_graph.hpp"

#include <algorithm>

namespace coengage {

CoengagementGraph::CoengagementGraph(std::shared_ptr<const Interner> interner,
                                     ProjectionParams params, std::vector<Edge> edges)
    : interner_(std::move(interner)), params_(params), edges_(std::move(edges)) {
  params_.validate();
  std::sort(edges_.begin(), edges_.end(), [](const Edge& x, const Edge& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  });
  nodes_.reserve(edges_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.a >= e.b)
      throw ValidationError("coengagement edge must satisfy a < b");
    if (e.a >= interner_->size() || e.b >= interner_->size())
      throw ValidationError("coengagement edge references unknown ordinal");
    if (i > 0 && edges_[i - 1].a == e.a && edges_[i - 1].b == e.b)
      throw ValidationError("duplicate coengagement edge");
    nodes_.push_back(e.a);
    nodes_.push_back(e.b);
  }
  std::sort(nodes_.begin(), nodes_.end());
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());

  const std::size_t n = nodes_.size();
  adj_offsets_.assign(n + 1, 0);
  weighted_degree_.assign(n, 0);
  auto idx = [this](NodeId ordinal) {
    return static_cast<std::uint32_t>(
        std::lower_bound(nodes_.begin(), nodes_.end(), ordinal) - nodes_.begin());
  };
  for (const Edge& e : edges_) {
    adj_offsets_[idx(e.a) + 1]++;
    adj_offsets_[idx(e.b) + 1]++;
  }
  for (std::size_t i = 1; i <= n; ++i)
    adj_offsets_[i] += adj_offsets_[i - 1];
  adj_.resize(edges_.size() * 2);
  std::vector<std::size_t> cursor(n, 0);
  for (const Edge& e : edges_) {
    std::uint32_t ia = idx(e.a), ib = idx(e.b);
    adj_[adj_offsets_[ia] + cursor[ia]++] = {ib, e.weight};
    adj_[adj_offsets_[ib] + cursor[ib]++] = {ia, e.weight};
    weighted_degree_[ia] += e.weight;
    weighted_degree_[ib] += e.weight;
    total_edge_weight_ += e.weight;
  }
}

bool CoengagementGraph::contains(NodeId ordinal) const {
  return std::binary_search(nodes_.begin(), nodes_.end(), ordinal);
}

std::size_t CoengagementGraph::index_of(NodeId ordinal) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), ordinal);
  if (it == nodes_.end() || *it != ordinal)
    throw NotFoundError("node not present in coengagement graph: " + std::to_string(ordinal));
  return static_cast<std::size_t>(it - nodes_.begin());
}

std::optional<std::size_t> CoengagementGraph::index_of_handle(std::string_view handle) const {
  auto ordinal = interner_->find(handle);
  if (!ordinal || !contains(*ordinal))
    return std::nullopt;
  return index_of(*ordinal);
}

std::span<const CoengagementGraph::Neighbor>
CoengagementGraph::neighbors(std::size_t index) const {
  return {adj_.data() + adj_offsets_[index], adj_offsets_[index + 1] - adj_offsets_[index]};
}

std::uint32_t CoengagementGraph::degree(std::size_t index) const {
  return static_cast<std::uint32_t>(adj_offsets_[index + 1] - adj_offsets_[index]);
}

std::uint64_t CoengagementGraph::weighted_degree(NodeId ordinal) const {
  return weighted_degree_[index_of(ordinal)];
}

} // namespace coengage
