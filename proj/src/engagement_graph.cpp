#include "coengage/engagement_graph.hpp"

#include <algorithm>
#include <unordered_map>

namespace coengage {

EngagementGraph EngagementGraph::build(Interner interner, std::vector<Edge> edges) {
  const std::size_t n = interner.size();
  EngagementGraph g;
  g.interner_ = std::make_shared<Interner>(std::move(interner));

  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.engager != b.engager ? a.engager < b.engager : a.target < b.target;
  });
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (e.engager >= n || e.target >= n)
      throw ValidationError("edge references node ordinal outside interner range");
    if (e.weight < 1)
      throw ValidationError("edge weight must be >= 1");
    if (i > 0 && edges[i - 1].engager == e.engager && edges[i - 1].target == e.target)
      throw ValidationError("duplicate (engager, target) edge after aggregation");
  }

  g.out_offsets_.assign(n + 1, 0);
  g.in_offsets_.assign(n + 1, 0);
  g.in_degree_.assign(n, 0);
  g.out_degree_.assign(n, 0);
  g.targets_.reserve(edges.size());

  for (const Edge& e : edges)
    g.out_offsets_[e.engager + 1]++;
  for (std::size_t i = 1; i <= n; ++i)
    g.out_offsets_[i] += g.out_offsets_[i - 1];
  for (const Edge& e : edges) {
    g.targets_.push_back({e.target, e.weight});
    g.in_degree_[e.target] += e.weight;
    g.out_degree_[e.engager] += e.weight;
    g.total_weight_ += e.weight;
  }

  // transpose, sorted by (target, engager)
  std::vector<std::size_t> cursor(n, 0);
  for (const Edge& e : edges)
    g.in_offsets_[e.target + 1]++;
  for (std::size_t i = 1; i <= n; ++i)
    g.in_offsets_[i] += g.in_offsets_[i - 1];
  g.engagers_.resize(edges.size());
  for (const Edge& e : edges) {
    std::size_t pos = g.in_offsets_[e.target] + cursor[e.target]++;
    g.engagers_[pos] = {e.engager, e.weight};
  }

  for (NodeId u = 0; u < n; ++u)
    if (g.out_offsets_[u + 1] > g.out_offsets_[u])
      g.engager_count_++;

  return g;
}

EngagementGraph EngagementGraph::from_records(std::span<const InteractionRecord> rows,
                                              bool keep_self_loops) {
  std::vector<std::string> handles;
  handles.reserve(rows.size() * 2);
  for (const auto& r : rows) {
    if (r.engager.empty() || r.target.empty())
      throw ValidationError("interaction record with empty handle");
    if (r.count < 1)
      throw ValidationError("interaction record with non-positive count");
    if (!keep_self_loops && r.engager == r.target)
      continue;
    handles.push_back(r.engager);
    handles.push_back(r.target);
  }
  Interner interner = Interner::from_handles(std::move(handles));

  std::unordered_map<std::uint64_t, std::uint64_t> agg;
  agg.reserve(rows.size());
  for (const auto& r : rows) {
    if (!keep_self_loops && r.engager == r.target)
      continue;
    NodeId u = interner.require(r.engager);
    NodeId v = interner.require(r.target);
    agg[(static_cast<std::uint64_t>(u) << 32) | v] += r.count;
  }

  std::vector<Edge> edges;
  edges.reserve(agg.size());
  for (const auto& [key, w] : agg)
    edges.push_back({static_cast<NodeId>(key >> 32), static_cast<NodeId>(key & 0xffffffffu), w});
  return build(std::move(interner), std::move(edges));
}

std::span<const EngagementGraph::OutEdge> EngagementGraph::out_edges(NodeId engager) const {
  if (engager >= node_count())
    return {};
  return {targets_.data() + out_offsets_[engager],
          out_offsets_[engager + 1] - out_offsets_[engager]};
}

std::span<const EngagementGraph::InEdge> EngagementGraph::in_edges(NodeId target) const {
  if (target >= node_count())
    return {};
  return {engagers_.data() + in_offsets_[target], in_offsets_[target + 1] - in_offsets_[target]};
}

std::uint64_t EngagementGraph::weighted_in_degree(NodeId node) const {
  if (node >= node_count())
    throw NotFoundError("node ordinal out of range: " + std::to_string(node));
  return in_degree_[node];
}

std::uint64_t EngagementGraph::weighted_out_degree(NodeId node) const {
  if (node >= node_count())
    throw NotFoundError("node ordinal out of range: " + std::to_string(node));
  return out_degree_[node];
}

} // namespace coengage
