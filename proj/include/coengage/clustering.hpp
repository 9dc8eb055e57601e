#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "coengage/coengagement_graph.hpp"
#include "coengage/ingest.hpp"

namespace coengage {

// Node -> community mapping over a coengagement graph. community is indexed
// by compact node index; community ids are dense, numbered by first
// appearance in node order.
struct ClusterAssignment {
  std::vector<std::uint32_t> community;
  std::uint32_t community_count = 0;
  double modularity = 0.0;
  std::vector<double> pass_modularity; // one entry per aggregation level
  double resolution = 1.0;
  std::uint64_t seed = 0;
  std::map<std::uint32_t, std::string> labels; // community -> label

  std::vector<std::size_t> community_sizes() const;
};

// Two-phase Louvain on the undirected weighted graph. Local moves maximize
// weighted modularity gain at the given resolution; ties go to the first
// community reaching the maximum in scan order. Node visit orders are
// shuffled by a generator seeded with `seed`; the best of a fixed number of
// replicates is returned, so results are reproducible for a fixed seed.
// An empty graph yields an empty assignment with modularity 0.
ClusterAssignment louvain(const CoengagementGraph& x, double resolution = 1.0,
                          std::uint64_t seed = 42);

// Direct evaluation of weighted modularity for an assignment (community
// indexed by compact node index).
double modularity(const CoengagementGraph& x, const std::vector<std::uint32_t>& community,
                  double resolution = 1.0);

// For each community, the set of landmark labels whose landmarks it contains.
// Landmarks absent from the graph contribute nothing.
std::map<std::uint32_t, std::set<std::string>>
landmark_communities(const CoengagementGraph& x, const ClusterAssignment& assignment,
                     const LandmarkSet& landmarks);

// A community gets label L when it holds >= 1 landmark of L; communities with
// landmarks of several labels get merged(L1,L2,...) with labels sorted.
ClusterAssignment label_clusters(const CoengagementGraph& x, ClusterAssignment assignment,
                                 const LandmarkSet& landmarks);

} // namespace coengage
