#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coengage/clustering.hpp"
#include "coengage/engagement_graph.hpp"

namespace coengage {

// One grid cell of the cluster existence map. A label lands in exactly one
// of salient / absent / subsumed: absent when none of its landmarks survive
// projection, subsumed when a community holding one of its landmarks also
// holds a landmark of another label, salient otherwise.
struct ExistenceCell {
  std::uint32_t n = 1;
  std::uint32_t s = 1;
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  std::vector<std::string> salient;
  std::vector<std::string> absent;
  std::vector<std::string> subsumed;
};

struct ExistenceMap {
  std::vector<ExistenceCell> cells; // row-major: n outer, s inner
};

// Projects, clusters, and labels every (n, s) cell independently. Cells run
// in parallel; cell seeds are seed + cell index, so the grid is reproducible
// at any worker count. Value lists must be non-empty, ascending, positive.
ExistenceMap sweep(const EngagementGraph& g, const std::vector<std::uint32_t>& n_values,
                   const std::vector<std::uint32_t>& s_values, const LandmarkSet& landmarks,
                   double resolution = 1.0, std::uint64_t seed = 42, unsigned threads = 1);

// header n,s,node_count,edge_count,salient_labels,absent_labels,subsumed_labels
// with labels sorted and ;-joined.
void write_existence_csv(const ExistenceMap& map, const std::string& path);

} // namespace coengage
