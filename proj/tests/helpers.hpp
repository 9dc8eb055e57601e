#pragma once

// Shared fixtures and independent oracles. The oracles recompute results by
// brute force from raw rows or from first-principles formulas; they never
// call the code paths they check.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <unistd.h>
#include <vector>

#include "coengage/coengagement_graph.hpp"
#include "coengage/engagement_graph.hpp"
#include "coengage/types.hpp"

namespace testutil {

using coengage::CoengagementGraph;
using coengage::EngagementGraph;
using coengage::InteractionRecord;
using coengage::Interner;
using coengage::ProjectionParams;

inline std::vector<InteractionRecord>
make_records(const std::vector<std::tuple<std::string, std::string, std::uint64_t>>& rows) {
  std::vector<InteractionRecord> records;
  for (const auto& [engager, target, count] : rows)
    records.push_back({engager, target, count, std::nullopt});
  return records;
}

// Panel 1 of the schematic: red engages blue and yellow, yellow engages blue
// and green.
inline std::vector<InteractionRecord> schematic_rows() {
  return make_records({{"red", "blue", 1}, {"red", "yellow", 1}, {"yellow", "blue", 1},
                       {"yellow", "green", 1}});
}

struct HandleEdge {
  std::string a; // a < b
  std::string b;
  std::uint64_t weight;

  bool operator==(const HandleEdge&) const = default;
  bool operator<(const HandleEdge& o) const {
    return std::tie(a, b, weight) < std::tie(o.a, o.b, o.weight);
  }
};

inline std::vector<HandleEdge> to_handle_edges(const CoengagementGraph& x) {
  std::vector<HandleEdge> out;
  for (const auto& e : x.edges())
    out.push_back({x.interner().handle(e.a), x.interner().handle(e.b), e.weight});
  std::sort(out.begin(), out.end());
  return out;
}

// O(targets^2 * engagers) pair-count reference, straight off the raw rows:
// for every unordered target pair, scan every engager's aggregated weights.
inline std::vector<HandleEdge> brute_force_project(const std::vector<InteractionRecord>& rows,
                                                   std::uint32_t n, std::uint32_t s,
                                                   bool keep_self_loops = false) {
  std::map<std::string, std::size_t> engager_id;
  std::map<std::string, std::size_t> target_id;
  for (const auto& r : rows) {
    if (!keep_self_loops && r.engager == r.target)
      continue;
    engager_id.emplace(r.engager, engager_id.size());
    target_id.emplace(r.target, target_id.size());
  }
  std::vector<std::string> target_list(target_id.size());
  for (const auto& [handle, id] : target_id)
    target_list[id] = handle;
  std::sort(target_list.begin(), target_list.end());
  for (std::size_t i = 0; i < target_list.size(); ++i)
    target_id[target_list[i]] = i;

  std::vector<std::vector<std::uint64_t>> weight(
      engager_id.size(), std::vector<std::uint64_t>(target_id.size(), 0));
  for (const auto& r : rows) {
    if (!keep_self_loops && r.engager == r.target)
      continue;
    weight[engager_id[r.engager]][target_id[r.target]] += r.count;
  }

  std::vector<HandleEdge> edges;
  for (std::size_t i = 0; i < target_list.size(); ++i) {
    for (std::size_t j = i + 1; j < target_list.size(); ++j) {
      std::uint64_t c = 0;
      for (const auto& w : weight)
        if (w[i] >= s && w[j] >= s)
          ++c;
      if (c >= n)
        edges.push_back({target_list[i], target_list[j], c});
    }
  }
  return edges;
}

// Builds a coengagement graph directly from handle edges (for clustering and
// analysis tests that do not involve a projection).
inline CoengagementGraph
make_coengagement(const std::vector<std::tuple<std::string, std::string, std::uint32_t>>& edges,
                  ProjectionParams params = {1, 1}) {
  std::vector<std::string> handles;
  for (const auto& [a, b, w] : edges) {
    handles.push_back(a);
    handles.push_back(b);
  }
  auto interner = std::make_shared<Interner>(Interner::from_handles(std::move(handles)));
  std::vector<CoengagementGraph::Edge> out;
  for (const auto& [a, b, w] : edges) {
    coengage::NodeId ia = interner->require(a), ib = interner->require(b);
    if (ia > ib)
      std::swap(ia, ib);
    out.push_back({ia, ib, w});
  }
  return CoengagementGraph(std::move(interner), params, std::move(out));
}

// Literal sum over ordered node pairs: Q = (1/2m) sum_ij (A_ij - r k_i k_j / 2m) d(ci, cj).
// Structured differently from the library's per-community evaluation.
inline double modularity_oracle(const CoengagementGraph& x,
                                const std::vector<std::uint32_t>& community,
                                double resolution = 1.0) {
  const std::size_t n = x.node_count();
  if (n == 0)
    return 0.0;
  std::vector<std::vector<double>> adj(n, std::vector<double>(n, 0.0));
  for (const auto& e : x.edges()) {
    std::size_t i = x.index_of(e.a), j = x.index_of(e.b);
    adj[i][j] += e.weight;
    adj[j][i] += e.weight;
  }
  std::vector<double> k(n, 0.0);
  double two_m = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      k[i] += adj[i][j];
      two_m += adj[i][j];
    }
  if (two_m == 0.0)
    return 0.0;
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (community[i] == community[j])
        q += adj[i][j] - resolution * k[i] * k[j] / two_m;
  return q / two_m;
}

// Enumerates all set partitions of {0..n-1} as restricted growth strings.
template <typename Fn> void for_each_partition(std::size_t n, Fn&& fn) {
  std::vector<std::uint32_t> assignment(n, 0);
  auto recurse = [&](auto&& self, std::size_t i, std::uint32_t max_used) -> void {
    if (i == n) {
      fn(assignment);
      return;
    }
    for (std::uint32_t c = 0; c <= max_used + 1 && c < n; ++c) {
      assignment[i] = c;
      self(self, i + 1, std::max(max_used, c));
    }
  };
  if (n > 0) {
    assignment[0] = 0;
    recurse(recurse, 1, 0);
  } else {
    fn(assignment);
  }
}

// Random directed multigraph rows; target handles overlap the engager handle
// space so engagers can appear as nodes.
inline std::vector<InteractionRecord> random_rows(std::mt19937_64& rng,
                                                  std::size_t max_engagers,
                                                  std::size_t max_targets,
                                                  std::size_t max_rows) {
  std::size_t n_engagers = 2 + rng() % max_engagers;
  std::size_t n_targets = 2 + rng() % max_targets;
  std::size_t n_rows = 1 + rng() % max_rows;
  char buf[16];
  std::vector<InteractionRecord> rows;
  for (std::size_t i = 0; i < n_rows; ++i) {
    std::snprintf(buf, sizeof(buf), "a%03zu", rng() % n_engagers);
    std::string engager = buf;
    std::string target;
    if (rng() % 5 == 0) { // engager doubling as a receiving node
      std::snprintf(buf, sizeof(buf), "a%03zu", rng() % n_engagers);
      target = buf;
    } else {
      std::snprintf(buf, sizeof(buf), "b%03zu", rng() % n_targets);
      target = buf;
    }
    rows.push_back({engager, target, 1 + rng() % 3, std::nullopt});
  }
  return rows;
}

class TempDir {
public:
  explicit TempDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("coengage_test_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }
  const std::filesystem::path& path() const { return path_; }

private:
  std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace testutil
