#include "coengage/sweep.hpp"

#include <algorithm>

#include "coengage/csv.hpp"
#include "coengage/parallel.hpp"
#include "coengage/projection.hpp"

namespace coengage {

namespace {

void check_values(const std::vector<std::uint32_t>& values, const char* name) {
  if (values.empty())
    throw ValidationError(std::string(name) + " list must be non-empty");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 1)
      throw ValidationError(std::string(name) + " values must be positive");
    if (i > 0 && values[i] <= values[i - 1])
      throw ValidationError(std::string(name) + " values must be strictly ascending");
  }
}

ExistenceCell evaluate_cell(const EngagementGraph& g, std::uint32_t n, std::uint32_t s,
                            const LandmarkSet& landmarks, double resolution,
                            std::uint64_t cell_seed) {
  ExistenceCell cell;
  cell.n = n;
  cell.s = s;
  CoengagementGraph x = project(g, {n, s});
  cell.node_count = x.node_count();
  cell.edge_count = x.edge_count();

  if (x.empty()) {
    for (const auto& [label, handles] : landmarks)
      cell.absent.push_back(label);
    return cell;
  }

  ClusterAssignment assignment = louvain(x, resolution, cell_seed);
  auto found = landmark_communities(x, assignment, landmarks);

  for (const auto& [label, handles] : landmarks) {
    bool present = false;
    bool pure = true;
    for (const auto& [community, labels] : found) {
      if (!labels.count(label))
        continue;
      present = true;
      if (labels.size() > 1)
        pure = false; // shares a community with another label's landmark
    }
    if (!present)
      cell.absent.push_back(label);
    else if (pure)
      cell.salient.push_back(label);
    else
      cell.subsumed.push_back(label);
  }
  return cell;
}

} // namespace

ExistenceMap sweep(const EngagementGraph& g, const std::vector<std::uint32_t>& n_values,
                   const std::vector<std::uint32_t>& s_values, const LandmarkSet& landmarks,
                   double resolution, std::uint64_t seed, unsigned threads) {
  check_values(n_values, "n");
  check_values(s_values, "s");

  ExistenceMap map;
  const std::size_t n_cells = n_values.size() * s_values.size();
  map.cells.resize(n_cells);
  parallel_chunks(n_cells, 1, threads, [&](std::size_t cell_index, std::size_t, std::size_t) {
    std::uint32_t n = n_values[cell_index / s_values.size()];
    std::uint32_t s = s_values[cell_index % s_values.size()];
    map.cells[cell_index] =
        evaluate_cell(g, n, s, landmarks, resolution, seed + cell_index);
  });
  return map;
}

void write_existence_csv(const ExistenceMap& map, const std::string& path) {
  FileWriter out(path);
  std::string buf = "n,s,node_count,edge_count,salient_labels,absent_labels,subsumed_labels\n";
  auto join = [](const std::vector<std::string>& labels) {
    std::string joined;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (i)
        joined += ';';
      joined += labels[i];
    }
    return csv_escape(joined);
  };
  for (const auto& cell : map.cells) {
    buf += std::to_string(cell.n) + "," + std::to_string(cell.s) + "," +
           std::to_string(cell.node_count) + "," + std::to_string(cell.edge_count) + "," +
           join(cell.salient) + "," + join(cell.absent) + "," + join(cell.subsumed) + "\n";
    out.append(buf);
  }
  out.append(buf, true);
  out.close();
}

} // namespace coengage
