#pragma once

#include <map>
#include <string>
#include <vector>

#include "coengage/coengagement_graph.hpp"
#include "coengage/engagement_graph.hpp"
#include "coengage/types.hpp"

#include "json.hpp"

namespace coengage {

enum class InputFormat { csv, jsonl };

struct IngestOptions {
  InputFormat format = InputFormat::csv;
  bool keep_self_loops = false;
  bool strict = false;    // abort on the first malformed row
  bool keep_rows = false; // retain records (time-series ops need them)
};

struct RowIssue {
  std::size_t line; // 1-based, header included
  std::string message;
};

struct IngestReport {
  std::size_t total_rows = 0; // data rows seen (header and blank lines excluded)
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t dropped_self_loops = 0;
  std::size_t aggregated_edges = 0;
  std::vector<RowIssue> issues; // capped at kMaxStoredIssues entries
  std::size_t issues_omitted = 0;

  static constexpr std::size_t kMaxStoredIssues = 10000;
};

struct IngestResult {
  EngagementGraph graph;
  IngestReport report;
  std::vector<InteractionRecord> rows; // populated only with keep_rows
};

// CSV header: engager,target[,count][,timestamp] (count/timestamp by name,
// either order). JSONL: one object per line with the same fields.
IngestResult read_interactions(const std::string& path, const IngestOptions& opts = {});

struct AttributeReport {
  std::size_t total_rows = 0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t duplicate_handles = 0;
  std::vector<RowIssue> issues;
};

struct AttributeResult {
  AttributeMap attributes;
  AttributeReport report;
};

// CSV header: node,label,followers,following,suspended. Empty cells mean the
// attribute is absent; duplicate handles resolve last-wins with a warning.
AttributeResult read_attributes(const std::string& path);

// label -> sorted distinct handles; CSV header: label,handle
using LandmarkSet = std::map<std::string, std::vector<std::string>>;
LandmarkSet read_landmarks(const std::string& path);

// Reads an edge CSV written by write_edge_csv (header source,target,weight)
// back into a coengagement graph. params is recorded as given.
CoengagementGraph read_coengagement_edges(const std::string& path,
                                          ProjectionParams params = {1, 1});

nlohmann::json to_json(const IngestReport& report);
nlohmann::json to_json(const AttributeReport& report);

} // namespace coengage
