#pragma once

#include <string>

#include "coengage/clustering.hpp"
#include "coengage/coengagement_graph.hpp"
#include "coengage/types.hpp"

#include "json.hpp"

namespace coengage {

// header source,target,weight; rows sorted by (source, target) ordinal.
// An empty graph produces a header-only file.
void write_edge_csv(const CoengagementGraph& x, const std::string& path);

// GEXF 1.2, undirected static graph, nodes and edges in ordinal order.
// Node attvalues: weighted_degree always; cluster when clusters given;
// suspended when attrs are given and known. Output is byte-deterministic.
// The graph must be non-empty.
void write_gexf(const CoengagementGraph& x, const ClusterAssignment* clusters,
                const AttributeMap* attrs, const std::string& path);

// Pretty-printed JSON with lexicographically ordered keys.
void write_summary_json(const nlohmann::json& payload, const std::string& path);

std::string xml_escape(std::string_view text);

} // namespace coengage
