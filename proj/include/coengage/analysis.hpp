#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coengage/clustering.hpp"
#include "coengage/coengagement_graph.hpp"
#include "coengage/engagement_graph.hpp"
#include "coengage/types.hpp"

namespace coengage {

// Cross-cluster connection shares per node and label pair. Each cross edge
// is attributed to both endpoints, so shares for one pair sum to 2. Both
// edge-count and weight-based shares are reported since either denominator
// is defensible.
struct BridgeRow {
  std::string node;
  std::string label_a; // label_a < label_b
  std::string label_b;
  std::uint64_t cross_edges = 0;
  double edge_share = 0.0;
  std::uint64_t cross_weight = 0;
  double weight_share = 0.0;
};
std::vector<BridgeRow> bridge_table(const CoengagementGraph& x, const ClusterAssignment& labeled);

// Nodes with exactly one incident edge whose neighbor has weighted degree
// >= hub_min_weighted_degree, grouped by hub.
struct SatelliteRow {
  std::string satellite;
  std::string hub;
  std::uint32_t edge_weight = 0;
  std::uint64_t hub_weighted_degree = 0;
};
std::vector<SatelliteRow> satellites(const CoengagementGraph& x,
                                     std::uint64_t hub_min_weighted_degree);

// Follower/following parity per labeled community. Members with
// following == 0 are excluded from ratios and counted; members without both
// counts are reported as missing.
struct FollowbackRow {
  std::uint32_t community = 0;
  std::string label;
  std::size_t members = 0;
  std::size_t with_ratio = 0;
  std::size_t excluded_zero_following = 0;
  std::size_t missing_attributes = 0;
  double median_ratio = 0.0;        // defined when with_ratio > 0
  double near_parity_fraction = 0.0; // ratio within [1-eps, 1+eps]
};
std::vector<FollowbackRow> followback_metrics(const CoengagementGraph& x,
                                              const AttributeMap& attrs,
                                              const ClusterAssignment& labeled,
                                              double epsilon = 0.2);

// For each labeled community: of the engagers qualifying its internal edges,
// the fraction that are themselves nodes of x. Communities without internal
// edges report an undefined fraction.
struct SelfAudienceRow {
  std::uint32_t community = 0;
  std::string label;
  std::size_t qualifying_engagers = 0;
  std::size_t also_projected = 0;
  bool defined = false;
  double fraction = 0.0;
};
std::vector<SelfAudienceRow> self_audience_overlap(const EngagementGraph& g,
                                                   const CoengagementGraph& x,
                                                   const ClusterAssignment& labeled,
                                                   ProjectionParams params);

// Boolean-attribute rate per labeled community (e.g. suspended). Members
// whose attribute is unknown are counted separately; rate is undefined when
// no member has a known value.
struct OverlayRow {
  std::uint32_t community = 0;
  std::string label;
  std::size_t members = 0;
  std::size_t true_count = 0;
  std::size_t known = 0;
  std::size_t unknown = 0;
  bool defined = false;
  double rate = 0.0;
};
std::vector<OverlayRow> overlay_rates(const CoengagementGraph& x, const ClusterAssignment& labeled,
                                      const AttributeMap& attrs, const std::string& attribute);

struct CoverageStats {
  double top_k_fraction = 0.0; // of g's k most-engaged nodes, share present in x
  double retweet_share = 0.0;  // weight received by x's nodes over g's total
  std::uint32_t k_used = 0;
  bool clamped = false;
};
CoverageStats coverage_stats(const EngagementGraph& g, const CoengagementGraph& x,
                             std::uint32_t k);

enum class Bucket { day, week };

// Engagements of one focal account over time, split by how each engager
// relates to the labeled clusters across the whole dataset (engagements of
// the focal account itself excluded from classification). Classes are
// exclusive-<label>, mixed, unaffiliated.
struct TimeseriesRow {
  std::int64_t bucket_start = 0; // UTC epoch seconds
  std::string engager_class;
  std::uint64_t count = 0;
};
struct TimeseriesResult {
  std::vector<TimeseriesRow> rows; // sorted by (bucket_start, class)
  std::size_t untimestamped_engagements = 0;
  std::vector<std::string> notices;
};
TimeseriesResult audience_timeseries(std::span<const InteractionRecord> rows,
                                     const std::string& focal, const CoengagementGraph& x,
                                     const ClusterAssignment& labeled, Bucket bucket);

// CSV writers for the tables above (schemas documented in the README).
void write_bridge_csv(const std::vector<BridgeRow>& rows, const std::string& path);
void write_satellite_csv(const std::vector<SatelliteRow>& rows, const std::string& path);
void write_followback_csv(const std::vector<FollowbackRow>& rows, const std::string& path);
void write_self_audience_csv(const std::vector<SelfAudienceRow>& rows, const std::string& path);
void write_overlay_csv(const std::vector<OverlayRow>& rows, const std::string& path);
void write_timeseries_csv(const TimeseriesResult& result, const std::string& path);

} // namespace coengage
