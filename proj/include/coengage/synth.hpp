#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coengage/types.hpp"

#include "json.hpp"

namespace coengage {

// Deterministic fixture generator. Threshold-critical quantities (audience
// sizes, per-target counts) are exact, so the projection edges implied at
// any (n, s) are computable without running the pipeline; randomness only
// jitters follower counts inside fixed bands.
struct ScenarioSpec {
  struct Cluster {
    std::string label;
    std::uint32_t influencers = 0;
    std::uint32_t audience = 0;
    std::uint32_t count_per_target = 1; // engagements per (member, influencer)
    double suspended_rate = 0.0;        // applied to influencers
  };
  struct BridgeAttachment {
    std::string label;
    std::uint32_t overlap = 0; // the cluster's first `overlap` members engage the bridge
  };
  struct Bridge {
    std::string handle;
    std::vector<BridgeAttachment> attachments;
  };
  struct FollowbackGroup {
    std::string label;
    std::uint32_t size = 0;           // members, each engaging every other member
    std::uint32_t internal_count = 1; // engagements per (member, member) pair
    std::string attached_to;          // cluster label; members also engage its last influencer
    double suspended_rate = 0.0;
  };
  struct SatelliteGroup {
    std::string hub; // any handle; usually an influencer
    std::uint32_t count = 0;
    std::uint32_t audience_each = 1;    // disjoint engagers per satellite
    std::uint32_t count_per_target = 1; // engagements at both the satellite and the hub
  };

  std::uint64_t seed = 0;
  std::vector<Cluster> clusters;
  std::vector<Bridge> bridges;
  std::vector<FollowbackGroup> followback_groups;
  std::vector<SatelliteGroup> satellites;
  std::uint64_t noise_rows = 0; // one-target engagers cycling over influencers

  static ScenarioSpec from_json(const nlohmann::json& doc);
  void validate() const;

  std::string influencer_handle(const std::string& label, std::uint32_t i) const;
  std::string audience_handle(const std::string& label, std::uint32_t i) const;
  std::string member_handle(const std::string& label, std::uint32_t i) const;
  std::string satellite_handle(const std::string& hub, std::uint32_t i) const;
};

struct SynthResult {
  std::string interactions_path;
  std::string attributes_path;
  std::string landmarks_path;
  std::string manifest_path;
  nlohmann::json manifest;
  std::uint64_t interaction_rows = 0;
  std::uint64_t account_count = 0;
};

// Writes interactions.csv, attributes.csv, landmarks.csv, manifest.json.
SynthResult generate(const ScenarioSpec& spec, const std::string& out_dir);

// The edges the projection of the generated data must contain at (n, s) —
// exactly, with matching weights.
struct PredictedEdge {
  std::string a; // a < b lexicographically
  std::string b;
  std::uint32_t weight;
};
std::vector<PredictedEdge> predicted_edges(const ScenarioSpec& spec, std::uint32_t n,
                                           std::uint32_t s);

} // namespace coengage
