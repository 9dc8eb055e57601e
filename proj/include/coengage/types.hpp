#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>

#include "coengage/common.hpp"

namespace coengage {

// Dense ordinal assigned by the interner; ordinals follow lexicographic
// handle order so runs are reproducible regardless of input row order.
using NodeId = std::uint32_t;

// One engagement event or a pre-aggregated (engager, target, count) row.
struct InteractionRecord {
  std::string engager;
  std::string target;
  std::uint64_t count = 1;
  std::optional<std::int64_t> timestamp; // UTC epoch seconds
};

struct NodeAttributes {
  std::string handle;
  std::optional<std::string> display_label;
  std::optional<std::uint64_t> followers;
  std::optional<std::uint64_t> following;
  std::optional<bool> suspended;
  std::optional<std::string> cluster_hint;
};

using AttributeMap = std::unordered_map<std::string, NodeAttributes>;

// Audience filters: an edge (i, j) exists when at least n engagers directed
// at least s engagements at both i and j.
struct ProjectionParams {
  std::uint32_t n = 1;
  std::uint32_t s = 1;

  void validate() const {
    if (n < 1)
      throw ValidationError("projection parameter n must be >= 1");
    if (s < 1)
      throw ValidationError("projection parameter s must be >= 1");
  }
};

} // namespace coengage
