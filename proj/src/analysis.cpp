#include "coengage/analysis.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "coengage/csv.hpp"

namespace coengage {

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

// members of each labeled community, by compact node index
std::map<std::uint32_t, std::vector<std::size_t>>
labeled_members(const CoengagementGraph& x, const ClusterAssignment& labeled) {
  std::map<std::uint32_t, std::vector<std::size_t>> members;
  for (const auto& [community, label] : labeled.labels)
    members[community] = {};
  for (std::size_t i = 0; i < x.node_count(); ++i) {
    auto it = members.find(labeled.community[i]);
    if (it != members.end())
      it->second.push_back(i);
  }
  return members;
}

} // namespace

std::vector<BridgeRow> bridge_table(const CoengagementGraph& x, const ClusterAssignment& labeled) {
  struct PairTotals {
    std::uint64_t edges = 0;
    std::uint64_t weight = 0;
  };
  std::map<std::pair<std::string, std::string>, PairTotals> totals;
  std::map<std::pair<std::string, std::string>, std::map<std::size_t, PairTotals>> per_node;

  for (const auto& e : x.edges()) {
    std::size_t ia = x.index_of(e.a), ib = x.index_of(e.b);
    auto la = labeled.labels.find(labeled.community[ia]);
    auto lb = labeled.labels.find(labeled.community[ib]);
    if (la == labeled.labels.end() || lb == labeled.labels.end())
      continue;
    if (la->second == lb->second)
      continue;
    std::pair<std::string, std::string> key =
        la->second < lb->second ? std::make_pair(la->second, lb->second)
                                : std::make_pair(lb->second, la->second);
    auto& t = totals[key];
    t.edges += 1;
    t.weight += e.weight;
    for (std::size_t node : {ia, ib}) { // each cross edge attributed to both endpoints
      auto& nt = per_node[key][node];
      nt.edges += 1;
      nt.weight += e.weight;
    }
  }

  std::vector<BridgeRow> rows;
  for (const auto& [key, nodes] : per_node) {
    const auto& t = totals[key];
    for (const auto& [node, nt] : nodes) {
      BridgeRow row;
      row.node = x.handle_at(node);
      row.label_a = key.first;
      row.label_b = key.second;
      row.cross_edges = nt.edges;
      row.edge_share = static_cast<double>(nt.edges) / static_cast<double>(t.edges);
      row.cross_weight = nt.weight;
      row.weight_share = static_cast<double>(nt.weight) / static_cast<double>(t.weight);
      rows.push_back(std::move(row));
    }
  }
  std::sort(rows.begin(), rows.end(), [](const BridgeRow& a, const BridgeRow& b) {
    if (a.label_a != b.label_a)
      return a.label_a < b.label_a;
    if (a.label_b != b.label_b)
      return a.label_b < b.label_b;
    if (a.cross_edges != b.cross_edges)
      return a.cross_edges > b.cross_edges;
    return a.node < b.node;
  });
  return rows;
}

std::vector<SatelliteRow> satellites(const CoengagementGraph& x,
                                     std::uint64_t hub_min_weighted_degree) {
  struct Entry {
    std::size_t hub;
    std::size_t satellite;
    std::uint32_t weight;
  };
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < x.node_count(); ++i) {
    if (x.degree(i) != 1)
      continue;
    const auto& nb = x.neighbors(i)[0];
    if (x.weighted_degree_at(nb.index) >= hub_min_weighted_degree)
      entries.push_back({nb.index, i, nb.weight});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.hub != b.hub ? a.hub < b.hub : a.satellite < b.satellite;
  });
  std::vector<SatelliteRow> rows;
  rows.reserve(entries.size());
  for (const auto& e : entries)
    rows.push_back({x.handle_at(e.satellite), x.handle_at(e.hub), e.weight,
                    x.weighted_degree_at(e.hub)});
  return rows;
}

std::vector<FollowbackRow> followback_metrics(const CoengagementGraph& x,
                                              const AttributeMap& attrs,
                                              const ClusterAssignment& labeled, double epsilon) {
  if (epsilon < 0.0)
    throw ValidationError("parity epsilon must be non-negative");
  std::vector<FollowbackRow> rows;
  for (const auto& [community, members] : labeled_members(x, labeled)) {
    FollowbackRow row;
    row.community = community;
    row.label = labeled.labels.at(community);
    row.members = members.size();
    std::vector<double> ratios;
    for (std::size_t i : members) {
      auto it = attrs.find(x.handle_at(i));
      if (it == attrs.end() || !it->second.followers || !it->second.following) {
        row.missing_attributes++;
        continue;
      }
      if (*it->second.following == 0) {
        row.excluded_zero_following++;
        continue;
      }
      ratios.push_back(static_cast<double>(*it->second.followers) /
                       static_cast<double>(*it->second.following));
    }
    if (ratios.empty() && row.excluded_zero_following == 0)
      continue; // no attributed members; callers surface the omission
    row.with_ratio = ratios.size();
    if (!ratios.empty()) {
      std::sort(ratios.begin(), ratios.end());
      std::size_t mid = ratios.size() / 2;
      row.median_ratio =
          ratios.size() % 2 ? ratios[mid] : (ratios[mid - 1] + ratios[mid]) / 2.0;
      std::size_t near = 0;
      for (double r : ratios)
        if (r >= 1.0 - epsilon && r <= 1.0 + epsilon)
          ++near;
      row.near_parity_fraction = static_cast<double>(near) / static_cast<double>(ratios.size());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<SelfAudienceRow> self_audience_overlap(const EngagementGraph& g,
                                                   const CoengagementGraph& x,
                                                   const ClusterAssignment& labeled,
                                                   ProjectionParams params) {
  params.validate();
  std::vector<SelfAudienceRow> rows;
  for (const auto& [community, members] : labeled_members(x, labeled)) {
    SelfAudienceRow row;
    row.community = community;
    row.label = labeled.labels.at(community);

    std::unordered_set<std::size_t> member_set(members.begin(), members.end());
    std::unordered_set<NodeId> qualifying;
    for (std::size_t i : members) {
      NodeId ordinal_i = x.ordinal_at(i);
      for (const auto& nb : x.neighbors(i)) {
        if (nb.index < i || !member_set.count(nb.index))
          continue; // each internal edge once
        NodeId ordinal_j = x.ordinal_at(nb.index);
        // engagers qualifying both endpoints; in_edges are engager-sorted
        auto ei = g.in_edges(ordinal_i);
        auto ej = g.in_edges(ordinal_j);
        std::size_t a = 0, b = 0;
        while (a < ei.size() && b < ej.size()) {
          if (ei[a].engager == ej[b].engager) {
            if (ei[a].weight >= params.s && ej[b].weight >= params.s)
              qualifying.insert(ei[a].engager);
            ++a;
            ++b;
          } else if (ei[a].engager < ej[b].engager) {
            ++a;
          } else {
            ++b;
          }
        }
      }
    }
    row.qualifying_engagers = qualifying.size();
    if (!qualifying.empty()) {
      row.defined = true;
      for (NodeId u : qualifying)
        if (x.contains(u))
          row.also_projected++;
      row.fraction =
          static_cast<double>(row.also_projected) / static_cast<double>(row.qualifying_engagers);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<OverlayRow> overlay_rates(const CoengagementGraph& x, const ClusterAssignment& labeled,
                                      const AttributeMap& attrs, const std::string& attribute) {
  if (attribute != "suspended")
    throw ValidationError("unknown boolean attribute: " + attribute);
  std::vector<OverlayRow> rows;
  for (const auto& [community, members] : labeled_members(x, labeled)) {
    OverlayRow row;
    row.community = community;
    row.label = labeled.labels.at(community);
    row.members = members.size();
    for (std::size_t i : members) {
      auto it = attrs.find(x.handle_at(i));
      if (it == attrs.end() || !it->second.suspended) {
        row.unknown++;
        continue;
      }
      row.known++;
      if (*it->second.suspended)
        row.true_count++;
    }
    if (row.known > 0) {
      row.defined = true;
      row.rate = static_cast<double>(row.true_count) / static_cast<double>(row.known);
    }
    rows.push_back(row);
  }
  return rows;
}

CoverageStats coverage_stats(const EngagementGraph& g, const CoengagementGraph& x,
                             std::uint32_t k) {
  if (k < 1)
    throw ValidationError("coverage k must be >= 1");
  CoverageStats stats;
  const std::size_t n = g.node_count();
  if (n == 0)
    return stats;
  stats.k_used = static_cast<std::uint32_t>(std::min<std::size_t>(k, n));
  stats.clamped = stats.k_used < k;

  std::vector<NodeId> ranking(n);
  for (NodeId i = 0; i < n; ++i)
    ranking[i] = i;
  std::sort(ranking.begin(), ranking.end(), [&](NodeId a, NodeId b) {
    std::uint64_t da = g.weighted_in_degree(a), db = g.weighted_in_degree(b);
    return da != db ? da > db : a < b; // rank ties resolved by ordinal
  });
  std::size_t present = 0;
  for (std::uint32_t i = 0; i < stats.k_used; ++i)
    if (x.contains(ranking[i]))
      ++present;
  stats.top_k_fraction = static_cast<double>(present) / static_cast<double>(stats.k_used);

  if (g.total_weight() > 0) {
    std::uint64_t received = 0;
    for (NodeId v : x.nodes())
      received += g.weighted_in_degree(v);
    stats.retweet_share =
        static_cast<double>(received) / static_cast<double>(g.total_weight());
  }
  return stats;
}

namespace {

std::int64_t bucket_start_for(std::int64_t ts, Bucket bucket) {
  std::int64_t days = ts / 86400;
  if (ts < 0 && ts % 86400 != 0)
    --days;
  if (bucket == Bucket::week) {
    // 1970-01-01 was a Thursday; weeks start on Monday
    std::int64_t weekday = ((days + 3) % 7 + 7) % 7;
    days -= weekday;
  }
  return days * 86400;
}

} // namespace

TimeseriesResult audience_timeseries(std::span<const InteractionRecord> rows,
                                     const std::string& focal, const CoengagementGraph& x,
                                     const ClusterAssignment& labeled, Bucket bucket) {
  bool focal_seen = false;
  std::unordered_set<std::string> engagers_of_focal;
  for (const auto& r : rows) {
    if (r.target == focal) {
      focal_seen = true;
      engagers_of_focal.insert(r.engager);
    } else if (r.engager == focal) {
      focal_seen = true;
    }
  }
  if (!focal_seen)
    throw NotFoundError("focal handle not present in data: " + focal);

  // label sets per engager, from everything they engaged besides the focal
  std::unordered_map<std::string, std::set<std::string>> engaged_labels;
  for (const auto& r : rows) {
    if (r.target == focal || !engagers_of_focal.count(r.engager))
      continue;
    auto idx = x.index_of_handle(r.target);
    if (!idx)
      continue;
    auto label = labeled.labels.find(labeled.community[*idx]);
    if (label == labeled.labels.end())
      continue;
    engaged_labels[r.engager].insert(label->second);
  }
  auto class_of = [&](const std::string& engager) -> std::string {
    auto it = engaged_labels.find(engager);
    if (it == engaged_labels.end() || it->second.empty())
      return "unaffiliated";
    if (it->second.size() > 1)
      return "mixed";
    return "exclusive-" + *it->second.begin();
  };

  TimeseriesResult result;
  std::map<std::pair<std::int64_t, std::string>, std::uint64_t> series;
  for (const auto& r : rows) {
    if (r.target != focal)
      continue;
    if (!r.timestamp) {
      result.untimestamped_engagements += r.count;
      continue;
    }
    series[{bucket_start_for(*r.timestamp, bucket), class_of(r.engager)}] += r.count;
  }
  for (const auto& [key, count] : series)
    result.rows.push_back({key.first, key.second, count});
  if (result.rows.empty())
    result.notices.push_back("no timestamped engagements of " + focal + "; series is empty");
  return result;
}

void write_bridge_csv(const std::vector<BridgeRow>& rows, const std::string& path) {
  FileWriter out(path);
  std::string buf = "node,label_a,label_b,cross_edges,edge_share,cross_weight,weight_share\n";
  for (const auto& r : rows) {
    buf += csv_escape(r.node) + "," + csv_escape(r.label_a) + "," + csv_escape(r.label_b) + "," +
           std::to_string(r.cross_edges) + "," + format_double(r.edge_share) + "," +
           std::to_string(r.cross_weight) + "," + format_double(r.weight_share) + "\n";
    out.append(buf);
  }
  out.append(buf, true);
  out.close();
}

void write_satellite_csv(const std::vector<SatelliteRow>& rows, const std::string& path) {
  FileWriter out(path);
  std::string buf = "satellite,hub,edge_weight,hub_weighted_degree\n";
  for (const auto& r : rows) {
    buf += csv_escape(r.satellite) + "," + csv_escape(r.hub) + "," +
           std::to_string(r.edge_weight) + "," + std::to_string(r.hub_weighted_degree) + "\n";
    out.append(buf);
  }
  out.append(buf, true);
  out.close();
}

void write_followback_csv(const std::vector<FollowbackRow>& rows, const std::string& path) {
  FileWriter out(path);
  std::string buf = "community,label,members,with_ratio,median_ratio,near_parity_fraction,"
                    "excluded_zero_following,missing_attributes\n";
  for (const auto& r : rows) {
    buf += std::to_string(r.community) + "," + csv_escape(r.label) + "," +
           std::to_string(r.members) + "," + std::to_string(r.with_ratio) + "," +
           (r.with_ratio ? format_double(r.median_ratio) : std::string()) + "," +
           (r.with_ratio ? format_double(r.near_parity_fraction) : std::string()) + "," +
           std::to_string(r.excluded_zero_following) + "," +
           std::to_string(r.missing_attributes) + "\n";
    out.append(buf);
  }
  out.append(buf, true);
  out.close();
}

void write_self_audience_csv(const std::vector<SelfAudienceRow>& rows, const std::string& path) {
  FileWriter out(path);
  std::string buf = "community,label,qualifying_engagers,also_projected,fraction\n";
  for (const auto& r : rows) {
    buf += std::to_string(r.community) + "," + csv_escape(r.label) + "," +
           std::to_string(r.qualifying_engagers) + "," + std::to_string(r.also_projected) + "," +
           (r.defined ? format_double(r.fraction) : std::string()) + "\n";
    out.append(buf);
  }
  out.append(buf, true);
  out.close();
}

void write_overlay_csv(const std::vector<OverlayRow>& rows, const std::string& path) {
  FileWriter out(path);
  std::string buf = "community,label,members,true_count,known,unknown,rate\n";
  for (const auto& r : rows) {
    buf += std::to_string(r.community) + "," + csv_escape(r.label) + "," +
           std::to_string(r.members) + "," + std::to_string(r.true_count) + "," +
           std::to_string(r.known) + "," + std::to_string(r.unknown) + "," +
           (r.defined ? format_double(r.rate) : std::string()) + "\n";
    out.append(buf);
  }
  out.append(buf, true);
  out.close();
}

void write_timeseries_csv(const TimeseriesResult& result, const std::string& path) {
  FileWriter out(path);
  std::string buf = "bucket_start,engager_class,count\n";
  for (const auto& r : result.rows) {
    buf += format_utc_date(r.bucket_start) + "," + csv_escape(r.engager_class) + "," +
           std::to_string(r.count) + "\n";
    out.append(buf);
  }
  out.append(buf, true);
  out.close();
}

} // namespace coengage
