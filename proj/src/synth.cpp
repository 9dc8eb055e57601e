#include "coengage/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <set>
#include <unordered_set>

#include "coengage/csv.hpp"

namespace coengage {

namespace {

struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

std::string indexed(const std::string& prefix, std::uint32_t i, int width) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%0*u", width, i);
  return prefix + buf;
}

} // namespace

std::string ScenarioSpec::influencer_handle(const std::string& label, std::uint32_t i) const {
  return indexed(label + "_inf_", i, 4);
}
std::string ScenarioSpec::audience_handle(const std::string& label, std::uint32_t i) const {
  return indexed(label + "_aud_", i, 7);
}
std::string ScenarioSpec::member_handle(const std::string& label, std::uint32_t i) const {
  return indexed(label + "_m_", i, 4);
}
std::string ScenarioSpec::satellite_handle(const std::string& hub, std::uint32_t i) const {
  return indexed(hub + "_sat_", i, 4);
}

ScenarioSpec ScenarioSpec::from_json(const nlohmann::json& doc) {
  if (!doc.is_object())
    throw ValidationError("scenario spec must be a JSON object");
  ScenarioSpec spec;
  spec.seed = doc.value("seed", 0ull);
  spec.noise_rows = doc.value("noise_rows", 0ull);
  for (const auto& c : doc.value("clusters", nlohmann::json::array())) {
    Cluster cluster;
    cluster.label = c.at("label").get<std::string>();
    cluster.influencers = c.at("influencers").get<std::uint32_t>();
    cluster.audience = c.at("audience").get<std::uint32_t>();
    cluster.count_per_target = c.value("count_per_target", 1u);
    cluster.suspended_rate = c.value("suspended_rate", 0.0);
    spec.clusters.push_back(std::move(cluster));
  }
  for (const auto& b : doc.value("bridges", nlohmann::json::array())) {
    Bridge bridge;
    bridge.handle = b.at("handle").get<std::string>();
    for (const auto& a : b.at("attachments"))
      bridge.attachments.push_back(
          {a.at("label").get<std::string>(), a.at("overlap").get<std::uint32_t>()});
    spec.bridges.push_back(std::move(bridge));
  }
  for (const auto& f : doc.value("followback_groups", nlohmann::json::array())) {
    FollowbackGroup group;
    group.label = f.at("label").get<std::string>();
    group.size = f.at("size").get<std::uint32_t>();
    group.internal_count = f.at("internal_count").get<std::uint32_t>();
    group.attached_to = f.value("attached_to", std::string());
    group.suspended_rate = f.value("suspended_rate", 0.0);
    spec.followback_groups.push_back(std::move(group));
  }
  for (const auto& s : doc.value("satellites", nlohmann::json::array())) {
    SatelliteGroup group;
    group.hub = s.at("hub").get<std::string>();
    group.count = s.at("count").get<std::uint32_t>();
    group.audience_each = s.value("audience_each", 1u);
    group.count_per_target = s.value("count_per_target", 1u);
    spec.satellites.push_back(std::move(group));
  }
  spec.validate();
  return spec;
}

void ScenarioSpec::validate() const {
  std::set<std::string> labels;
  std::unordered_set<std::string> planted_targets;
  for (const auto& c : clusters) {
    if (c.label.empty())
      throw ValidationError("cluster label must be non-empty");
    if (!labels.insert(c.label).second)
      throw ValidationError("duplicate label: " + c.label);
    if (c.count_per_target < 1)
      throw ValidationError("count_per_target must be >= 1 for cluster " + c.label);
    if (c.suspended_rate < 0.0 || c.suspended_rate > 1.0)
      throw ValidationError("suspended_rate must be in [0,1] for cluster " + c.label);
    for (std::uint32_t i = 0; i < c.influencers; ++i)
      planted_targets.insert(influencer_handle(c.label, i));
  }
  for (const auto& f : followback_groups) {
    if (f.label.empty())
      throw ValidationError("followback label must be non-empty");
    if (!labels.insert(f.label).second)
      throw ValidationError("duplicate label: " + f.label);
    if (f.size < 2)
      throw ValidationError("followback group " + f.label + " needs at least 2 members");
    if (f.internal_count < 1)
      throw ValidationError("internal_count must be >= 1 for group " + f.label);
    if (f.suspended_rate < 0.0 || f.suspended_rate > 1.0)
      throw ValidationError("suspended_rate must be in [0,1] for group " + f.label);
    if (!f.attached_to.empty()) {
      auto it = std::find_if(clusters.begin(), clusters.end(),
                             [&](const Cluster& c) { return c.label == f.attached_to; });
      if (it == clusters.end())
        throw ValidationError("followback group " + f.label + " attached to unknown label " +
                              f.attached_to);
      if (it->influencers == 0)
        throw ValidationError("followback group " + f.label +
                              " attached to cluster without influencers");
    }
    for (std::uint32_t i = 0; i < f.size; ++i)
      planted_targets.insert(member_handle(f.label, i));
  }
  std::set<std::string> bridge_handles;
  for (const auto& b : bridges) {
    if (b.handle.empty())
      throw ValidationError("bridge handle must be non-empty");
    if (!bridge_handles.insert(b.handle).second)
      throw ValidationError("duplicate bridge handle: " + b.handle);
    if (planted_targets.count(b.handle))
      throw ValidationError("bridge handle collides with a generated handle: " + b.handle);
    if (b.attachments.empty())
      throw ValidationError("bridge " + b.handle + " needs at least one attachment");
    std::set<std::string> seen;
    for (const auto& a : b.attachments) {
      auto it = std::find_if(clusters.begin(), clusters.end(),
                             [&](const Cluster& c) { return c.label == a.label; });
      if (it == clusters.end())
        throw ValidationError("bridge " + b.handle + " references unknown label " + a.label);
      if (!seen.insert(a.label).second)
        throw ValidationError("bridge " + b.handle + " attaches twice to " + a.label);
      if (a.overlap < 1 || a.overlap > it->audience)
        throw ValidationError("bridge " + b.handle + " overlap must be in [1, audience] for " +
                              a.label);
    }
  }
  for (const auto& s : satellites) {
    if (s.hub.empty())
      throw ValidationError("satellite hub handle must be non-empty");
    if (s.audience_each < 1 || s.count_per_target < 1)
      throw ValidationError("satellite audience_each and count_per_target must be >= 1");
  }
  if (noise_rows > 0) {
    bool any_influencer = false;
    for (const auto& c : clusters)
      any_influencer = any_influencer || c.influencers > 0;
    if (!any_influencer)
      throw ValidationError("noise rows need at least one influencer to target");
  }
}

namespace {

const ScenarioSpec::Cluster& cluster_by_label(const ScenarioSpec& spec, const std::string& label) {
  for (const auto& c : spec.clusters)
    if (c.label == label)
      return c;
  throw ValidationError("unknown cluster label: " + label);
}

std::string attachment_target(const ScenarioSpec& spec, const ScenarioSpec::FollowbackGroup& f) {
  const auto& cluster = cluster_by_label(spec, f.attached_to);
  return spec.influencer_handle(cluster.label, cluster.influencers - 1);
}

struct AttrRow {
  std::string handle;
  std::uint64_t followers;
  std::uint64_t following;
  bool suspended;
};

// log-uniform ratio kept outside [0.8, 1.2] so parity checks at epsilon 0.2
// separate mainstream accounts from followback accounts with certainty
double mainstream_ratio(SplitMix64& rng) {
  const double lo = -1.5, hi = 1.5;
  const double band_lo = std::log10(0.79), band_hi = std::log10(1.21);
  const double w1 = band_lo - lo, w2 = hi - band_hi;
  double u = rng.unit() * (w1 + w2);
  double e = u <= w1 ? lo + u : band_hi + (u - w1);
  return std::pow(10.0, e);
}

} // namespace

SynthResult generate(const ScenarioSpec& spec, const std::string& out_dir) {
  spec.validate();
  std::filesystem::create_directories(out_dir);

  SynthResult result;
  result.interactions_path = out_dir + "/interactions.csv";
  result.attributes_path = out_dir + "/attributes.csv";
  result.landmarks_path = out_dir + "/landmarks.csv";
  result.manifest_path = out_dir + "/manifest.json";

  SplitMix64 rng(spec.seed);
  std::set<std::string> accounts;
  std::uint64_t rows = 0;

  {
    FileWriter out(result.interactions_path);
    std::string buf = "engager,target\n";
    auto emit = [&](const std::string& engager, const std::string& target, std::uint32_t count) {
      for (std::uint32_t k = 0; k < count; ++k) {
        buf += engager;
        buf += ',';
        buf += target;
        buf += '\n';
        ++rows;
        out.append(buf);
      }
      accounts.insert(engager);
      accounts.insert(target);
    };

    for (const auto& c : spec.clusters) {
      for (std::uint32_t m = 0; m < c.audience; ++m) {
        std::string member = spec.audience_handle(c.label, m);
        for (std::uint32_t i = 0; i < c.influencers; ++i)
          emit(member, spec.influencer_handle(c.label, i), c.count_per_target);
      }
      for (std::uint32_t i = 0; i < c.influencers; ++i)
        accounts.insert(spec.influencer_handle(c.label, i));
    }
    for (const auto& b : spec.bridges) {
      for (const auto& a : b.attachments) {
        const auto& cluster = cluster_by_label(spec, a.label);
        for (std::uint32_t m = 0; m < a.overlap; ++m)
          emit(spec.audience_handle(a.label, m), b.handle, cluster.count_per_target);
      }
    }
    for (const auto& f : spec.followback_groups) {
      std::string target;
      if (!f.attached_to.empty())
        target = attachment_target(spec, f);
      for (std::uint32_t u = 0; u < f.size; ++u) {
        std::string engager = spec.member_handle(f.label, u);
        for (std::uint32_t v = 0; v < f.size; ++v) {
          if (u == v)
            continue;
          emit(engager, spec.member_handle(f.label, v), f.internal_count);
        }
        if (!target.empty())
          emit(engager, target, f.internal_count);
      }
    }
    for (const auto& s : spec.satellites) {
      for (std::uint32_t i = 0; i < s.count; ++i) {
        std::string sat = spec.satellite_handle(s.hub, i);
        for (std::uint32_t j = 0; j < s.audience_each; ++j) {
          std::string engager = indexed(sat + "_aud_", j, 4);
          emit(engager, sat, s.count_per_target);
          emit(engager, s.hub, s.count_per_target);
        }
      }
    }
    if (spec.noise_rows > 0) {
      std::vector<std::string> pool;
      for (const auto& c : spec.clusters)
        for (std::uint32_t i = 0; i < c.influencers; ++i)
          pool.push_back(spec.influencer_handle(c.label, i));
      for (std::uint64_t i = 0; i < spec.noise_rows; ++i)
        emit(indexed("noise_", static_cast<std::uint32_t>(i), 7), pool[i % pool.size()], 1);
    }
    out.append(buf, true);
    out.close();
  }

  // attributes for the handles that can appear as projected nodes
  std::vector<AttrRow> attr_rows;
  auto mainstream_attrs = [&](const std::string& handle, bool suspended) {
    std::uint64_t following = 500 + rng.next() % 9000;
    double ratio = mainstream_ratio(rng);
    std::uint64_t followers =
        static_cast<std::uint64_t>(std::llround(ratio * static_cast<double>(following)));
    attr_rows.push_back({handle, followers, following, suspended});
  };
  for (const auto& c : spec.clusters) {
    std::uint32_t suspended_count =
        static_cast<std::uint32_t>(std::llround(c.suspended_rate * c.influencers));
    for (std::uint32_t i = 0; i < c.influencers; ++i)
      mainstream_attrs(spec.influencer_handle(c.label, i), i < suspended_count);
  }
  for (const auto& b : spec.bridges)
    mainstream_attrs(b.handle, false);
  for (const auto& s : spec.satellites)
    for (std::uint32_t i = 0; i < s.count; ++i)
      mainstream_attrs(spec.satellite_handle(s.hub, i), false);
  for (const auto& f : spec.followback_groups) {
    std::uint32_t suspended_count =
        static_cast<std::uint32_t>(std::llround(f.suspended_rate * f.size));
    for (std::uint32_t i = 0; i < f.size; ++i) {
      std::uint64_t following = 2000 + 3 * i;
      double ratio = 0.95 + 0.1 * rng.unit();
      std::uint64_t followers =
          static_cast<std::uint64_t>(std::llround(ratio * static_cast<double>(following)));
      attr_rows.push_back({spec.member_handle(f.label, i), followers, following,
                           i < suspended_count});
    }
  }
  std::sort(attr_rows.begin(), attr_rows.end(),
            [](const AttrRow& a, const AttrRow& b) { return a.handle < b.handle; });
  {
    FileWriter out(result.attributes_path);
    std::string buf = "node,label,followers,following,suspended\n";
    for (const auto& r : attr_rows) {
      buf += csv_escape(r.handle) + ",," + std::to_string(r.followers) + "," +
             std::to_string(r.following) + "," + (r.suspended ? "true" : "false") + "\n";
      out.append(buf);
    }
    out.append(buf, true);
    out.close();
  }

  std::map<std::string, std::string> landmarks;
  for (const auto& c : spec.clusters)
    if (c.influencers > 0)
      landmarks[c.label] = spec.influencer_handle(c.label, 0);
  for (const auto& f : spec.followback_groups)
    landmarks[f.label] = spec.member_handle(f.label, 0);
  {
    FileWriter out(result.landmarks_path);
    std::string buf = "label,handle\n";
    for (const auto& [label, handle] : landmarks)
      buf += csv_escape(label) + "," + csv_escape(handle) + "\n";
    out.append(buf, true);
    out.close();
  }

  nlohmann::json manifest;
  manifest["seed"] = spec.seed;
  manifest["landmarks"] = landmarks;
  manifest["clusters"] = nlohmann::json::array();
  for (const auto& c : spec.clusters) {
    nlohmann::json influencers = nlohmann::json::array();
    for (std::uint32_t i = 0; i < c.influencers; ++i)
      influencers.push_back(spec.influencer_handle(c.label, i));
    manifest["clusters"].push_back({{"label", c.label},
                                    {"influencers", influencers},
                                    {"audience", c.audience},
                                    {"count_per_target", c.count_per_target},
                                    {"pair_weight", c.audience},
                                    {"s_max", c.count_per_target},
                                    {"suspended_rate", c.suspended_rate}});
  }
  manifest["bridges"] = nlohmann::json::array();
  for (const auto& b : spec.bridges) {
    nlohmann::json attachments = nlohmann::json::array();
    for (const auto& a : b.attachments) {
      const auto& cluster = cluster_by_label(spec, a.label);
      attachments.push_back(
          {{"label", a.label}, {"overlap", a.overlap}, {"s_max", cluster.count_per_target}});
    }
    manifest["bridges"].push_back({{"handle", b.handle}, {"attachments", attachments}});
  }
  manifest["followback_groups"] = nlohmann::json::array();
  for (const auto& f : spec.followback_groups) {
    nlohmann::json members = nlohmann::json::array();
    for (std::uint32_t i = 0; i < f.size; ++i)
      members.push_back(spec.member_handle(f.label, i));
    nlohmann::json entry = {{"label", f.label},
                            {"members", members},
                            {"internal_count", f.internal_count},
                            {"pair_weight", f.size - 2},
                            {"s_max", f.internal_count},
                            {"suspended_rate", f.suspended_rate}};
    if (!f.attached_to.empty()) {
      entry["attachment_target"] = attachment_target(spec, f);
      entry["attachment_weight"] = f.size - 1;
    }
    manifest["followback_groups"].push_back(entry);
  }
  manifest["satellites"] = nlohmann::json::array();
  for (const auto& s : spec.satellites) {
    nlohmann::json sats = nlohmann::json::array();
    for (std::uint32_t i = 0; i < s.count; ++i)
      sats.push_back(spec.satellite_handle(s.hub, i));
    manifest["satellites"].push_back({{"hub", s.hub},
                                      {"satellites", sats},
                                      {"edge_weight", s.audience_each},
                                      {"s_max", s.count_per_target}});
  }
  manifest["totals"] = {{"interaction_rows", rows}, {"accounts", accounts.size()}};
  result.manifest = manifest;
  result.interaction_rows = rows;
  result.account_count = accounts.size();

  {
    FileWriter out(result.manifest_path);
    out.write(manifest.dump(2));
    out.write("\n");
    out.close();
  }
  return result;
}

std::vector<PredictedEdge> predicted_edges(const ScenarioSpec& spec, std::uint32_t n,
                                           std::uint32_t s) {
  spec.validate();
  std::map<std::pair<std::string, std::string>, std::uint64_t> weights;
  auto add = [&](std::string a, std::string b, std::uint64_t w) {
    if (w == 0 || a == b)
      return;
    if (a > b)
      std::swap(a, b);
    weights[{std::move(a), std::move(b)}] += w;
  };

  for (const auto& c : spec.clusters) {
    if (s > c.count_per_target)
      continue;
    for (std::uint32_t i = 0; i < c.influencers; ++i)
      for (std::uint32_t j = i + 1; j < c.influencers; ++j)
        add(spec.influencer_handle(c.label, i), spec.influencer_handle(c.label, j), c.audience);
  }
  for (const auto& b : spec.bridges) {
    for (const auto& a : b.attachments) {
      const auto& cluster = cluster_by_label(spec, a.label);
      if (s > cluster.count_per_target)
        continue;
      for (std::uint32_t i = 0; i < cluster.influencers; ++i)
        add(b.handle, spec.influencer_handle(a.label, i), a.overlap);
    }
  }
  // bridges sharing a cluster share that cluster's leading audience members
  for (std::size_t i = 0; i < spec.bridges.size(); ++i) {
    for (std::size_t j = i + 1; j < spec.bridges.size(); ++j) {
      std::uint64_t shared = 0;
      for (const auto& ai : spec.bridges[i].attachments) {
        const auto& cluster = cluster_by_label(spec, ai.label);
        if (s > cluster.count_per_target)
          continue;
        for (const auto& aj : spec.bridges[j].attachments)
          if (ai.label == aj.label)
            shared += std::min(ai.overlap, aj.overlap);
      }
      add(spec.bridges[i].handle, spec.bridges[j].handle, shared);
    }
  }
  for (const auto& f : spec.followback_groups) {
    if (s > f.internal_count)
      continue;
    for (std::uint32_t u = 0; u < f.size; ++u)
      for (std::uint32_t v = u + 1; v < f.size; ++v)
        add(spec.member_handle(f.label, u), spec.member_handle(f.label, v), f.size - 2);
    if (!f.attached_to.empty()) {
      std::string target = attachment_target(spec, f);
      for (std::uint32_t u = 0; u < f.size; ++u)
        add(spec.member_handle(f.label, u), target, f.size - 1);
    }
  }
  for (const auto& sg : spec.satellites) {
    if (s > sg.count_per_target)
      continue;
    for (std::uint32_t i = 0; i < sg.count; ++i)
      add(spec.satellite_handle(sg.hub, i), sg.hub, sg.audience_each);
  }

  std::vector<PredictedEdge> edges;
  for (const auto& [key, w] : weights) {
    if (w >= n)
      edges.push_back({key.first, key.second, static_cast<std::uint32_t>(w)});
  }
  return edges;
}

} // namespace coengage
