#include "coengage/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_map>

#include "coengage/csv.hpp"

namespace coengage {

namespace {

bool parse_u64(std::string_view s, std::uint64_t& out) {
  if (s.empty())
    return false;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

bool parse_i64(std::string_view s, std::int64_t& out) {
  if (s.empty())
    return false;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

struct InteractionAccumulator {
  const IngestOptions& opts;
  IngestReport report;
  std::vector<InteractionRecord> kept_rows;

  std::unordered_map<std::string, NodeId> tmp_ids;
  std::vector<std::string> tmp_handles;
  std::unordered_map<std::uint64_t, std::uint64_t> agg;

  explicit InteractionAccumulator(const IngestOptions& o) : opts(o) {}

  NodeId tmp_intern(const std::string& handle) {
    auto [it, inserted] = tmp_ids.emplace(handle, static_cast<NodeId>(tmp_handles.size()));
    if (inserted)
      tmp_handles.push_back(handle);
    return it->second;
  }

  void reject(std::size_t line, std::string message) {
    report.rejected++;
    if (opts.strict)
      throw ValidationError("line " + std::to_string(line) + ": " + message);
    if (report.issues.size() < IngestReport::kMaxStoredIssues)
      report.issues.push_back({line, std::move(message)});
    else
      report.issues_omitted++;
  }

  // fields already validated as present; performs semantic checks
  void row(std::size_t line, const std::string& engager, const std::string& target,
           std::uint64_t count, std::optional<std::int64_t> timestamp) {
    if (engager.empty() || target.empty()) {
      reject(line, "empty handle");
      return;
    }
    if (!opts.keep_self_loops && engager == target) {
      report.dropped_self_loops++;
      return;
    }
    report.accepted++;
    NodeId u = tmp_intern(engager);
    NodeId v = tmp_intern(target);
    agg[(static_cast<std::uint64_t>(u) << 32) | v] += count;
    if (opts.keep_rows)
      kept_rows.push_back({engager, target, count, timestamp});
  }

  IngestResult finish() {
    Interner interner = Interner::from_handles(tmp_handles);
    std::vector<NodeId> remap(tmp_handles.size());
    for (std::size_t i = 0; i < tmp_handles.size(); ++i)
      remap[i] = interner.require(tmp_handles[i]);

    std::vector<EngagementGraph::Edge> edges;
    edges.reserve(agg.size());
    for (const auto& [key, w] : agg)
      edges.push_back({remap[static_cast<NodeId>(key >> 32)],
                       remap[static_cast<NodeId>(key & 0xffffffffu)], w});
    report.aggregated_edges = edges.size();

    IngestResult result;
    result.graph = EngagementGraph::build(std::move(interner), std::move(edges));
    result.report = std::move(report);
    result.rows = std::move(kept_rows);
    return result;
  }
};

IngestResult read_interactions_csv(const std::string& path, const IngestOptions& opts) {
  LineReader reader(path);
  std::string_view line;
  if (!reader.next(line))
    throw ValidationError(path + ": empty file, expected header");

  std::vector<std::string> fields;
  std::string err;
  if (!split_csv_line(line, fields, err))
    throw ValidationError(path + ": malformed header: " + err);
  if (fields.size() < 2 || fields[0] != "engager" || fields[1] != "target")
    throw ValidationError(path + ": header must start with engager,target");
  int count_col = -1, timestamp_col = -1;
  for (std::size_t i = 2; i < fields.size(); ++i) {
    if (fields[i] == "count" && count_col < 0)
      count_col = static_cast<int>(i);
    else if (fields[i] == "timestamp" && timestamp_col < 0)
      timestamp_col = static_cast<int>(i);
    else
      throw ValidationError(path + ": unknown header column: " + fields[i]);
  }
  const std::size_t expected_fields = fields.size();

  InteractionAccumulator acc(opts);
  std::size_t line_no = 1;
  while (reader.next(line)) {
    ++line_no;
    if (line.empty())
      continue;
    acc.report.total_rows++;
    if (!split_csv_line(line, fields, err)) {
      acc.reject(line_no, "malformed row: " + err);
      continue;
    }
    if (fields.size() != expected_fields) {
      acc.reject(line_no, "expected " + std::to_string(expected_fields) + " fields, got " +
                              std::to_string(fields.size()));
      continue;
    }
    std::uint64_t count = 1;
    if (count_col >= 0 && !fields[count_col].empty()) {
      std::int64_t c;
      if (!parse_i64(fields[count_col], c)) {
        acc.reject(line_no, "invalid count: " + fields[count_col]);
        continue;
      }
      if (c <= 0) {
        acc.reject(line_no, "non-positive count: " + fields[count_col]);
        continue;
      }
      count = static_cast<std::uint64_t>(c);
    }
    std::optional<std::int64_t> ts;
    if (timestamp_col >= 0 && !fields[timestamp_col].empty()) {
      std::int64_t epoch;
      if (!parse_timestamp_utc(fields[timestamp_col], epoch)) {
        acc.reject(line_no, "invalid timestamp: " + fields[timestamp_col]);
        continue;
      }
      ts = epoch;
    }
    acc.row(line_no, fields[0], fields[1], count, ts);
  }
  return acc.finish();
}

IngestResult read_interactions_jsonl(const std::string& path, const IngestOptions& opts) {
  LineReader reader(path);
  InteractionAccumulator acc(opts);
  std::string_view line;
  std::size_t line_no = 0;
  while (reader.next(line)) {
    ++line_no;
    if (line.empty())
      continue;
    acc.report.total_rows++;
    nlohmann::json row = nlohmann::json::parse(line, nullptr, false);
    if (row.is_discarded() || !row.is_object()) {
      acc.reject(line_no, "malformed JSON object");
      continue;
    }
    if (!row.contains("engager") || !row["engager"].is_string() || !row.contains("target") ||
        !row["target"].is_string()) {
      acc.reject(line_no, "missing engager/target string fields");
      continue;
    }
    std::uint64_t count = 1;
    if (row.contains("count")) {
      if (!row["count"].is_number_integer() || row["count"].get<std::int64_t>() <= 0) {
        acc.reject(line_no, "non-positive or non-integer count");
        continue;
      }
      count = row["count"].get<std::uint64_t>();
    }
    std::optional<std::int64_t> ts;
    if (row.contains("timestamp") && !row["timestamp"].is_null()) {
      std::int64_t epoch;
      if (!row["timestamp"].is_string() ||
          !parse_timestamp_utc(row["timestamp"].get_ref<const std::string&>(), epoch)) {
        acc.reject(line_no, "invalid timestamp");
        continue;
      }
      ts = epoch;
    }
    acc.row(line_no, row["engager"].get_ref<const std::string&>(),
            row["target"].get_ref<const std::string&>(), count, ts);
  }
  return acc.finish();
}

} // namespace

IngestResult read_interactions(const std::string& path, const IngestOptions& opts) {
  return opts.format == InputFormat::csv ? read_interactions_csv(path, opts)
                                         : read_interactions_jsonl(path, opts);
}

AttributeResult read_attributes(const std::string& path) {
  LineReader reader(path);
  std::string_view line;
  if (!reader.next(line))
    throw ValidationError(path + ": empty file, expected header");
  std::vector<std::string> fields;
  std::string err;
  if (!split_csv_line(line, fields, err))
    throw ValidationError(path + ": malformed header: " + err);
  const std::vector<std::string> expected = {"node", "label", "followers", "following",
                                             "suspended"};
  if (fields != expected)
    throw ValidationError(path + ": header must be node,label,followers,following,suspended");

  AttributeResult result;
  std::size_t line_no = 1;
  while (reader.next(line)) {
    ++line_no;
    if (line.empty())
      continue;
    result.report.total_rows++;
    auto reject = [&](std::string msg) {
      result.report.rejected++;
      result.report.issues.push_back({line_no, std::move(msg)});
    };
    if (!split_csv_line(line, fields, err)) {
      reject("malformed row: " + err);
      continue;
    }
    if (fields.size() != 5) {
      reject("expected 5 fields, got " + std::to_string(fields.size()));
      continue;
    }
    if (fields[0].empty()) {
      reject("empty handle");
      continue;
    }
    NodeAttributes attrs;
    attrs.handle = fields[0];
    if (!fields[1].empty())
      attrs.display_label = fields[1];
    bool ok = true;
    for (int i : {2, 3}) {
      if (fields[i].empty())
        continue;
      std::uint64_t v;
      if (!parse_u64(fields[i], v)) {
        reject(std::string("non-integer ") + (i == 2 ? "followers" : "following") + " field: " +
               fields[i]);
        ok = false;
        break;
      }
      (i == 2 ? attrs.followers : attrs.following) = v;
    }
    if (!ok)
      continue;
    if (!fields[4].empty()) {
      if (fields[4] == "true")
        attrs.suspended = true;
      else if (fields[4] == "false")
        attrs.suspended = false;
      else {
        reject("invalid suspended value: " + fields[4]);
        continue;
      }
    }
    auto [it, inserted] = result.attributes.emplace(attrs.handle, attrs);
    if (!inserted) {
      it->second = attrs; // last wins
      result.report.duplicate_handles++;
      result.report.issues.push_back({line_no, "duplicate handle: " + attrs.handle});
    }
    result.report.accepted++;
  }
  return result;
}

LandmarkSet read_landmarks(const std::string& path) {
  LineReader reader(path);
  std::string_view line;
  if (!reader.next(line))
    throw ValidationError(path + ": empty file, expected header");
  std::vector<std::string> fields;
  std::string err;
  if (!split_csv_line(line, fields, err) || fields != std::vector<std::string>{"label", "handle"})
    throw ValidationError(path + ": header must be label,handle");

  LandmarkSet landmarks;
  std::size_t line_no = 1;
  while (reader.next(line)) {
    ++line_no;
    if (line.empty())
      continue;
    if (!split_csv_line(line, fields, err))
      throw ValidationError(path + ": line " + std::to_string(line_no) + ": " + err);
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty())
      throw ValidationError(path + ": line " + std::to_string(line_no) +
                            ": expected label,handle");
    landmarks[fields[0]].push_back(fields[1]);
  }
  for (auto& [label, handles] : landmarks) {
    std::sort(handles.begin(), handles.end());
    handles.erase(std::unique(handles.begin(), handles.end()), handles.end());
  }
  return landmarks;
}

CoengagementGraph read_coengagement_edges(const std::string& path, ProjectionParams params) {
  LineReader reader(path);
  std::string_view line;
  if (!reader.next(line))
    throw ValidationError(path + ": empty file, expected header");
  std::vector<std::string> fields;
  std::string err;
  if (!split_csv_line(line, fields, err) ||
      fields != std::vector<std::string>{"source", "target", "weight"})
    throw ValidationError(path + ": header must be source,target,weight");

  struct RawEdge {
    std::string a, b;
    std::uint64_t w;
  };
  std::vector<RawEdge> raw;
  std::vector<std::string> handles;
  std::size_t line_no = 1;
  while (reader.next(line)) {
    ++line_no;
    if (line.empty())
      continue;
    if (!split_csv_line(line, fields, err) || fields.size() != 3)
      throw ValidationError(path + ": line " + std::to_string(line_no) + ": malformed edge row");
    std::uint64_t w;
    if (!parse_u64(fields[2], w) || w == 0 || w > UINT32_MAX)
      throw ValidationError(path + ": line " + std::to_string(line_no) + ": invalid weight");
    if (fields[0].empty() || fields[1].empty() || fields[0] == fields[1])
      throw ValidationError(path + ": line " + std::to_string(line_no) + ": invalid endpoints");
    raw.push_back({fields[0], fields[1], w});
    handles.push_back(fields[0]);
    handles.push_back(fields[1]);
  }
  auto interner = std::make_shared<Interner>(Interner::from_handles(std::move(handles)));
  std::vector<CoengagementGraph::Edge> edges;
  edges.reserve(raw.size());
  for (const auto& e : raw) {
    NodeId a = interner->require(e.a), b = interner->require(e.b);
    if (a > b)
      std::swap(a, b);
    edges.push_back({a, b, static_cast<std::uint32_t>(e.w)});
  }
  return CoengagementGraph(std::move(interner), params, std::move(edges));
}

nlohmann::json to_json(const IngestReport& report) {
  nlohmann::json issues = nlohmann::json::array();
  for (const auto& issue : report.issues)
    issues.push_back({{"line", issue.line}, {"message", issue.message}});
  return {{"total_rows", report.total_rows},
          {"accepted", report.accepted},
          {"rejected", report.rejected},
          {"dropped_self_loops", report.dropped_self_loops},
          {"aggregated_edges", report.aggregated_edges},
          {"issues", issues},
          {"issues_omitted", report.issues_omitted}};
}

nlohmann::json to_json(const AttributeReport& report) {
  nlohmann::json issues = nlohmann::json::array();
  for (const auto& issue : report.issues)
    issues.push_back({{"line", issue.line}, {"message", issue.message}});
  return {{"total_rows", report.total_rows},
          {"accepted", report.accepted},
          {"rejected", report.rejected},
          {"duplicate_handles", report.duplicate_handles},
          {"issues", issues}};
}

} // namespace coengage
