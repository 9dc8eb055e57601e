#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "coengage/analysis.hpp"
#include "coengage/clustering.hpp"
#include "coengage/exports.hpp"
#include "coengage/ingest.hpp"
#include "coengage/parallel.hpp"
#include "coengage/projection.hpp"
#include "coengage/sweep.hpp"
#include "coengage/synth.hpp"

namespace {

using namespace coengage;

std::vector<std::uint32_t> parse_value_list(const std::string& text, const char* name) {
  std::vector<std::uint32_t> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string item = text.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    if (item.empty())
      throw ValidationError(std::string(name) + " list has an empty entry");
    char* end = nullptr;
    unsigned long v = std::strtoul(item.c_str(), &end, 10);
    if (!end || *end != '\0' || v == 0 || v > UINT32_MAX)
      throw ValidationError(std::string(name) + " list has invalid value: " + item);
    values.push_back(static_cast<std::uint32_t>(v));
    if (comma == std::string::npos)
      break;
    start = comma + 1;
  }
  return values;
}

nlohmann::json ingest_summary(const IngestReport& report) {
  nlohmann::json j = to_json(report);
  // keep summaries small for pathological inputs
  if (j["issues"].size() > 100) {
    std::size_t dropped = j["issues"].size() - 100;
    j["issues"].erase(j["issues"].begin() + 100, j["issues"].end());
    j["issues_omitted"] = j["issues_omitted"].get<std::size_t>() + dropped;
  }
  return j;
}

nlohmann::json graph_summary(const EngagementGraph& g) {
  return {{"nodes", g.node_count()},
          {"edges", g.edge_count()},
          {"total_weight", g.total_weight()},
          {"engagers", g.engager_count()}};
}

nlohmann::json projection_summary(const CoengagementGraph& x,
                                  const ProjectionDiagnostics& diag) {
  nlohmann::json caps = nlohmann::json::array();
  for (const auto& event : diag.cap_events)
    caps.push_back({{"engager", x.interner().handle(event.engager)},
                    {"fanout", event.fanout},
                    {"skipped", event.skipped}});
  return {{"nodes", x.node_count()},
          {"edges", x.edge_count()},
          {"pair_entries", diag.pair_entries},
          {"cap_events", caps}};
}

nlohmann::json clustering_summary(const ClusterAssignment& assignment) {
  nlohmann::json labels = nlohmann::json::object();
  for (const auto& [community, label] : assignment.labels)
    labels[std::to_string(community)] = label;
  nlohmann::json sizes = nlohmann::json::array();
  for (std::size_t size : assignment.community_sizes())
    sizes.push_back(size);
  return {{"communities", assignment.community_count},
          {"modularity", assignment.modularity},
          {"cluster_sizes", sizes},
          {"labels", labels},
          {"resolution", assignment.resolution},
          {"seed", assignment.seed}};
}

struct ProjectArgs {
  std::string input;
  std::string format = "csv";
  std::uint32_t n = 0;
  std::uint32_t s = 0;
  bool keep_self_loops = false;
  bool strict = false;
  bool cap_hard = false;
  bool progress = false;
  std::uint32_t max_fanout_cap = 0;
  std::uint64_t max_pairs = 0;
  unsigned threads = 0;
  std::string out_gexf, out_edges, out_summary;
};

IngestOptions make_ingest_options(const std::string& format, bool keep_self_loops, bool strict,
                                  bool keep_rows) {
  if (format != "csv" && format != "jsonl")
    throw ValidationError("unknown input format: " + format);
  IngestOptions opts;
  opts.format = format == "csv" ? InputFormat::csv : InputFormat::jsonl;
  opts.keep_self_loops = keep_self_loops;
  opts.strict = strict;
  opts.keep_rows = keep_rows;
  return opts;
}

int run_project(const ProjectArgs& args) {
  IngestResult ingest =
      read_interactions(args.input, make_ingest_options(args.format, args.keep_self_loops,
                                                        args.strict, false));
  ProjectionParams params{args.n, args.s};
  ProjectionOptions options;
  if (args.max_fanout_cap > 0)
    options.max_fanout_cap = args.max_fanout_cap;
  options.cap_hard = args.cap_hard;
  options.max_pairs = args.max_pairs;
  options.threads = resolve_thread_count(args.threads);
  options.progress = args.progress;
  ProjectionDiagnostics diag;
  CoengagementGraph x = project(ingest.graph, params, options, &diag);

  for (const auto& event : diag.cap_events)
    std::fprintf(stderr, "warning: engager %s fanout %zu exceeds cap%s\n",
                 x.interner().handle(event.engager).c_str(), event.fanout,
                 event.skipped ? " (skipped)" : "");

  bool wrote_gexf = false;
  if (!args.out_gexf.empty()) {
    if (x.empty()) {
      std::fprintf(stderr, "warning: projection is empty; skipping GEXF output\n");
    } else {
      write_gexf(x, nullptr, nullptr, args.out_gexf);
      wrote_gexf = true;
    }
  }
  if (!args.out_edges.empty())
    write_edge_csv(x, args.out_edges);
  if (!args.out_summary.empty()) {
    nlohmann::json summary = {
        {"command", "project"},
        {"params",
         {{"n", args.n},
          {"s", args.s},
          {"input", args.input},
          {"format", args.format},
          {"keep_self_loops", args.keep_self_loops},
          {"strict", args.strict},
          {"max_fanout_cap",
           args.max_fanout_cap > 0 ? nlohmann::json(args.max_fanout_cap) : nlohmann::json()},
          {"cap_hard", args.cap_hard},
          {"max_pairs", args.max_pairs}}},
        {"ingest", ingest_summary(ingest.report)},
        {"engagement_graph", graph_summary(ingest.graph)},
        {"coengagement_graph", projection_summary(x, diag)},
        {"outputs",
         {{"gexf", wrote_gexf ? nlohmann::json(args.out_gexf) : nlohmann::json()},
          {"edges", args.out_edges.empty() ? nlohmann::json() : nlohmann::json(args.out_edges)}}}};
    write_summary_json(summary, args.out_summary);
  }
  if (args.out_gexf.empty() && args.out_edges.empty() && args.out_summary.empty())
    std::printf("nodes=%zu edges=%zu\n", x.node_count(), x.edge_count());
  return 0;
}

struct ClusterArgs {
  std::string edges;
  std::string landmarks;
  double resolution = 1.0;
  std::uint64_t seed = 42;
  std::string out_summary;
};

int run_cluster(const ClusterArgs& args) {
  CoengagementGraph x = read_coengagement_edges(args.edges);
  LandmarkSet landmarks = read_landmarks(args.landmarks);
  ClusterAssignment assignment = louvain(x, args.resolution, args.seed);
  assignment = label_clusters(x, assignment, landmarks);

  nlohmann::json absent = nlohmann::json::array();
  for (const auto& [label, handles] : landmarks) {
    bool found = false;
    for (const auto& handle : handles)
      found = found || x.index_of_handle(handle).has_value();
    if (!found)
      absent.push_back(label);
  }
  nlohmann::json summary = {{"command", "cluster"},
                            {"params",
                             {{"edges", args.edges},
                              {"landmarks", args.landmarks},
                              {"resolution", args.resolution},
                              {"seed", args.seed}}},
                            {"coengagement_graph",
                             {{"nodes", x.node_count()}, {"edges", x.edge_count()}}},
                            {"clustering", clustering_summary(assignment)},
                            {"absent_landmark_labels", absent}};
  write_summary_json(summary, args.out_summary);
  return 0;
}

struct SweepArgs {
  std::string input;
  std::string format = "csv";
  std::string n_list;
  std::string s_list;
  std::string landmarks;
  double resolution = 1.0;
  std::uint64_t seed = 42;
  unsigned threads = 0;
  bool keep_self_loops = false;
  bool strict = false;
  std::string out;
};

int run_sweep(const SweepArgs& args) {
  IngestResult ingest =
      read_interactions(args.input, make_ingest_options(args.format, args.keep_self_loops,
                                                        args.strict, false));
  std::vector<std::uint32_t> n_values = parse_value_list(args.n_list, "n");
  std::vector<std::uint32_t> s_values = parse_value_list(args.s_list, "s");
  LandmarkSet landmarks = read_landmarks(args.landmarks);
  ExistenceMap map = sweep(ingest.graph, n_values, s_values, landmarks, args.resolution,
                           args.seed, resolve_thread_count(args.threads));
  write_existence_csv(map, args.out);
  return 0;
}

struct AnalyzeArgs {
  std::string input;
  std::string format = "csv";
  std::uint32_t n = 0;
  std::uint32_t s = 0;
  std::string landmarks;
  std::string attrs;
  std::string overlay;
  std::string focal;
  std::string bucket = "day";
  double resolution = 1.0;
  std::uint64_t seed = 42;
  std::uint64_t hub_min_degree = 0;
  std::uint32_t coverage_k = 1000;
  double parity_epsilon = 0.2;
  bool keep_self_loops = false;
  bool strict = false;
  unsigned threads = 0;
  std::string out_dir;
};

int run_analyze(const AnalyzeArgs& args) {
  if (args.bucket != "day" && args.bucket != "week")
    throw ValidationError("bucket must be day or week");
  const bool want_timeseries = !args.focal.empty();
  IngestResult ingest =
      read_interactions(args.input, make_ingest_options(args.format, args.keep_self_loops,
                                                        args.strict, want_timeseries));
  LandmarkSet landmarks = read_landmarks(args.landmarks);
  AttributeResult attrs;
  if (!args.attrs.empty())
    attrs = read_attributes(args.attrs);

  std::filesystem::create_directories(args.out_dir);
  ProjectionParams params{args.n, args.s};
  ProjectionOptions options;
  options.threads = resolve_thread_count(args.threads);
  ProjectionDiagnostics diag;
  CoengagementGraph x = project(ingest.graph, params, options, &diag);

  nlohmann::json summary = {
      {"command", "analyze"},
      {"params",
       {{"n", args.n},
        {"s", args.s},
        {"input", args.input},
        {"format", args.format},
        {"landmarks", args.landmarks},
        {"attrs", args.attrs.empty() ? nlohmann::json() : nlohmann::json(args.attrs)},
        {"overlay", args.overlay.empty() ? nlohmann::json() : nlohmann::json(args.overlay)},
        {"focal", args.focal.empty() ? nlohmann::json() : nlohmann::json(args.focal)},
        {"bucket", args.bucket},
        {"resolution", args.resolution},
        {"seed", args.seed},
        {"hub_min_degree", args.hub_min_degree},
        {"coverage_k", args.coverage_k},
        {"parity_epsilon", args.parity_epsilon},
        {"keep_self_loops", args.keep_self_loops},
        {"strict", args.strict}}},
      {"ingest", ingest_summary(ingest.report)},
      {"engagement_graph", graph_summary(ingest.graph)},
      {"coengagement_graph", projection_summary(x, diag)}};

  if (x.empty()) {
    summary["notices"] = nlohmann::json::array({"projection is empty; analyses skipped"});
    write_summary_json(summary, args.out_dir + "/summary.json");
    std::fprintf(stderr, "warning: projection is empty at n=%u s=%u\n", args.n, args.s);
    return 0;
  }

  ClusterAssignment assignment = louvain(x, args.resolution, args.seed);
  assignment = label_clusters(x, assignment, landmarks);
  summary["clustering"] = clustering_summary(assignment);
  nlohmann::json notices = nlohmann::json::array();

  write_gexf(x, &assignment, args.attrs.empty() ? nullptr : &attrs.attributes,
             args.out_dir + "/graph.gexf");
  summary["outputs"] = {{"gexf", args.out_dir + "/graph.gexf"}};

  auto bridges = bridge_table(x, assignment);
  write_bridge_csv(bridges, args.out_dir + "/bridge_table.csv");
  summary["bridge_table"] = {{"rows", bridges.size()},
                             {"path", args.out_dir + "/bridge_table.csv"}};

  auto sats = satellites(x, args.hub_min_degree);
  write_satellite_csv(sats, args.out_dir + "/satellites.csv");
  summary["satellites"] = {{"rows", sats.size()},
                           {"path", args.out_dir + "/satellites.csv"}};

  auto overlap = self_audience_overlap(ingest.graph, x, assignment, params);
  write_self_audience_csv(overlap, args.out_dir + "/self_audience_overlap.csv");
  nlohmann::json overlap_json = nlohmann::json::array();
  for (const auto& row : overlap)
    overlap_json.push_back({{"community", row.community},
                            {"label", row.label},
                            {"qualifying_engagers", row.qualifying_engagers},
                            {"also_projected", row.also_projected},
                            {"fraction", row.defined ? nlohmann::json(row.fraction)
                                                     : nlohmann::json()}});
  summary["self_audience_overlap"] = overlap_json;

  CoverageStats coverage = coverage_stats(ingest.graph, x, args.coverage_k);
  if (coverage.clamped)
    notices.push_back("coverage k clamped to node count");
  summary["coverage"] = {{"k", coverage.k_used},
                         {"clamped", coverage.clamped},
                         {"top_k_fraction", coverage.top_k_fraction},
                         {"retweet_share", coverage.retweet_share}};

  if (!args.attrs.empty()) {
    summary["attributes"] = to_json(attrs.report);
    auto followback = followback_metrics(x, attrs.attributes, assignment, args.parity_epsilon);
    write_followback_csv(followback, args.out_dir + "/followback_metrics.csv");
    nlohmann::json fb_json = nlohmann::json::array();
    for (const auto& row : followback)
      fb_json.push_back({{"community", row.community},
                         {"label", row.label},
                         {"members", row.members},
                         {"with_ratio", row.with_ratio},
                         {"median_ratio",
                          row.with_ratio ? nlohmann::json(row.median_ratio) : nlohmann::json()},
                         {"near_parity_fraction", row.with_ratio
                                                      ? nlohmann::json(row.near_parity_fraction)
                                                      : nlohmann::json()},
                         {"excluded_zero_following", row.excluded_zero_following},
                         {"missing_attributes", row.missing_attributes}});
    summary["followback_metrics"] = fb_json;
    if (followback.size() < assignment.labels.size())
      notices.push_back("some labeled communities had no attributed members");

    if (!args.overlay.empty()) {
      auto overlay = overlay_rates(x, assignment, attrs.attributes, args.overlay);
      write_overlay_csv(overlay, args.out_dir + "/overlay_rates.csv");
      nlohmann::json overlay_json = nlohmann::json::array();
      for (const auto& row : overlay)
        overlay_json.push_back(
            {{"community", row.community},
             {"label", row.label},
             {"members", row.members},
             {"true_count", row.true_count},
             {"known", row.known},
             {"unknown", row.unknown},
             {"rate", row.defined ? nlohmann::json(row.rate) : nlohmann::json()}});
      summary["overlay_rates"] = {{"attribute", args.overlay}, {"rows", overlay_json}};
    }
  }

  if (want_timeseries) {
    Bucket bucket = args.bucket == "day" ? Bucket::day : Bucket::week;
    TimeseriesResult series =
        audience_timeseries(ingest.rows, args.focal, x, assignment, bucket);
    write_timeseries_csv(series, args.out_dir + "/audience_timeseries.csv");
    for (const auto& notice : series.notices)
      notices.push_back(notice);
    summary["audience_timeseries"] = {
        {"rows", series.rows.size()},
        {"untimestamped_engagements", series.untimestamped_engagements},
        {"path", args.out_dir + "/audience_timeseries.csv"}};
  }

  summary["notices"] = notices;
  write_summary_json(summary, args.out_dir + "/summary.json");
  return 0;
}

struct SynthArgs {
  std::string spec;
  std::string out_dir;
};

int run_synth(const SynthArgs& args) {
  std::ifstream in(args.spec);
  if (!in)
    throw IoError("cannot open scenario spec: " + args.spec);
  nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
  if (doc.is_discarded())
    throw ValidationError("scenario spec is not valid JSON: " + args.spec);
  ScenarioSpec spec = ScenarioSpec::from_json(doc);
  SynthResult result = generate(spec, args.out_dir);
  std::fprintf(stderr, "generated %llu rows over %llu accounts in %s\n",
               static_cast<unsigned long long>(result.interaction_rows),
               static_cast<unsigned long long>(result.account_count), args.out_dir.c_str());
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"coengagement network toolkit"};
  app.require_subcommand(1);

  ProjectArgs project_args;
  CLI::App* cmd_project = app.add_subcommand("project", "build a coengagement graph");
  cmd_project->add_option("--input", project_args.input, "interaction file")->required();
  cmd_project->add_option("--format", project_args.format, "csv or jsonl");
  cmd_project->add_option("--n", project_args.n, "minimum qualifying co-engagers")->required();
  cmd_project->add_option("--s", project_args.s, "minimum engagements per co-engager")
      ->required();
  cmd_project->add_flag("--keep-self-loops", project_args.keep_self_loops,
                        "keep engager==target rows");
  cmd_project->add_flag("--strict", project_args.strict, "abort on malformed rows");
  cmd_project->add_option("--max-fanout-cap", project_args.max_fanout_cap,
                          "flag engagers above this qualifying fanout");
  cmd_project->add_flag("--cap-hard", project_args.cap_hard, "skip flagged engagers");
  cmd_project->add_option("--max-pairs", project_args.max_pairs,
                          "abort when distinct pairs exceed this budget");
  cmd_project->add_flag("--progress", project_args.progress, "projection progress on stderr");
  cmd_project->add_option("--threads", project_args.threads, "worker threads (0 = auto)");
  cmd_project->add_option("--out-gexf", project_args.out_gexf, "GEXF output path");
  cmd_project->add_option("--out-edges", project_args.out_edges, "edge CSV output path");
  cmd_project->add_option("--out-summary", project_args.out_summary, "summary JSON path");

  ClusterArgs cluster_args;
  CLI::App* cmd_cluster = app.add_subcommand("cluster", "cluster and label an edge CSV");
  cmd_cluster->add_option("--edges", cluster_args.edges, "coengagement edge CSV")->required();
  cmd_cluster->add_option("--landmarks", cluster_args.landmarks, "landmark CSV")->required();
  cmd_cluster->add_option("--resolution", cluster_args.resolution, "Louvain resolution");
  cmd_cluster->add_option("--seed", cluster_args.seed, "clustering seed");
  cmd_cluster->add_option("--out-summary", cluster_args.out_summary, "summary JSON path")
      ->required();

  SweepArgs sweep_args;
  CLI::App* cmd_sweep = app.add_subcommand("sweep", "existence map over the (n, s) grid");
  cmd_sweep->add_option("--input", sweep_args.input, "interaction file")->required();
  cmd_sweep->add_option("--format", sweep_args.format, "csv or jsonl");
  cmd_sweep->add_option("--n-list", sweep_args.n_list, "comma-separated n values")->required();
  cmd_sweep->add_option("--s-list", sweep_args.s_list, "comma-separated s values")->required();
  cmd_sweep->add_option("--landmarks", sweep_args.landmarks, "landmark CSV")->required();
  cmd_sweep->add_option("--resolution", sweep_args.resolution, "Louvain resolution");
  cmd_sweep->add_option("--seed", sweep_args.seed, "base clustering seed");
  cmd_sweep->add_option("--threads", sweep_args.threads, "worker threads (0 = auto)");
  cmd_sweep->add_flag("--keep-self-loops", sweep_args.keep_self_loops,
                      "keep engager==target rows");
  cmd_sweep->add_flag("--strict", sweep_args.strict, "abort on malformed rows");
  cmd_sweep->add_option("--out", sweep_args.out, "existence CSV output path")->required();

  AnalyzeArgs analyze_args;
  CLI::App* cmd_analyze = app.add_subcommand("analyze", "run structural diagnostics");
  cmd_analyze->add_option("--input", analyze_args.input, "interaction file")->required();
  cmd_analyze->add_option("--format", analyze_args.format, "csv or jsonl");
  cmd_analyze->add_option("--n", analyze_args.n, "minimum qualifying co-engagers")->required();
  cmd_analyze->add_option("--s", analyze_args.s, "minimum engagements per co-engager")
      ->required();
  cmd_analyze->add_option("--landmarks", analyze_args.landmarks, "landmark CSV")->required();
  auto* attrs_opt =
      cmd_analyze->add_option("--attrs", analyze_args.attrs, "node attribute CSV");
  cmd_analyze->add_option("--overlay", analyze_args.overlay, "boolean attribute to overlay")
      ->needs(attrs_opt);
  auto* focal_opt = cmd_analyze->add_option("--focal", analyze_args.focal,
                                            "handle for the audience time series");
  cmd_analyze->add_option("--bucket", analyze_args.bucket, "day or week")->needs(focal_opt);
  cmd_analyze->add_option("--resolution", analyze_args.resolution, "Louvain resolution");
  cmd_analyze->add_option("--seed", analyze_args.seed, "clustering seed");
  cmd_analyze->add_option("--hub-min-degree", analyze_args.hub_min_degree,
                          "minimum hub weighted degree for satellites");
  cmd_analyze->add_option("--coverage-k", analyze_args.coverage_k,
                          "k for top-k coverage statistics");
  cmd_analyze->add_option("--parity-epsilon", analyze_args.parity_epsilon,
                          "half-width of the follower/following parity band");
  cmd_analyze->add_flag("--keep-self-loops", analyze_args.keep_self_loops,
                        "keep engager==target rows");
  cmd_analyze->add_flag("--strict", analyze_args.strict, "abort on malformed rows");
  cmd_analyze->add_option("--threads", analyze_args.threads, "worker threads (0 = auto)");
  cmd_analyze->add_option("--out-dir", analyze_args.out_dir, "output directory")->required();

  SynthArgs synth_args;
  CLI::App* cmd_synth = app.add_subcommand("synth", "generate a synthetic scenario");
  cmd_synth->add_option("--spec", synth_args.spec, "scenario spec JSON")->required();
  cmd_synth->add_option("--out-dir", synth_args.out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (cmd_project->parsed())
      return run_project(project_args);
    if (cmd_cluster->parsed())
      return run_cluster(cluster_args);
    if (cmd_sweep->parsed())
      return run_sweep(sweep_args);
    if (cmd_analyze->parsed())
      return run_analyze(analyze_args);
    if (cmd_synth->parsed())
      return run_synth(synth_args);
  } catch (const CapacityError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
