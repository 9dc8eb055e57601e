#include "doctest.h"

#include <random>

#include "coengage/projection.hpp"

#include "helpers.hpp"

using namespace coengage;
using namespace testutil;

TEST_CASE("qualifying targets filter by threshold") {
  auto g = EngagementGraph::from_records(
      make_records({{"u", "a", 5}, {"u", "b", 4}, {"u", "c", 1}}));
  auto u = g.interner().require("u");
  CHECK(qualifying_targets(g, u, 5) == std::vector<NodeId>{g.interner().require("a")});
  SUBCASE("s=1 keeps every engaged target") {
    CHECK(qualifying_targets(g, u, 1).size() == 3);
  }
  SUBCASE("unknown engager yields the empty set") {
    CHECK(qualifying_targets(g, 999, 1).empty());
  }
}

TEST_CASE("qualifying targets match a row-scan recount") {
  std::mt19937_64 rng(808);
  for (int trial = 0; trial < 20; ++trial) {
    auto rows = random_rows(rng, 15, 10, 200);
    auto g = EngagementGraph::from_records(rows);
    std::uint32_t s = 1 + rng() % 4;
    // oracle: per-engager weight recount from raw rows
    std::map<std::string, std::map<std::string, std::uint64_t>> weight;
    for (const auto& r : rows)
      if (r.engager != r.target)
        weight[r.engager][r.target] += r.count;
    for (NodeId u = 0; u < g.node_count(); ++u) {
      std::vector<std::string> expected;
      auto it = weight.find(g.interner().handle(u));
      if (it != weight.end())
        for (const auto& [target, w] : it->second)
          if (w >= s)
            expected.push_back(target);
      std::vector<std::string> got;
      for (NodeId t : qualifying_targets(g, u, s))
        got.push_back(g.interner().handle(t));
      CHECK(got == expected); // both lexicographically sorted
    }
  }
}

TEST_CASE("schematic panel 1 projects to its two links") {
  auto g = EngagementGraph::from_records(schematic_rows());
  auto x = project(g, {1, 1});
  CHECK(to_handle_edges(x) ==
        std::vector<HandleEdge>{{"blue", "green", 1}, {"blue", "yellow", 1}});
  CHECK(x.node_count() == 3); // red engages but is never engaged
}

TEST_CASE("raising thresholds removes schematic edges") {
  auto g = EngagementGraph::from_records(schematic_rows());
  CHECK(project(g, {2, 1}).empty());
  CHECK(project(g, {1, 2}).empty());
}

TEST_CASE("empty graph projects to an empty graph") {
  EngagementGraph g;
  auto x = project(g, {1, 1});
  CHECK(x.empty());
  CHECK(x.node_count() == 0);
}

TEST_CASE("three co-engagers at two engagements each") {
  auto rows = make_records({{"u1", "a", 2}, {"u1", "b", 2}, {"u2", "a", 2}, {"u2", "b", 2},
                            {"u3", "a", 2}, {"u3", "b", 2}});
  auto g = EngagementGraph::from_records(rows);
  // hand enumeration: all three engagers qualify at s=2
  CHECK(to_handle_edges(project(g, {3, 2})) == std::vector<HandleEdge>{{"a", "b", 3}});
  CHECK(project(g, {4, 2}).empty());
  CHECK(project(g, {3, 3}).empty());
  // cross-check against the brute-force oracle
  CHECK(to_handle_edges(project(g, {3, 2})) == brute_force_project(rows, 3, 2));
}

TEST_CASE("projection parameters are validated") {
  auto g = EngagementGraph::from_records(schematic_rows());
  CHECK_THROWS_AS(project(g, {0, 1}), ValidationError);
  CHECK_THROWS_AS(project(g, {1, 0}), ValidationError);
}

TEST_CASE("projection matches the brute-force oracle on random multigraphs") {
  std::mt19937_64 rng(20260808);
  for (int trial = 0; trial < 25; ++trial) {
    auto rows = random_rows(rng, 30, 20, 400);
    auto g = EngagementGraph::from_records(rows);
    for (std::uint32_t n : {1u, 2u, 3u}) {
      for (std::uint32_t s : {1u, 2u, 5u}) {
        auto got = to_handle_edges(project(g, {n, s}));
        auto want = brute_force_project(rows, n, s);
        CHECK(got == want);
      }
    }
  }
}

TEST_CASE("anti-monotonicity in n and s") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 15; ++trial) {
    auto rows = random_rows(rng, 25, 15, 350);
    auto g = EngagementGraph::from_records(rows);
    auto base = to_handle_edges(project(g, {1, 1}));
    auto higher_n = to_handle_edges(project(g, {2, 1}));
    auto higher_s = to_handle_edges(project(g, {1, 2}));

    // Edges(n2, s) is a subset with identical weights
    for (const auto& e : higher_n)
      CHECK(std::find(base.begin(), base.end(), e) != base.end());

    // Edges(n, s2) is a subset as an edge set, with weights <= the s1 weight
    for (const auto& e : higher_s) {
      auto it = std::find_if(base.begin(), base.end(), [&](const HandleEdge& b) {
        return b.a == e.a && b.b == e.b;
      });
      REQUIRE(it != base.end());
      CHECK(e.weight <= it->weight);
    }
  }
}

TEST_CASE("edge weights never exceed the engager count") {
  std::mt19937_64 rng(7);
  auto rows = random_rows(rng, 20, 10, 500);
  auto g = EngagementGraph::from_records(rows);
  auto x = project(g, {1, 1});
  for (const auto& e : x.edges())
    CHECK(e.weight <= g.engager_count());
}

TEST_CASE("projection output is identical across worker counts") {
  std::mt19937_64 rng(404);
  auto rows = random_rows(rng, 40, 25, 500);
  auto g = EngagementGraph::from_records(rows);
  ProjectionOptions serial;
  serial.threads = 1;
  ProjectionOptions parallel;
  parallel.threads = 3;
  auto a = project(g, {1, 1}, serial);
  auto b = project(g, {1, 1}, parallel);
  CHECK(to_handle_edges(a) == to_handle_edges(b));
}

TEST_CASE("fanout cap warns and cap-hard skips") {
  auto rows = make_records({{"big", "a", 1}, {"big", "b", 1}, {"big", "c", 1},
                            {"u1", "a", 1}, {"u1", "b", 1},
                            {"u2", "a", 1}, {"u2", "b", 1}});
  auto g = EngagementGraph::from_records(rows);
  ProjectionOptions opts;
  opts.max_fanout_cap = 2;
  ProjectionDiagnostics diag;
  auto x = project(g, {1, 1}, opts, &diag);
  REQUIRE(diag.cap_events.size() == 1);
  CHECK(g.interner().handle(diag.cap_events[0].engager) == "big");
  CHECK(diag.cap_events[0].fanout == 3);
  CHECK(!diag.cap_events[0].skipped);
  // flagged engager is still processed
  CHECK(to_handle_edges(x) == std::vector<HandleEdge>{{"a", "b", 3}, {"a", "c", 1},
                                                      {"b", "c", 1}});

  opts.cap_hard = true;
  ProjectionDiagnostics hard_diag;
  auto y = project(g, {1, 1}, opts, &hard_diag);
  CHECK(hard_diag.cap_events[0].skipped);
  CHECK(to_handle_edges(y) == std::vector<HandleEdge>{{"a", "b", 2}});
}

TEST_CASE("pair budget raises a capacity error naming the phase") {
  auto rows = make_records({{"u1", "a", 1}, {"u1", "b", 1}, {"u1", "c", 1}, {"u1", "d", 1}});
  auto g = EngagementGraph::from_records(rows);
  ProjectionOptions opts;
  opts.max_pairs = 2;
  try {
    project(g, {1, 1}, opts);
    FAIL("expected CapacityError");
  } catch (const CapacityError& e) {
    CHECK(e.phase() == "pair accumulation");
  }
}
