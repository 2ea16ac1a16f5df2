#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "stitch/error.hpp"
#include "stitch/generators.hpp"
#include "stitch/metrics.hpp"
#include "stitch/projection.hpp"

using namespace stitch;

TEST(Reciprocity, CountsMutualArcs) {
  MultiDigraph g;
  g.add_edge("a", "b");
  g.add_edge("b", "a");
  g.add_edge("b", "c");
  g.add_edge("b", "c");
  EXPECT_DOUBLE_EQ(reciprocity(project_directed_simple(g)), 2.0 / 3.0);
  EXPECT_EQ(reciprocity(project_directed_simple(MultiDigraph())), 0.0);
}

TEST(Clustering, TriangleAndStar) {
  EXPECT_EQ(avg_local_clustering(project_undirected_simple(gen_cycle(3))), 1.0);
  EXPECT_EQ(avg_local_clustering(project_undirected_simple(gen_star(5, StarOrientation::In))), 0.0);
  MultiDigraph g;  // triangle with a pendant on a
  g.add_edge("a", "b");
  g.add_edge("b", "c");
  g.add_edge("c", "a");
  g.add_edge("d", "a");
  EXPECT_DOUBLE_EQ(avg_local_clustering(project_undirected_simple(g)), (1.0 / 3 + 1 + 1 + 0) / 4);
}

TEST(Centralization, StarIsOneAndSmallGraphsAbsent) {
  for (std::size_t k = 2; k <= 20; ++k) {
    EXPECT_EQ(degree_centralization(project_undirected_simple(gen_star(k, StarOrientation::In))), 1.0);
  }
  EXPECT_FALSE(degree_centralization(project_undirected_simple(gen_chain(2))));
  EXPECT_EQ(degree_centralization(project_undirected_simple(gen_cycle(5))), 0.0);
}

TEST(PathStats, DirectedChain) {
  const auto p = path_stats(gen_chain(4));
  EXPECT_EQ(p.directed_diameter, 3u);
  EXPECT_EQ(p.undirected_diameter, 3u);
  // Directed reachable pairs: 3 at distance 1, 2 at 2, 1 at 3.
  EXPECT_DOUBLE_EQ(p.avg_path_directed, 10.0 / 6.0);
  EXPECT_DOUBLE_EQ(p.avg_path_undirected, 20.0 / 12.0);
}

TEST(PathStats, DiameterScope) {
  MultiDigraph g = gen_chain(3);
  g.add_edge("x0", "x1");
  g.add_edge("x1", "x2");
  g.add_edge("x2", "x3");
  g.add_edge("x3", "x4");
  EXPECT_EQ(path_stats(g).undirected_diameter, 4u);
  const auto lcc = path_stats(g, DiameterScope::LargestComponent);
  EXPECT_EQ(lcc.undirected_diameter, 4u);
  MultiDigraph h = gen_chain(5);
  h.add_edge("y0", "y1");
  EXPECT_EQ(path_stats(h).directed_diameter, 4u);
}

TEST(Metrics, MatchesBruteForceExactly) {
  Rng rng(2024);
  for (int i = 0; i < 200; ++i) {
    const auto g = oracle::random_graph(rng, {.max_vertices = 12, .edge_prob = 0.25}, "g");
    const auto expect = oracle::metrics(g);
    const auto row = compute_row(g);
    EXPECT_EQ(row.directed_diameter, expect.directed_diameter);
    EXPECT_EQ(row.undirected_diameter, expect.undirected_diameter);
    EXPECT_EQ(row.avg_path_directed, expect.avg_path_directed);
    EXPECT_EQ(row.avg_path_undirected, expect.avg_path_undirected);
    EXPECT_EQ(row.lcc_size, expect.lcc_size);
    EXPECT_EQ(row.lcc_clustering, expect.clustering);
    EXPECT_EQ(row.lcc_reciprocity, expect.reciprocity);
    EXPECT_EQ(row.lcc_degree_centralization, expect.centralization);
  }
}

TEST(Report, SortsRowsAndAggregatesByCategory) {
  GraphCollection c;
  auto add = [&](MultiDigraph g, const std::string& id, Category cat) {
    g.set_id(id);
    c.add(std::move(g), cat);
  };
  add(gen_star(3, StarOrientation::In), "small", Category::Political);
  add(gen_star(9, StarOrientation::In), "big", Category::Political);
  add(gen_chain(2), "dyad", Category::Entertainment);
  add(gen_chain(4), "mid", Category::Entertainment);
  const auto single = compute_report(c, 1);
  const auto multi = compute_report(c, 3);
  ASSERT_EQ(single.rows.size(), 4u);
  EXPECT_EQ(single.rows[0].graph_id, "big");
  EXPECT_EQ(single.rows[3].graph_id, "dyad");
  ASSERT_EQ(single.aggregates.size(), 2u);
  EXPECT_EQ(single.aggregates[0].category, Category::Entertainment);
  EXPECT_EQ(single.aggregates[1].n_vertices, 7.0);
  // Centralization mean skips the absent dyad value.
  EXPECT_EQ(single.aggregates[0].lcc_degree_centralization,
            degree_centralization(project_undirected_simple(gen_chain(4))));

  std::ostringstream a, b;
  write_report_csv(a, single);
  write_report_csv(b, multi);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_NE(a.str().find("graph,dyad,1,2,1,1,1,1,1.000000,1.000000,2,0.000000,0.000000,-"),
            std::string::npos);
  EXPECT_EQ(report_to_json(single)["graphs"][3]["lcc_degree_centralization"], nullptr);
  EXPECT_THROW(compute_report(GraphCollection{}), InvalidArgument);
}

TEST(MetadataRatios, AveragesPerEdge) {
  MultiDigraph g;
  g.add_edge("small", "big");
  g.add_edge("small", "big");
  g.add_edge("tiny", "big");
  g.add_edge("ghost", "big");
  VertexMetadataMap meta;
  meta["small"] = {10, 1, 0, {"x", "y"}};
  meta["tiny"] = {40, 1, 0, {"z"}};
  meta["big"] = {100, 50, 9, {"x"}};
  const auto r = metadata_ratios(g, meta, "x");
  EXPECT_EQ(r.covered_edges, 3u);
  EXPECT_DOUBLE_EQ(*r.view_ratio, 100.0 / 20.0);
  EXPECT_DOUBLE_EQ(*r.follower_ratio, 50.0);
  EXPECT_FALSE(r.likes_ratio);
  EXPECT_DOUBLE_EQ(r.same_hashtag_fraction, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(metadata_ratios(g, meta).same_hashtag_fraction, 2.0 / 3.0);

  MultiDigraph none;
  none.add_edge("ghost", "phantom");
  EXPECT_THROW(metadata_ratios(none, meta), DataError);
}
