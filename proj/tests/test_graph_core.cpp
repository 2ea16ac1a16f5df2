#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "stitch/error.hpp"
#include "stitch/generators.hpp"
#include "stitch/io.hpp"
#include "stitch/projection.hpp"
#include "stitch/video.hpp"

using namespace stitch;

TEST(Labels, RoundTripAndCaseInsensitive) {
  for (std::size_t i = 0; i < kSentimentLabelCount; ++i) {
    const auto l = static_cast<SentimentLabel>(i);
    EXPECT_EQ(parse_sentiment_label(to_string(l)), l);
  }
  EXPECT_EQ(parse_sentiment_label("POSITIVE"), SentimentLabel::Positive);
  EXPECT_EQ(parse_sentiment_label("No_Content"), SentimentLabel::NoContent);
  EXPECT_FALSE(parse_sentiment_label("mixed"));
  EXPECT_EQ(parse_edge_label("mixed"), EdgeLabel::Mixed);
  EXPECT_FALSE(parse_sentiment_label("happy"));
  EXPECT_EQ(parse_category("political"), Category::Political);
  EXPECT_FALSE(parse_category("sports"));
}

TEST(MultiDigraph, KeepsSelfLoopsAndParallelEdges) {
  MultiDigraph g("g");
  g.add_edge("a", "b", SentimentLabel::Positive);
  g.add_edge("a", "b", SentimentLabel::Negative);
  g.add_edge("b", "b");
  EXPECT_EQ(g.num_vertices(), 2u);
  EXPECT_EQ(g.num_edges(), 3u);
  EXPECT_EQ(g.edges()[2].src, g.edges()[2].dst);
  EXPECT_EQ(g.out_degrees(), (std::vector<std::size_t>{2, 1}));
  EXPECT_EQ(g.in_degrees(), (std::vector<std::size_t>{0, 3}));
}

TEST(Collection, RejectsDuplicateIds) {
  GraphCollection c;
  c.add(MultiDigraph("x"), Category::Political);
  EXPECT_THROW(c.add(MultiDigraph("x"), Category::Political), DataError);
  EXPECT_NE(c.find("x"), nullptr);
  EXPECT_EQ(c.find("y"), nullptr);
}

TEST(EdgeList, ParsesLabelsAndBlankLines) {
  std::istringstream in("a,b,positive\n\nb,c\nc,a,NEGATIVE\na,a,\n");
  const auto g = parse_edge_list(in, "g");
  ASSERT_EQ(g.num_edges(), 4u);
  EXPECT_EQ(g.edges()[0].label, SentimentLabel::Positive);
  EXPECT_EQ(g.edges()[1].label, SentimentLabel::Unlabeled);
  EXPECT_EQ(g.edges()[2].label, SentimentLabel::Negative);
  EXPECT_EQ(g.edges()[3].label, SentimentLabel::Unlabeled);
}

TEST(EdgeList, UnknownLabelReportsLine) {
  std::istringstream in("a,b\nb,c,furious\n");
  try {
    parse_edge_list(in, "g", {.has_header = false, .source = "x.csv"});
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("x.csv:2"), std::string::npos);
  }
}

TEST(EdgeList, RejectsWrongFieldCountAndEmptyVertex) {
  std::istringstream a("a\n");
  EXPECT_THROW(parse_edge_list(a, "g"), ParseError);
  std::istringstream b("a,b,positive,extra\n");
  EXPECT_THROW(parse_edge_list(b, "g"), ParseError);
  std::istringstream c(",b\n");
  EXPECT_THROW(parse_edge_list(c, "g"), ParseError);
}

TEST(EdgeList, WriteThenParseRoundTrips) {
  Rng rng(3);
  const auto g = oracle::random_graph(rng, {.labeled = true}, "g");
  std::stringstream buf;
  write_edge_list(buf, g);
  const auto back = parse_edge_list(buf, "g");
  ASSERT_EQ(back.num_edges(), g.num_edges());
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    const auto& a = g.edges()[i];
    const auto& b = back.edges()[i];
    EXPECT_EQ(back.name(b.src), g.name(a.src));
    EXPECT_EQ(back.name(b.dst), g.name(a.dst));
    EXPECT_EQ(b.label, a.label);
  }
}

TEST(Manifest, LoadsRelativePathsAndRejectsDuplicates) {
  const auto dir = std::filesystem::temp_directory_path() / "stitch_manifest_test";
  std::filesystem::create_directories(dir / "graphs");
  {
    std::ofstream(dir / "graphs" / "a.csv") << "src,dst,label\nx,y,neutral\n";
    std::ofstream(dir / "graphs" / "b.csv") << "x,y\ny,z\n";
  }
  std::istringstream ok(R"({"graphs":[
    {"id":"a","path":"graphs/a.csv","category":"political","header":true},
    {"id":"b","path":"graphs/b.csv","category":"entertainment"}]})");
  const auto c = parse_manifest(ok, dir);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0].graph.num_edges(), 1u);
  EXPECT_EQ(c[0].category, Category::Political);
  EXPECT_EQ(c[1].graph.num_edges(), 2u);

  std::istringstream dup(R"({"graphs":[{"id":"a","path":"graphs/a.csv","category":"political"},
    {"id":"a","path":"graphs/b.csv","category":"political"}]})");
  EXPECT_THROW(parse_manifest(dup, dir), DataError);
  std::istringstream bad_cat(R"({"graphs":[{"id":"a","path":"graphs/a.csv","category":"sport"}]})");
  EXPECT_THROW(parse_manifest(bad_cat, dir), DataError);
  std::istringstream missing(R"({"graphs":[{"id":"a","path":"graphs/none.csv","category":"political"}]})");
  EXPECT_THROW(parse_manifest(missing, dir), DataError);
  std::filesystem::remove_all(dir);
}

TEST(Metadata, ParsesHashtagsAndRejectsBadCounts) {
  std::istringstream in("vertex,views,followers,likes,hashtags\nu1,10,2,5,a|b\nu2,0,0,0,\n");
  const auto m = parse_vertex_metadata(in);
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m.at("u1").hashtags, (std::set<std::string>{"a", "b"}));
  EXPECT_TRUE(m.at("u2").hashtags.empty());
  std::istringstream bad("vertex,views,followers,likes,hashtags\nu1,ten,2,5,\n");
  EXPECT_THROW(parse_vertex_metadata(bad), ParseError);
}

TEST(VideoGraph, AcceptsInStarsAndFlagsEachRule) {
  EXPECT_TRUE(validate_video_graph(gen_star(4, StarOrientation::In)).valid());

  MultiDigraph loop;
  loop.add_edge("a", "a");
  EXPECT_EQ(validate_video_graph(loop).violations.front().rule, VideoRule::SelfLoop);

  MultiDigraph parallel;
  parallel.add_edge("a", "b");
  parallel.add_edge("a", "b");
  EXPECT_EQ(validate_video_graph(parallel).violations.front().rule, VideoRule::ParallelEdge);

  MultiDigraph two_sources;
  two_sources.add_edge("a", "b");
  two_sources.add_edge("a", "c");
  EXPECT_EQ(validate_video_graph(two_sources).violations.front().rule, VideoRule::MultipleSources);

  MultiDigraph chain = gen_chain(3);
  const auto report = validate_video_graph(chain);
  ASSERT_FALSE(report.valid());
  EXPECT_EQ(report.violations.front().rule, VideoRule::StitchOfStitch);

  MultiDigraph isolated;
  isolated.add_vertex("lonely");
  const auto iso = validate_video_graph(isolated);
  EXPECT_TRUE(iso.valid());
  ASSERT_EQ(iso.warnings.size(), 1u);
  EXPECT_EQ(iso.warnings.front().rule, VideoRule::Isolated);
}

TEST(VideoGraph, DerivesUserGraphEdgeForEdge) {
  MultiDigraph video;
  video.add_edge("v1", "v0", SentimentLabel::Positive);
  video.add_edge("v2", "v0", SentimentLabel::Negative);
  video.add_edge("v3", "v0", SentimentLabel::Neutral);
  const CreatorMap creators = {{"v0", "alice"}, {"v1", "bob"}, {"v2", "bob"}, {"v3", "alice"}};
  const auto user = derive_user_graph(video, creators);
  EXPECT_EQ(user.num_edges(), video.num_edges());
  EXPECT_EQ(user.num_vertices(), 2u);
  EXPECT_EQ(user.edges()[2].src, user.edges()[2].dst);
  EXPECT_EQ(user.edges()[1].label, SentimentLabel::Negative);

  CreatorMap partial = creators;
  partial.erase("v3");
  EXPECT_THROW(derive_user_graph(video, partial), DataError);
  EXPECT_THROW(derive_user_graph(gen_chain(3), {{"v0", "a"}, {"v1", "b"}, {"v2", "c"}}), DataError);
}

TEST(Projection, MergesParallelAndMarksMixedLabels) {
  MultiDigraph g;
  g.add_edge("a", "b", SentimentLabel::Positive);
  g.add_edge("b", "a", SentimentLabel::Positive);
  g.add_edge("b", "c", SentimentLabel::Positive);
  g.add_edge("b", "c", SentimentLabel::Negative);
  g.add_edge("c", "c", SentimentLabel::Negative);
  const auto u = project_undirected_simple(g);
  ASSERT_EQ(u.num_edges(), 2u);
  EXPECT_EQ(u.edges[0].label, EdgeLabel::Positive);
  EXPECT_EQ(u.edges[1].label, EdgeLabel::Mixed);

  const auto d = project_directed_simple(g);
  EXPECT_EQ(d.num_edges(), 3u);

  g.add_edge("b", "c", SentimentLabel::Negative);
  EXPECT_EQ(project_undirected_simple(g, LabelConflict::Majority).edges[1].label,
            EdgeLabel::Negative);
}

TEST(Projection, LargestComponentTieBreaksOnNames) {
  MultiDigraph g;
  g.add_edge("z", "y");
  g.add_edge("b", "c");
  g.add_vertex("q");
  const auto lcc = largest_weak_component(g);
  EXPECT_EQ(lcc.names(), (std::vector<std::string>{"b", "c"}));
  EXPECT_EQ(weak_components(g).size(), 3u);
  EXPECT_THROW(largest_weak_component(MultiDigraph()), InvalidArgument);
}

TEST(Projection, LargestComponentMatchesOracle) {
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    const auto g = oracle::random_graph(rng, {.edge_prob = 0.15}, "g");
    const auto expected = oracle::largest_component(g);
    std::vector<std::string> names;
    for (const auto v : expected) names.push_back(g.name(v));
    EXPECT_EQ(largest_weak_component(g).names(), names);
  }
}

TEST(Generators, StarsChainsCycles) {
  const auto in = gen_star(5, StarOrientation::In);
  EXPECT_EQ(in.num_edges(), 5u);
  for (const auto& e : in.edges()) EXPECT_EQ(in.name(e.dst), "v0");
  const auto out = gen_star(3, StarOrientation::Out);
  for (const auto& e : out.edges()) EXPECT_EQ(out.name(e.src), "v0");
  EXPECT_EQ(gen_chain(4).num_edges(), 3u);
  EXPECT_EQ(gen_cycle(4).num_edges(), 4u);
  EXPECT_THROW(gen_chain(1), InvalidArgument);
  EXPECT_THROW(gen_cycle(2), InvalidArgument);
}

TEST(Generators, SamplesAreValidAndDeterministic) {
  StitchGenConfig cfg;
  cfg.n_graphs = 12;
  cfg.target_sizes = {6, 40, 120};
  cfg.multi_edge_rate = 0.2;
  cfg.self_loop_rate = 0.1;
  const auto a = gen_stitch_samples(cfg);
  const auto b = gen_stitch_samples(cfg);
  ASSERT_EQ(a.size(), 12u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_TRUE(validate_video_graph(a[i].video).valid());
    EXPECT_EQ(a[i].user.num_edges(), a[i].video.num_edges());
    EXPECT_EQ(a[i].user, b[i].user);
    EXPECT_EQ(a[i].user.num_vertices(), cfg.target_sizes[i % 3]);
  }
}

TEST(Generators, DisjointRolesGiveBipartiteUsers) {
  StitchGenConfig cfg;
  cfg.n_graphs = 5;
  cfg.target_sizes = {30};
  cfg.disjoint_roles = true;
  for (const auto& s : gen_stitch_samples(cfg)) {
    const auto out = s.user.out_degrees();
    const auto in = s.user.in_degrees();
    for (std::size_t v = 0; v < out.size(); ++v) EXPECT_FALSE(out[v] > 0 && in[v] > 0);
  }
}

TEST(Generators, RejectsBadConfig) {
  StitchGenConfig cfg;
  cfg.creator_reuse_rate = 1.0;
  EXPECT_THROW(validate(cfg), InvalidArgument);
  cfg = {};
  cfg.target_sizes = {};
  EXPECT_THROW(validate(cfg), InvalidArgument);
}

TEST(Generators, HashtagProfilesCoverAllCategories) {
  std::size_t counts[3] = {0, 0, 0};
  for (const auto& p : kHashtagProfiles) ++counts[static_cast<int>(p.category)];
  EXPECT_EQ(counts[0] + counts[1] + counts[2], 36u);
  const auto cfg = hashtag_profile_config(1);
  EXPECT_EQ(cfg.n_graphs, 36u);
}
