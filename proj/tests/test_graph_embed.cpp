#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "oracles.hpp"
#include "stitch/embed.hpp"
#include "stitch/error.hpp"
#include "stitch/generators.hpp"
#include "stitch/projection.hpp"

using namespace stitch;

namespace {

MultiDigraph named(MultiDigraph g, const std::string& id) {
  g.set_id(id);
  return g;
}

Pattern code_of(const MultiDigraph& g) {
  return min_dfs_code(project_undirected_simple(g), MiningMode::Undirected);
}

std::vector<std::string> sorted(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  return v;
}

double cosine(const Eigen::MatrixXd& m, int a, int b) {
  return m.row(a).dot(m.row(b)) / (m.row(a).norm() * m.row(b).norm());
}

}  // namespace

TEST(BagOfSubgraphs, BinaryAndCountCells) {
  GraphCollection c;
  c.add(named(gen_chain(2), "edge"), Category::Political);
  c.add(named(gen_chain(3), "p3"), Category::Political);
  c.add(named(gen_cycle(3), "tri"), Category::Political);
  c.add(MultiDigraph("empty"), Category::Political);
  const std::vector<Pattern> patterns = {code_of(gen_chain(2)), code_of(gen_chain(3))};
  const auto bin = bag_of_subgraphs(c, patterns);
  Eigen::MatrixXd expected(4, 2);
  expected << 1, 0, 1, 1, 1, 1, 0, 0;
  EXPECT_EQ(bin.matrix.values, expected);
  EXPECT_EQ(bin.matrix.column_ids, (std::vector<std::string>{"0-1u", "0-1u 1-2u"}));

  const auto count = bag_of_subgraphs(c, patterns, {.variant = BosVariant::Count, .threads = 2});
  EXPECT_EQ(count.matrix.values(2, 1), 3.0);
  EXPECT_EQ(count.matrix.values(2, 0), 3.0);
  EXPECT_EQ(count.matrix.values(3, 1), 0.0);

  EXPECT_THROW(bag_of_subgraphs(c, {}), InvalidArgument);
  Pattern directed = patterns[0];
  directed.mode = MiningMode::Directed;
  EXPECT_THROW(bag_of_subgraphs(c, {patterns[0], directed}), InvalidArgument);
}

TEST(BagOfSubgraphs, BinaryRowsAgreeWithMinerSupport) {
  Rng rng(17);
  GraphCollection c;
  for (int i = 0; i < 10; ++i) {
    c.add(oracle::random_graph(rng, {.max_vertices = 7, .edge_prob = 0.35}, "g" + std::to_string(i)),
          Category::Political);
  }
  const auto mined = mine_frequent(c, {.min_support = 2, .max_vertices = 4});
  std::vector<Pattern> patterns;
  for (const auto& m : mined) patterns.push_back(m.pattern);
  const auto bin = bag_of_subgraphs(c, patterns);
  for (std::size_t col = 0; col < mined.size(); ++col) {
    for (std::size_t row = 0; row < c.size(); ++row) {
      const auto& ids = mined[col].supporting_graph_ids;
      const bool supported = std::binary_search(ids.begin(), ids.end(), c[row].graph.id());
      EXPECT_EQ(bin.matrix.values(row, col), supported ? 1.0 : 0.0);
    }
  }
}

TEST(BagOfSubgraphs, CountsMatchBruteForce) {
  Rng rng(23);
  GraphCollection c;
  std::vector<MultiDigraph> graphs;
  for (int i = 0; i < 12; ++i) {
    graphs.push_back(oracle::random_graph(rng, {.max_vertices = 8, .edge_prob = 0.4},
                                          "g" + std::to_string(i)));
    c.add(graphs.back(), Category::Political);
  }
  std::vector<Pattern> patterns;
  for (const auto& m : mine_frequent(c, {.min_support = 1, .max_vertices = 4})) {
    patterns.push_back(m.pattern);
  }
  const auto counts = bag_of_subgraphs(c, patterns, {.variant = BosVariant::Count});
  for (std::size_t r = 0; r < graphs.size(); ++r) {
    const auto host = oracle::project(graphs[r], oracle::all_vertices(graphs[r]), MiningMode::Undirected);
    for (std::size_t p = 0; p < patterns.size(); ++p) {
      EXPECT_EQ(counts.matrix.values(r, p),
                oracle::count_copies(host, oracle::pattern_matrix(patterns[p]), MiningMode::Undirected));
    }
  }
}

TEST(MatrixCsv, RoundTripsExactly) {
  LabeledMatrix m;
  m.row_ids = {"a", "b"};
  m.column_ids = {"x", "y", "z"};
  m.values.resize(2, 3);
  m.values << 1, 0.1, -3.25e-7, 1.0 / 3.0, 1e300, 42;
  std::stringstream buf;
  write_matrix_csv(buf, m);
  EXPECT_EQ(buf.str().substr(0, 15), "graph_id,x,y,z\n");
  const auto back = read_matrix_csv(buf);
  EXPECT_EQ(back.row_ids, m.row_ids);
  EXPECT_EQ(back.column_ids, m.column_ids);
  EXPECT_EQ(back.values, m.values);
  std::istringstream ragged("graph_id,x\na,1,2\n");
  EXPECT_THROW(read_matrix_csv(ragged), ParseError);
  std::istringstream bad("graph_id,x\na,oops\n");
  EXPECT_THROW(read_matrix_csv(bad), ParseError);
}

TEST(WlDocument, PathOfThree) {
  const auto doc0 = wl_document(project_undirected_simple(gen_chain(3)), 0);
  EXPECT_EQ(doc0.tokens, std::vector<std::string>(3, std::string(kWlBaseToken)));
  const auto doc = wl_document(project_undirected_simple(gen_chain(3)), 1);
  ASSERT_EQ(doc.tokens.size(), 6u);
  const std::string b(kWlBaseToken);
  const auto end = stable_hash_hex(b + "(" + b + ")");
  const auto mid = stable_hash_hex(b + "(" + b + "," + b + ")");
  EXPECT_EQ(sorted(doc.tokens), sorted({b, b, b, end, end, mid}));
  EXPECT_NE(end, mid);
}

TEST(WlDocument, StableHashKnownValues) {
  EXPECT_EQ(stable_hash_hex(""), "cbf29ce484222325");
  EXPECT_EQ(stable_hash_hex("a"), "af63dc4c8601ec8c");
}

TEST(WlDocument, PermutationInvariantAndSeparatesDegreeSequences) {
  Rng rng(41);
  for (int i = 0; i < 50; ++i) {
    const auto g = oracle::random_graph(rng, {.max_vertices = 10, .edge_prob = 0.3}, "g");
    const auto base = sorted(wl_document(project_undirected_simple(g), 3).tokens);
    for (int k = 0; k < 3; ++k) {
      EXPECT_EQ(sorted(wl_document(project_undirected_simple(oracle::permuted(rng, g)), 3).tokens), base);
    }
  }
  EXPECT_NE(sorted(wl_document(project_undirected_simple(gen_chain(4)), 1).tokens),
            sorted(wl_document(project_undirected_simple(gen_star(3, StarOrientation::In)), 1).tokens));
}

TEST(WlDocument, CorpusUsesCollectionIds) {
  GraphCollection c;
  c.add(named(gen_cycle(5), "c5"), Category::Political);
  c.add(named(gen_star(4, StarOrientation::Out), "s4"), Category::Political);
  const auto docs = wl_documents(c, 2, MiningScope::FullGraph, 2);
  ASSERT_EQ(docs.size(), 2u);
  EXPECT_EQ(docs[1].graph_id, "s4");
  EXPECT_EQ(docs[0].tokens.size(), 15u);
}

TEST(Training, DuplicateDocumentsEmbedTogether) {
  std::vector<std::string> a, b;
  for (int i = 0; i < 40; ++i) {
    a.push_back("a" + std::to_string(i % 10));
    b.push_back("b" + std::to_string(i % 10));
  }
  const std::vector<WlDocument> docs = {{"d1", a}, {"d2", a}, {"other", b}};
  TrainConfig cfg;
  cfg.dim = 32;
  cfg.seed = 5;
  const auto one = train_embeddings(docs, cfg);
  const auto two = train_embeddings(docs, cfg);
  EXPECT_EQ(one.matrix.values, two.matrix.values);
  EXPECT_EQ(one.info.epoch_losses.size(), 50u);
  EXPECT_EQ(one.matrix.values.cols(), 32);
  EXPECT_TRUE(one.matrix.values.allFinite());
  EXPECT_GT(cosine(one.matrix.values, 0, 1), cosine(one.matrix.values, 0, 2));
  EXPECT_EQ(training_info_json(one.info)["vocabulary_size"], 20);
  cfg.seed = 6;
  EXPECT_NE(train_embeddings(docs, cfg).matrix.values, one.matrix.values);
}

TEST(Training, LossFallsOnWlCorpus) {
  Rng rng(1);
  std::vector<WlDocument> docs;
  for (int i = 0; i < 20; ++i) {
    const auto g = oracle::random_graph(rng, {.min_vertices = 5, .max_vertices = 15, .edge_prob = 0.3}, "g");
    docs.push_back(wl_document(project_undirected_simple(g), 2));
    docs.back().graph_id = "g" + std::to_string(i);
  }
  TrainConfig cfg;
  cfg.seed = 3;
  const auto e = train_embeddings(docs, cfg);
  EXPECT_LT(e.info.final_loss(), e.info.epoch_losses.front());
}

TEST(Training, RejectsBadInput) {
  std::vector<WlDocument> docs = {{"a", {"x"}}, {"b", {"y"}}};
  TrainConfig cfg;
  EXPECT_THROW(train_embeddings(docs, cfg), InvalidArgument);
  cfg.seed = 1;
  EXPECT_THROW(train_embeddings({docs[0]}, cfg), InvalidArgument);
  EXPECT_THROW(train_embeddings({{"a", {}}, {"b", {}}}, cfg), DataError);
  cfg.dim = 0;
  EXPECT_THROW(train_embeddings(docs, cfg), InvalidArgument);
}

TEST(Training, FiniteAcrossConfigSweep) {
  Rng rng(77);
  std::vector<WlDocument> docs;
  for (int i = 0; i < 6; ++i) {
    const auto g = oracle::random_graph(rng, {.max_vertices = 10, .edge_prob = 0.3}, "g");
    docs.push_back(wl_document(project_undirected_simple(g), 2));
    docs.back().graph_id = "g" + std::to_string(i);
  }
  for (const std::size_t dim : {1, 8, 64}) {
    for (const double lr : {0.001, 0.025, 1.0}) {
      TrainConfig cfg;
      cfg.dim = dim;
      cfg.learning_rate = lr;
      cfg.min_learning_rate = std::min(lr, 0.0001);
      cfg.epochs = 10;
      cfg.negative_samples = 1 + rng.below(10);
      cfg.seed = rng.next();
      EXPECT_TRUE(train_embeddings(docs, cfg).matrix.values.allFinite());
    }
  }
}

TEST(Pca, IdenticalRowsCollapseToOrigin) {
  const Eigen::MatrixXd same = Eigen::MatrixXd::Constant(4, 3, 2.5);
  EXPECT_EQ(pca_project(same, 2), Eigen::MatrixXd::Zero(4, 2));
}

TEST(Pca, TwoRowsSeparateOnFirstAxis) {
  Eigen::MatrixXd m(2, 3);
  m << 0, 0, 0, 3, 4, 0;
  const auto p = pca_project(m, 2);
  EXPECT_NEAR(std::abs(p(0, 0) - p(1, 0)), 5.0, 1e-12);
  EXPECT_EQ(p.col(1), Eigen::VectorXd::Zero(2));
}

TEST(Pca, SignConventionAndRepeatability) {
  Rng rng(3);
  Eigen::MatrixXd m(10, 4);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.uniform();
  const auto a = pca_project(m, 2);
  EXPECT_EQ(a, pca_project(m, 2));
  // Negated input keeps the same signed axes, so the coordinates negate.
  EXPECT_TRUE(a.isApprox(-pca_project(-m, 2), 1e-9));
  EXPECT_THROW(pca_project(Eigen::MatrixXd(1, 3), 2), InvalidArgument);
  EXPECT_THROW(pca_project(Eigen::MatrixXd(3, 0), 2), InvalidArgument);
}

TEST(Pca, LabeledWrapperNamesComponents) {
  LabeledMatrix m;
  m.row_ids = {"a", "b", "c"};
  m.column_ids = {"x", "y"};
  m.values.resize(3, 2);
  m.values << 1, 2, 3, 4, 5, 7;
  const auto p = pca_project(m, 2);
  EXPECT_EQ(p.column_ids, (std::vector<std::string>{"pc1", "pc2"}));
  EXPECT_EQ(p.row_ids, m.row_ids);
}
