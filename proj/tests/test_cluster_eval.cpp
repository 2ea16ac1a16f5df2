#include <gtest/gtest.h>

#include <numeric>
#include <sstream>

#include "stitch/cluster.hpp"
#include "stitch/error.hpp"
#include "stitch/generators.hpp"
#include "stitch/random.hpp"

using namespace stitch;

namespace {

Labeling make(std::vector<int> labels) {
  Labeling l;
  for (std::size_t i = 0; i < labels.size(); ++i) l.ids.push_back("g" + std::to_string(i));
  l.labels = std::move(labels);
  return l;
}

Labeling random_labeling(Rng& rng, std::size_t n, int k) {
  std::vector<int> labels(n);
  for (auto& l : labels) l = static_cast<int>(rng.below(k + 1)) - 1;
  return make(labels);
}

}  // namespace

TEST(Nmi, Examples) {
  EXPECT_EQ(nmi(make({0, 0, 1, 1, 2}), make({0, 0, 1, 1, 2})), 1.0);
  EXPECT_NEAR(nmi(make({0, 0, 1, 1}), make({0, 1, 0, 1})), 0.0, 1e-15);
  EXPECT_EQ(nmi(make({0, 0, 1, 1}), make({1, 1, 0, 0})), 1.0);
}

TEST(Nmi, ConstantLabelings) {
  EXPECT_EQ(nmi(make({3, 3, 3}), make({7, 7, 7})), 1.0);
  EXPECT_EQ(nmi(make({3, 3, 3}), make({0, 1, 1})), 0.0);
  // Noise points are singletons, so all-noise is not constant.
  EXPECT_EQ(nmi(make({-1, -1, -1}), make({0, 1, 2})), 1.0);
}

TEST(Nmi, KeyMismatchIsAnError) {
  Labeling b = make({0, 1});
  b.ids[1] = "other";
  EXPECT_THROW(nmi(make({0, 1}), b), InvalidArgument);
  EXPECT_THROW(nmi(make({0, 1}), make({0, 1, 2})), InvalidArgument);
}

TEST(Nmi, AlignsById) {
  Labeling b;
  b.ids = {"g3", "g2", "g1", "g0"};
  b.labels = {1, 1, 0, 0};
  EXPECT_EQ(nmi(make({0, 0, 1, 1}), b), 1.0);
}

TEST(Nmi, SymmetricBoundedAndPermutationInvariant) {
  Rng rng(12);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng.below(40);
    const auto a = random_labeling(rng, n, 1 + static_cast<int>(rng.below(5)));
    const auto b = random_labeling(rng, n, 1 + static_cast<int>(rng.below(5)));
    const double ab = nmi(a, b);
    EXPECT_NEAR(ab, nmi(b, a), 1e-12);
    EXPECT_GE(ab, 0.0);
    EXPECT_LE(ab, 1.0);
    Labeling renamed = a;
    for (auto& l : renamed.labels) {
      if (l != kNoise) l = 100 - l;
    }
    EXPECT_NEAR(nmi(renamed, b), ab, 1e-12);
  }
}

TEST(DensityCluster, TwoBlobsAndSparseNoise) {
  Eigen::MatrixXd blobs(8, 2);
  blobs << 0, 0, 0.1, 0, 0, 0.1, 0.1, 0.1, 10, 10, 10.1, 10, 10, 10.1, 10.1, 10.1;
  EXPECT_EQ(density_cluster(blobs, 0.5, 3), (std::vector<int>{0, 0, 0, 0, 1, 1, 1, 1}));

  Eigen::MatrixXd sparse(5, 1);
  sparse << 0, 10, 20, 30, 40;
  EXPECT_EQ(density_cluster(sparse, 1.0, 2), std::vector<int>(5, kNoise));
  EXPECT_EQ(density_cluster(sparse, 1.0, 1), (std::vector<int>{0, 1, 2, 3, 4}));
  EXPECT_THROW(density_cluster(sparse, 0.0, 2), InvalidArgument);
  EXPECT_THROW(density_cluster(sparse, 1.0, 0), InvalidArgument);
}

TEST(DensityCluster, BorderPointsGoToNearestCore) {
  // Cores at 0 and 3 (separate clusters); border at 1.4 is nearer to 0.
  Eigen::MatrixXd m(7, 1);
  m << -0.5, 0, 0.5, 1.4, 2.5, 3, 3.5;
  const auto labels = density_cluster(m, 1.0, 3);
  EXPECT_EQ(labels[3], labels[1]);
  EXPECT_NE(labels[1], labels[5]);
}

TEST(DensityCluster, InvariantUnderRowPermutation) {
  Rng rng(4);
  for (int t = 0; t < 30; ++t) {
    const Eigen::Index n = 40;
    Eigen::MatrixXd m(n, 2);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double cx = static_cast<double>(rng.below(3)) * 3.0;
      m(i, 0) = cx + rng.uniform();
      m(i, 1) = rng.uniform() * 2.0;
    }
    const auto base = density_cluster(m, 0.6, 4);
    std::vector<Eigen::Index> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    Eigen::MatrixXd shuffled(n, 2);
    for (Eigen::Index i = 0; i < n; ++i) shuffled.row(i) = m.row(perm[i]);
    const auto moved = density_cluster(shuffled, 0.6, 4);
    std::vector<int> unshuffled(n);
    for (Eigen::Index i = 0; i < n; ++i) unshuffled[perm[i]] = moved[i];
    EXPECT_EQ(nmi(make(base), make(unshuffled)), 1.0);
    for (Eigen::Index i = 0; i < n; ++i) EXPECT_EQ(base[i] == kNoise, unshuffled[i] == kNoise);
  }
}

TEST(SizeProfile, MonotoneBandsAndCorrelation) {
  StitchGenConfig cfg;
  cfg.n_graphs = 9;
  cfg.target_sizes = {6, 56, 231};
  const auto collection = gen_stitch_collection(cfg);
  Labeling l;
  for (std::size_t i = 0; i < collection.size(); ++i) {
    l.ids.push_back(collection[i].graph.id());
    l.labels.push_back(static_cast<int>(i % 3));
  }
  const auto p = size_profile(l, collection);
  ASSERT_EQ(p.clusters.size(), 3u);
  EXPECT_EQ(p.clusters[0].mean_size, 6.0);
  EXPECT_EQ(p.clusters[1].mean_size, 56.0);
  EXPECT_EQ(p.clusters[2].mean_size, 231.0);
  ASSERT_TRUE(p.size_rank_correlation);
  EXPECT_NEAR(*p.size_rank_correlation, 1.0, 1e-12);

  Labeling one = l;
  std::fill(one.labels.begin(), one.labels.end(), 0);
  const auto single = size_profile(one, collection);
  EXPECT_EQ(single.clusters.size(), 1u);
  EXPECT_FALSE(single.size_rank_correlation);
  EXPECT_EQ(profile_to_json(single)["size_rank_correlation"], nullptr);

  Labeling noisy = l;
  noisy.labels[0] = kNoise;
  const auto with_noise = size_profile(noisy, collection);
  std::size_t members = 0;
  for (const auto& c : with_noise.clusters) members += c.members;
  EXPECT_EQ(members, collection.size());
  EXPECT_EQ(with_noise.clusters.front().label, kNoise);

  Labeling short_l = l;
  short_l.ids.pop_back();
  short_l.labels.pop_back();
  EXPECT_THROW(size_profile(short_l, collection), InvalidArgument);
}

TEST(SizeProfile, MeanVectors) {
  GraphCollection c;
  MultiDigraph a = gen_chain(2);
  a.set_id("a");
  MultiDigraph b = gen_chain(4);
  b.set_id("b");
  c.add(a, Category::Political);
  c.add(b, Category::Political);
  LabeledMatrix m;
  m.row_ids = {"b", "a"};
  m.column_ids = {"x"};
  m.values.resize(2, 1);
  m.values << 4, 2;
  const auto p = size_profile(Labeling{{"a", "b"}, {0, 0}}, c, m);
  ASSERT_EQ(p.clusters.size(), 1u);
  EXPECT_EQ(p.clusters[0].mean_vector(0), 3.0);
  EXPECT_EQ(p.clusters[0].mean_size, 3.0);
}

TEST(LabelingCsv, RoundTripAndErrors) {
  const auto l = make({0, -1, 2});
  std::stringstream buf;
  write_labeling_csv(buf, l);
  EXPECT_EQ(buf.str(), "graph_id,label\ng0,0\ng1,-1\ng2,2\n");
  const auto back = read_labeling_csv(buf);
  EXPECT_EQ(back.ids, l.ids);
  EXPECT_EQ(back.labels, l.labels);
  std::istringstream dup("graph_id,label\na,1\na,2\n");
  EXPECT_THROW(read_labeling_csv(dup), DataError);
  std::istringstream bad("graph_id,label\na,x\n");
  EXPECT_THROW(read_labeling_csv(bad), ParseError);
}

TEST(ClusterPipeline, MatchesManualSteps) {
  Rng rng(31);
  LabeledMatrix m;
  m.values.resize(30, 4);
  for (Eigen::Index i = 0; i < 30; ++i) {
    m.row_ids.push_back("g" + std::to_string(i));
    for (Eigen::Index j = 0; j < 4; ++j) m.values(i, j) = static_cast<double>(rng.below(5 + 40 * (i % 3)));
  }
  ClusterPipeline p{.log1p = true, .pca = 1, .unit_scale = true, .eps = 0.3, .min_pts = 2};
  Eigen::MatrixXd pts = pca_project(Eigen::MatrixXd(m.values.array().log1p().matrix()), 1);
  pts /= std::sqrt(pts.squaredNorm() / 29.0);
  const auto l = cluster_matrix(m, p);
  EXPECT_EQ(l.ids, m.row_ids);
  EXPECT_EQ(l.labels, density_cluster(pts, 0.3, 2));
  EXPECT_TRUE(prepare_points(m.values, p).isApprox(pts, 1e-12));

  LabeledMatrix neg = m;
  neg.values(0, 0) = -1;
  EXPECT_THROW(cluster_matrix(neg, p), DataError);
  EXPECT_THROW(cluster_matrix(m, ClusterPipeline{.pca = 0}), InvalidArgument);
  EXPECT_THROW(cluster_matrix(m, ClusterPipeline{.eps = 0}), InvalidArgument);
  EXPECT_EQ(to_json(p)["pca"], 1);
  EXPECT_EQ(to_json(ClusterPipeline{})["pca"], nullptr);
}
