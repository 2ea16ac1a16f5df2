#include "stitch/generators.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <string>

#include "stitch/error.hpp"
#include "stitch/random.hpp"

namespace stitch {

namespace {

std::string vid(std::size_t i) { return "v" + std::to_string(i); }

}  // namespace

MultiDigraph gen_star(std::size_t leaves, StarOrientation orientation) {
  if (leaves < 1) throw InvalidArgument("gen_star: need at least one leaf");
  MultiDigraph g("star" + std::to_string(leaves));
  g.add_vertex(vid(0));
  for (std::size_t i = 1; i <= leaves; ++i) {
    if (orientation == StarOrientation::In) {
      g.add_edge(vid(i), vid(0));
    } else {
      g.add_edge(vid(0), vid(i));
    }
  }
  return g;
}

MultiDigraph gen_chain(std::size_t n) {
  if (n < 2) throw InvalidArgument("gen_chain: need at least 2 vertices");
  MultiDigraph g("chain" + std::to_string(n));
  for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(vid(i), vid(i + 1));
  return g;
}

MultiDigraph gen_cycle(std::size_t n) {
  if (n < 3) throw InvalidArgument("gen_cycle: need at least 3 vertices");
  MultiDigraph g = gen_chain(n);
  g.set_id("cycle" + std::to_string(n));
  g.add_edge(vid(n - 1), vid(0));
  return g;
}

void validate(const StitchGenConfig& config) {
  auto probability = [](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw InvalidArgument(std::string("gen_stitch_collection: ") + name + " must be in [0,1]");
    }
  };
  probability(config.multi_edge_rate, "multi_edge_rate");
  probability(config.self_loop_rate, "self_loop_rate");
  probability(config.creator_reuse_rate, "creator_reuse_rate");
  if (config.creator_reuse_rate >= 1.0) {
    throw InvalidArgument("gen_stitch_collection: creator_reuse_rate must be below 1");
  }
  if (config.multi_edge_rate + config.self_loop_rate > 1.0) {
    throw InvalidArgument("gen_stitch_collection: multi_edge_rate + self_loop_rate exceeds 1");
  }
  if (config.target_sizes.empty()) {
    throw InvalidArgument("gen_stitch_collection: target_sizes is empty");
  }
  for (const auto size : config.target_sizes) {
    if (size < 2) throw InvalidArgument("gen_stitch_collection: target sizes must be >= 2");
  }
  if (!std::isfinite(config.star_exponent) || config.star_exponent < 0.0) {
    throw InvalidArgument("gen_stitch_collection: star_exponent must be finite and >= 0");
  }
  double total = 0.0;
  for (const double w : config.label_weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw InvalidArgument("gen_stitch_collection: label weights must be finite and >= 0");
    }
    total += w;
  }
  if (total <= 0.0) throw InvalidArgument("gen_stitch_collection: label weights sum to zero");
}

namespace {

class StitchSampler {
 public:
  StitchSampler(const StitchGenConfig& config, Rng& rng) : config_(config), rng_(rng) {
    double acc = 0.0;
    for (const double w : config.label_weights) label_cdf_.push_back(acc += w);
  }

  SyntheticGraph sample(const std::string& id, std::size_t target, Category category) {
    SyntheticGraph out{MultiDigraph(id), {}, {}, category};
    users_ = 0;
    is_stitcher_.clear();
    stitchers_.clear();
    stitchee_hits_.clear();
    std::size_t videos = 0;

    while (users_ < target) {
      // A new centre on the last free slot would leave no room for its leaves.
      const std::size_t center_user = pick_center(target - users_ == 1 && users_ > 0);
      const std::size_t leaves = star_size(std::max<std::size_t>(target - users_, 1));

      const std::string center = vid(videos++);
      out.video.add_vertex(center);
      out.creators[center] = uname(center_user);
      stitchee_hits_.push_back(center_user);

      std::vector<std::size_t> star_stitchers;
      for (std::size_t j = 0; j < leaves; ++j) {
        const std::string leaf = vid(videos++);
        const std::size_t leaf_user = pick_leaf(center_user, star_stitchers);
        star_stitchers.push_back(leaf_user);
        out.creators[leaf] = uname(leaf_user);
        const auto label = static_cast<SentimentLabel>(rng_.from_cumulative(label_cdf_));
        out.video.add_edge(leaf, center, label);
      }
    }
    out.user = derive_user_graph(out.video, out.creators);
    return out;
  }

 private:
  static std::string uname(std::size_t i) { return "u" + std::to_string(i); }

  std::size_t new_user() {
    is_stitcher_.push_back(false);
    return users_++;
  }

  void mark_stitcher(std::size_t u) {
    if (!is_stitcher_[u]) {
      is_stitcher_[u] = true;
      stitchers_.push_back(u);
    }
  }

  std::size_t star_size(std::size_t cap) {
    double acc = size_cdf_.empty() ? 0.0 : size_cdf_.back();
    for (std::size_t k = size_cdf_.size() + 1; k <= cap; ++k) {
      acc += std::pow(static_cast<double>(k), -config_.star_exponent);
      size_cdf_.push_back(acc);
    }
    return rng_.from_cumulative(std::span<const double>(size_cdf_).first(cap)) + 1;
  }

  // Popular stitchees attract further stitches: reuse is proportional to hits.
  std::size_t pick_center(bool force_reuse) {
    if (!stitchee_hits_.empty() && (force_reuse || rng_.bernoulli(config_.creator_reuse_rate))) {
      if (config_.disjoint_roles || rng_.bernoulli(0.5)) {
        return stitchee_hits_[rng_.below(stitchee_hits_.size())];
      }
      return rng_.below(users_);
    }
    return new_user();
  }

  std::size_t pick_leaf(std::size_t center_user, const std::vector<std::size_t>& star_stitchers) {
    const double r = rng_.uniform();
    if (!config_.disjoint_roles && r < config_.self_loop_rate) return center_user;
    if (r >= config_.self_loop_rate && r < config_.self_loop_rate + config_.multi_edge_rate &&
        !star_stitchers.empty()) {
      return star_stitchers[rng_.below(star_stitchers.size())];
    }
    const std::size_t pool = config_.disjoint_roles ? stitchers_.size() : users_;
    if (pool > 0 && rng_.bernoulli(config_.creator_reuse_rate)) {
      for (int attempt = 0; attempt < 4; ++attempt) {
        const std::size_t pick = rng_.below(pool);
        const std::size_t u = config_.disjoint_roles ? stitchers_[pick] : pick;
        const bool taken = u == center_user || std::find(star_stitchers.begin(),
                                                         star_stitchers.end(),
                                                         u) != star_stitchers.end();
        if (!taken) {
          mark_stitcher(u);
          return u;
        }
      }
    }
    const std::size_t u = new_user();
    mark_stitcher(u);
    return u;
  }

  const StitchGenConfig& config_;
  Rng& rng_;
  std::vector<double> label_cdf_;
  std::vector<double> size_cdf_;
  std::size_t users_ = 0;
  std::vector<bool> is_stitcher_;
  std::vector<std::size_t> stitchers_;
  std::vector<std::size_t> stitchee_hits_;
};

}  // namespace

std::vector<SyntheticGraph> gen_stitch_samples(const StitchGenConfig& config) {
  validate(config);
  Rng rng(config.seed);
  StitchSampler sampler(config, rng);
  std::vector<SyntheticGraph> out;
  out.reserve(config.n_graphs);
  constexpr Category kTopics[] = {Category::SharedInterest, Category::Entertainment,
                                  Category::Political};
  const int width = config.n_graphs > 100 ? 4 : 2;
  for (std::size_t i = 0; i < config.n_graphs; ++i) {
    std::string id;
    if (!config.graph_ids.empty()) {
      id = config.graph_ids[i % config.graph_ids.size()];
      if (i >= config.graph_ids.size()) id += "_" + std::to_string(i / config.graph_ids.size());
    } else {
      id = std::to_string(i);
      id = "g" + std::string(std::max<int>(0, width - static_cast<int>(id.size())), '0') + id;
    }
    const Category category = config.categories.empty()
                                  ? kTopics[rng.below(3)]
                                  : config.categories[i % config.categories.size()];
    const std::size_t target = config.target_sizes[i % config.target_sizes.size()];
    out.push_back(sampler.sample(id, target, category));
  }
  return out;
}

GraphCollection gen_stitch_collection(const StitchGenConfig& config) {
  GraphCollection collection;
  for (auto& sample : gen_stitch_samples(config)) {
    collection.add(std::move(sample.user), sample.category);
  }
  return collection;
}

const std::array<HashtagProfile, 36> kHashtagProfiles = {{
    {"comedy", 4608, Category::Entertainment},
    {"booktok", 3540, Category::SharedInterest},
    {"storytime", 2036, Category::Entertainment},
    {"lgbt", 1685, Category::SharedInterest},
    {"anime", 1605, Category::SharedInterest},
    {"palestine", 1236, Category::Political},
    {"catsoftiktok", 1059, Category::Entertainment},
    {"gaming", 1023, Category::SharedInterest},
    {"football", 935, Category::Entertainment},
    {"dogsoftiktok", 919, Category::Entertainment},
    {"makeup", 915, Category::SharedInterest},
    {"kpop", 906, Category::SharedInterest},
    {"gaza", 801, Category::Political},
    {"news", 784, Category::Entertainment},
    {"trump2024", 768, Category::Political},
    {"gym", 742, Category::SharedInterest},
    {"maga", 644, Category::Political},
    {"israel", 594, Category::Political},
    {"movie", 583, Category::Entertainment},
    {"challenge", 485, Category::Entertainment},
    {"learnontiktok", 464, Category::Entertainment},
    {"science", 411, Category::Entertainment},
    {"blacklivesmatter", 388, Category::Political},
    {"conspiracy", 365, Category::Entertainment},
    {"election", 334, Category::Political},
    {"watermelon", 290, Category::Entertainment},
    {"asmr", 191, Category::Entertainment},
    {"minecraft", 151, Category::SharedInterest},
    {"biden2024", 188, Category::Political},
    {"prochoice", 141, Category::Political},
    {"tiktoknews", 120, Category::Entertainment},
    {"plantsoftiktok", 96, Category::SharedInterest},
    {"abortion", 87, Category::Political},
    {"climatechange", 86, Category::Political},
    {"jazz", 32, Category::SharedInterest},
    {"guncontrol", 10, Category::Political},
}};

StitchGenConfig hashtag_profile_config(std::uint64_t seed) {
  StitchGenConfig config;
  config.n_graphs = kHashtagProfiles.size();
  config.target_sizes.clear();
  for (const auto& profile : kHashtagProfiles) {
    config.target_sizes.push_back(profile.n_vertices);
    config.categories.push_back(profile.category);
    config.graph_ids.emplace_back(profile.hashtag);
  }
  config.seed = seed;
  return config;
}

}  // namespace stitch
