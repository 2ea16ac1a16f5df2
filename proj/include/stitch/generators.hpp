#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "stitch/graph.hpp"
#include "stitch/video.hpp"

namespace stitch {

enum class StarOrientation { In, Out };

// Vertex ids are v0, v1, ...; the star centre is v0. In-stars point leaf -> centre.
MultiDigraph gen_star(std::size_t leaves, StarOrientation orientation);
// v0 -> v1 -> ... -> v{n-1}. Requires n >= 2.
MultiDigraph gen_chain(std::size_t n);
// Chain closed by v{n-1} -> v0. Requires n >= 3.
MultiDigraph gen_cycle(std::size_t n);

struct StitchGenConfig {
  std::size_t n_graphs = 36;
  // Target user-vertex count per graph, cycled over graphs.
  std::vector<std::size_t> target_sizes = {50};
  // Per leaf: chance of reusing a creator already stitching this star.
  double multi_edge_rate = 0.0;
  // Per leaf: chance that the stitcher is the stitchee's own creator.
  double self_loop_rate = 0.0;
  // Per star/leaf: chance of drawing an existing user instead of a new one.
  double creator_reuse_rate = 0.1;
  // Star sizes follow P(k) ~ k^-exponent, truncated to the remaining budget.
  double star_exponent = 2.0;
  // Users never act as both stitcher and stitchee; self-loops are suppressed.
  bool disjoint_roles = false;
  // Weights over SentimentLabel (Positive, Neutral, Negative, NoContent, Unlabeled).
  std::array<double, kSentimentLabelCount> label_weights = {1, 1, 1, 1, 0};
  // Cycled over graphs; when empty each graph draws one of the three topic categories.
  std::vector<Category> categories;
  // Graph ids, cycled; when empty ids are g00, g01, ...
  std::vector<std::string> graph_ids;
  std::uint64_t seed = 7;
};

void validate(const StitchGenConfig& config);

struct SyntheticGraph {
  MultiDigraph video;
  CreatorMap creators;
  MultiDigraph user;
  Category category = Category::Uncategorized;
};

// Samples video star-forests and creator maps, then derives user graphs.
// Deterministic per seed.
std::vector<SyntheticGraph> gen_stitch_samples(const StitchGenConfig& config);
GraphCollection gen_stitch_collection(const StitchGenConfig& config);

struct HashtagProfile {
  std::string_view hashtag;
  std::size_t n_vertices;
  Category category;
};

// Reference user-graph sizes and topic categories of the 36 observed hashtag
// collections, in decreasing size order.
extern const std::array<HashtagProfile, 36> kHashtagProfiles;

// Config whose sizes, categories and ids follow kHashtagProfiles.
StitchGenConfig hashtag_profile_config(std::uint64_t seed);

}  // namespace stitch
