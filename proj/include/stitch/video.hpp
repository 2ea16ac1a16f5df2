#pragma once

#include <map>
#include <string>
#include <vector>

#include "stitch/graph.hpp"

namespace stitch {

// Video vertex id -> creator (user) id.
using CreatorMap = std::map<std::string, std::string>;

enum class VideoRule {
  SelfLoop,          // a video cannot stitch itself
  ParallelEdge,      // the same stitch relation recorded twice
  MultipleSources,   // out-degree > 1: one stitch source per video
  StitchOfStitch,    // a stitched video that is itself a stitch
  Isolated,          // reported as a warning only
};

std::string_view to_string(VideoRule rule);

struct VideoViolation {
  std::string vertex;
  VideoRule rule;
  friend bool operator==(const VideoViolation&, const VideoViolation&) = default;
};

struct VideoValidationReport {
  std::vector<VideoViolation> violations;
  std::vector<VideoViolation> warnings;

  bool valid() const noexcept { return violations.empty(); }
};

// Checks that every weak component is a star whose edges point at the centre.
VideoValidationReport validate_video_graph(const MultiDigraph& graph);

// Maps each video edge to a user edge (same id order and label). Throws
// DataError for an invalid video graph or an unmapped vertex.
MultiDigraph derive_user_graph(const MultiDigraph& video_graph, const CreatorMap& creators);

}  // namespace stitch
