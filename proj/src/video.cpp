#include "stitch/video.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <utility>

#include "stitch/error.hpp"

namespace stitch {

std::string_view to_string(VideoRule rule) {
  constexpr std::array<std::string_view, 5> kNames = {
      "self_loop", "parallel_edge", "multiple_sources", "stitch_of_stitch", "isolated"};
  return kNames[static_cast<std::size_t>(rule)];
}

VideoValidationReport validate_video_graph(const MultiDigraph& graph) {
  VideoValidationReport report;
  const auto out = graph.out_degrees();
  const auto in = graph.in_degrees();

  std::set<std::pair<VertexIndex, VertexIndex>> seen;
  std::set<std::pair<VertexIndex, VideoRule>> flagged;
  auto flag = [&](VertexIndex v, VideoRule rule) {
    if (flagged.emplace(v, rule).second) report.violations.push_back({graph.name(v), rule});
  };

  for (const auto& e : graph.edges()) {
    if (e.src == e.dst) flag(e.src, VideoRule::SelfLoop);
    if (!seen.emplace(e.src, e.dst).second) flag(e.src, VideoRule::ParallelEdge);
  }
  for (VertexIndex v = 0; v < graph.num_vertices(); ++v) {
    if (out[v] > 1) flag(v, VideoRule::MultipleSources);
    if (out[v] > 0 && in[v] > 0) flag(v, VideoRule::StitchOfStitch);
    if (out[v] == 0 && in[v] == 0) report.warnings.push_back({graph.name(v), VideoRule::Isolated});
  }
  return report;
}

MultiDigraph derive_user_graph(const MultiDigraph& video_graph, const CreatorMap& creators) {
  const auto report = validate_video_graph(video_graph);
  if (!report.valid()) {
    const auto& first = report.violations.front();
    throw DataError("graph '" + video_graph.id() + "' is not a valid video graph: vertex '" +
                    first.vertex + "' violates " + std::string(to_string(first.rule)));
  }

  MultiDigraph users(video_graph.id());
  std::vector<VertexIndex> image(video_graph.num_vertices());
  for (VertexIndex v = 0; v < video_graph.num_vertices(); ++v) {
    const auto it = creators.find(video_graph.name(v));
    if (it == creators.end()) {
      throw DataError("graph '" + video_graph.id() + "': video '" + video_graph.name(v) +
                      "' has no creator");
    }
    image[v] = users.add_vertex(it->second);
  }
  for (const auto& e : video_graph.edges()) users.add_edge(image[e.src], image[e.dst], e.label);
  return users;
}

}  // namespace stitch
