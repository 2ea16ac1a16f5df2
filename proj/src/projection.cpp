#include "stitch/projection.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <utility>

#include "stitch/error.hpp"

namespace stitch {

namespace {

class LabelTally {
 public:
  void add(EdgeLabel label) { ++counts_[static_cast<std::size_t>(label)]; }

  EdgeLabel resolve(LabelConflict conflict) const {
    std::size_t distinct = 0;
    std::size_t best = 0;
    for (std::size_t i = 0; i < counts_.size(); ++i) {
      if (counts_[i] == 0) continue;
      ++distinct;
      if (counts_[i] > counts_[best] || counts_[best] == 0) best = i;
    }
    if (distinct == 1) return static_cast<EdgeLabel>(best);
    if (conflict == LabelConflict::Mixed) return EdgeLabel::Mixed;
    const auto top = counts_[best];
    if (std::count(counts_.begin(), counts_.end(), top) > 1) return EdgeLabel::Mixed;
    return static_cast<EdgeLabel>(best);
  }

 private:
  std::array<std::size_t, kEdgeLabelCount> counts_{};
};

template <typename EdgeRange>
SimpleGraph collapse(const std::string& id, const std::vector<std::string>& names,
                     const EdgeRange& edges, bool directed, LabelConflict conflict) {
  std::map<std::pair<VertexIndex, VertexIndex>, LabelTally> pairs;
  for (const auto& [u, v, label] : edges) {
    if (u == v) continue;
    const std::pair<VertexIndex, VertexIndex> key =
        (directed || u < v) ? std::pair{u, v} : std::pair{v, u};
    pairs[key].add(label);
  }
  SimpleGraph out;
  out.id = id;
  out.directed = directed;
  out.names = names;
  out.edges.reserve(pairs.size());
  for (const auto& [key, tally] : pairs) {
    out.edges.push_back({key.first, key.second, tally.resolve(conflict)});
  }
  return out;
}

using RawEdge = std::tuple<VertexIndex, VertexIndex, EdgeLabel>;

std::vector<RawEdge> raw_edges(const MultiDigraph& graph) {
  std::vector<RawEdge> edges;
  edges.reserve(graph.num_edges());
  for (const auto& e : graph.edges()) edges.emplace_back(e.src, e.dst, to_edge_label(e.label));
  return edges;
}

std::vector<std::vector<VertexIndex>> components_from_adjacency(
    const std::vector<std::vector<VertexIndex>>& adj) {
  const std::size_t n = adj.size();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<VertexIndex>> components;
  std::vector<VertexIndex> stack;
  for (VertexIndex root = 0; root < n; ++root) {
    if (seen[root]) continue;
    std::vector<VertexIndex> comp;
    stack.push_back(root);
    seen[root] = true;
    while (!stack.empty()) {
      const VertexIndex v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (const VertexIndex w : adj[v]) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    components.push_back(std::move(comp));
  }
  return components;
}

}  // namespace

SimpleGraph project_undirected_simple(const MultiDigraph& graph, LabelConflict conflict) {
  return collapse(graph.id(), graph.names(), raw_edges(graph), false, conflict);
}

SimpleGraph project_directed_simple(const MultiDigraph& graph, LabelConflict conflict) {
  return collapse(graph.id(), graph.names(), raw_edges(graph), true, conflict);
}

SimpleGraph to_undirected(const SimpleGraph& graph, LabelConflict conflict) {
  if (!graph.directed) return graph;
  std::vector<RawEdge> edges;
  edges.reserve(graph.edges.size());
  for (const auto& e : graph.edges) edges.emplace_back(e.u, e.v, e.label);
  return collapse(graph.id, graph.names, edges, false, conflict);
}

std::vector<std::vector<VertexIndex>> weak_components(const MultiDigraph& graph) {
  std::vector<std::vector<VertexIndex>> adj(graph.num_vertices());
  for (const auto& e : graph.edges()) {
    adj[e.src].push_back(e.dst);
    adj[e.dst].push_back(e.src);
  }
  return components_from_adjacency(adj);
}

std::vector<std::vector<VertexIndex>> weak_components(const SimpleGraph& graph) {
  return components_from_adjacency(graph.undirected_adjacency());
}

MultiDigraph largest_weak_component(const MultiDigraph& graph) {
  if (graph.num_vertices() == 0) {
    throw InvalidArgument("largest_weak_component: graph '" + graph.id() + "' is empty");
  }
  const auto components = weak_components(graph);

  auto sorted_names = [&](const std::vector<VertexIndex>& comp) {
    std::vector<std::string> names;
    names.reserve(comp.size());
    for (const VertexIndex v : comp) names.push_back(graph.name(v));
    std::sort(names.begin(), names.end());
    return names;
  };

  std::size_t best = 0;
  auto best_names = sorted_names(components[0]);
  for (std::size_t i = 1; i < components.size(); ++i) {
    if (components[i].size() < components[best].size()) continue;
    auto names = sorted_names(components[i]);
    if (components[i].size() > components[best].size() || names < best_names) {
      best = i;
      best_names = std::move(names);
    }
  }
  return graph.induced(components[best]);
}

}  // namespace stitch
