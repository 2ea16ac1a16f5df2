#pragma once

#include <vector>

#include "stitch/graph.hpp"

namespace stitch {

// How disagreeing labels are resolved when edges collapse into one.
enum class LabelConflict {
  Mixed,     // any disagreement yields EdgeLabel::Mixed
  Majority,  // most frequent label; ties yield EdgeLabel::Mixed
};

// Drops self-loops and merges parallel and antiparallel edges into one
// undirected edge per vertex pair.
SimpleGraph project_undirected_simple(const MultiDigraph& graph,
                                      LabelConflict conflict = LabelConflict::Mixed);

// Drops self-loops and merges parallel same-direction edges.
SimpleGraph project_directed_simple(const MultiDigraph& graph,
                                    LabelConflict conflict = LabelConflict::Mixed);

// Undirected projection of an already simple graph (identity when undirected).
SimpleGraph to_undirected(const SimpleGraph& graph, LabelConflict conflict = LabelConflict::Mixed);

// Weakly connected components, each sorted ascending; components ordered by
// their smallest vertex.
std::vector<std::vector<VertexIndex>> weak_components(const MultiDigraph& graph);
std::vector<std::vector<VertexIndex>> weak_components(const SimpleGraph& graph);

// Subgraph induced on the largest weakly connected vertex set. Ties go to the
// lexicographically smaller sorted vertex-id set. Throws InvalidArgument on an
// empty graph.
MultiDigraph largest_weak_component(const MultiDigraph& graph);

}  // namespace stitch
