#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "stitch/graph.hpp"

namespace stitch {

/// Fraction of directed edges whose reverse edge also exists; 0 without edges.
/// Expects a directed simple graph (self-loops already dropped).
double reciprocity(const SimpleGraph& graph);

/// Mean over vertices of triangles(v) / C(deg(v), 2), counting 0 for vertices
/// of degree < 2. Expects an undirected simple graph; 0 for an empty graph.
double avg_local_clustering(const SimpleGraph& graph);

/// Freeman degree centralization sum(d_max - d_v) / ((n-1)(n-2)) of an
/// undirected simple graph. Absent when n <= 2.
std::optional<double> degree_centralization(const SimpleGraph& graph);

enum class DiameterScope { FullGraph, LargestComponent };

struct PathStats {
  std::size_t directed_diameter = 0;    // D
  std::size_t undirected_diameter = 0;  // D_u
  double avg_path_directed = 0.0;       // L, largest weak component
  double avg_path_undirected = 0.0;     // L_u, largest weak component
};

/// Diameters are maxima over reachable ordered pairs of the simple
/// projections; unreachable pairs are excluded. Average path lengths are means
/// over reachable pairs of the largest weakly connected component.
PathStats path_stats(const MultiDigraph& graph,
                     DiameterScope diameter_scope = DiameterScope::FullGraph);

struct MetricsRow {
  std::string graph_id;
  std::size_t n_vertices = 0;
  std::size_t n_edges = 0;
  std::size_t n_components = 0;
  std::size_t directed_diameter = 0;
  std::size_t undirected_diameter = 0;
  double avg_path_directed = 0.0;
  double avg_path_undirected = 0.0;
  std::size_t lcc_size = 0;
  double lcc_clustering = 0.0;
  double lcc_reciprocity = 0.0;
  std::optional<double> lcc_degree_centralization;
};

/// Column means over the member rows of one category. Centralization is
/// averaged over the rows where it is present.
struct AggregateRow {
  Category category = Category::Uncategorized;
  std::size_t members = 0;
  double n_vertices = 0;
  double n_edges = 0;
  double n_components = 0;
  double directed_diameter = 0;
  double undirected_diameter = 0;
  double avg_path_directed = 0;
  double avg_path_undirected = 0;
  double lcc_size = 0;
  double lcc_clustering = 0;
  double lcc_reciprocity = 0;
  std::optional<double> lcc_degree_centralization;
};

struct MetricsReport {
  std::vector<MetricsRow> rows;            // sorted by n_vertices descending, then id
  std::vector<AggregateRow> aggregates;    // one per category present, enum order
};

MetricsRow compute_row(const MultiDigraph& graph,
                       DiameterScope diameter_scope = DiameterScope::FullGraph);

/// Throws InvalidArgument for an empty collection.
MetricsReport compute_report(const GraphCollection& collection, std::size_t threads = 1,
                             DiameterScope diameter_scope = DiameterScope::FullGraph);

/// CSV with header; `-` for absent centralization. Graph rows first, then
/// category aggregates (kind column distinguishes them).
void write_report_csv(std::ostream& out, const MetricsReport& report);
nlohmann::json report_to_json(const MetricsReport& report);

struct MetadataRatios {
  // Mean stitchee value over mean stitcher value; absent when the stitcher
  // mean is zero.
  std::optional<double> view_ratio;
  std::optional<double> follower_ratio;
  std::optional<double> likes_ratio;
  // Share of edges whose endpoints both carry `collection_hashtag` (any
  // shared hashtag when it is empty).
  double same_hashtag_fraction = 0.0;
  std::size_t covered_edges = 0;
};

/// Per-edge averages over edges whose endpoints both have metadata (edge
/// src is the stitcher, dst the stitchee). Throws DataError when no edge is
/// covered.
MetadataRatios metadata_ratios(const MultiDigraph& graph, const VertexMetadataMap& meta,
                               const std::string& collection_hashtag = {});

}  // namespace stitch
