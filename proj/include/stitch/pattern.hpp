#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stitch/graph.hpp"

namespace stitch {

enum class MiningMode : std::uint8_t { Undirected, Directed, EdgeLabeled };

std::string_view to_string(MiningMode mode);
std::optional<MiningMode> parse_mining_mode(std::string_view text);

// Relation of a DFS-code edge seen from its `from` vertex. The directed
// values form a bitmask: Both == Out | In.
enum class EdgeDirection : std::uint8_t { Undirected = 0, Out = 1, In = 2, Both = 3 };

std::string_view to_string(EdgeDirection dir);
std::optional<EdgeDirection> parse_edge_direction(std::string_view text);

struct CodeEdge {
  std::uint32_t from = 0;
  std::uint32_t to = 0;
  EdgeDirection dir = EdgeDirection::Undirected;
  std::optional<EdgeLabel> label;

  friend auto operator<=>(const CodeEdge&, const CodeEdge&) = default;
};

// A connected pattern in canonical (minimum) DFS-code form. Vertices are
// unlabeled; edges carry a direction (Directed mode) or a label (EdgeLabeled).
struct Pattern {
  MiningMode mode = MiningMode::Undirected;
  std::vector<CodeEdge> code;
  std::uint32_t n_vertices = 0;

  // Directed arcs count twice for Both.
  std::size_t num_edges() const;

  friend bool operator==(const Pattern&, const Pattern&) = default;
};

// Orders by (vertex count, code).
bool operator<(const Pattern& a, const Pattern& b);

// Compact single-token form, e.g. "0-1u 1-2u" or "0-1o 1-2b" or "0-1u:positive".
std::string to_string(const Pattern& pattern);
Pattern parse_pattern(std::string_view text, MiningMode mode);

/************ AttrGraph *********************************/

// Mode-specific per-pair attribute: 0 for Undirected, an EdgeDirection mask for
// Directed, an EdgeLabel index for EdgeLabeled.
using EdgeAttr = std::uint8_t;

EdgeAttr reverse_attr(EdgeAttr attr, MiningMode mode);
EdgeAttr attr_of(const CodeEdge& edge, MiningMode mode);
CodeEdge make_code_edge(std::uint32_t from, std::uint32_t to, EdgeAttr attr, MiningMode mode);

// Vertex-pair view of a simple graph used for matching and canonical coding.
// Each unordered pair appears once per endpoint with the attribute seen from
// that endpoint.
class AttrGraph {
 public:
  struct Neighbor {
    VertexIndex v;
    EdgeAttr attr;
  };

  AttrGraph() = default;
  AttrGraph(MiningMode mode, std::size_t n) : mode_(mode), adj_(n) {}

  // Throws InvalidArgument when the graph's directedness does not fit `mode`.
  static AttrGraph from_simple(const SimpleGraph& graph, MiningMode mode);
  static AttrGraph from_pattern(const Pattern& pattern);

  // `attr` is seen from `u`. Directed attributes on an existing pair are merged.
  void add_pair(VertexIndex u, VertexIndex v, EdgeAttr attr);
  // Removes the pair {u, v} if present.
  void remove_pair(VertexIndex u, VertexIndex v);
  void set_attr(VertexIndex u, VertexIndex v, EdgeAttr attr);

  MiningMode mode() const noexcept { return mode_; }
  std::size_t size() const noexcept { return adj_.size(); }
  std::size_t num_pairs() const noexcept { return pairs_; }
  std::size_t degree(VertexIndex v) const { return adj_[v].size(); }
  const std::vector<Neighbor>& neighbors(VertexIndex v) const { return adj_[v]; }
  std::optional<EdgeAttr> attr(VertexIndex u, VertexIndex v) const;

  // Keeps only vertices with `keep[v]`, renumbered in ascending order.
  AttrGraph subgraph(const std::vector<bool>& keep) const;
  bool connected() const;

 private:
  MiningMode mode_ = MiningMode::Undirected;
  std::vector<std::vector<Neighbor>> adj_;  // sorted by neighbour
  std::size_t pairs_ = 0;
};

// Lexicographically minimal DFS code of a connected graph; identical for all
// isomorphic inputs. Throws InvalidArgument for empty or disconnected input.
Pattern min_dfs_code(const AttrGraph& graph);
Pattern min_dfs_code(const SimpleGraph& graph, MiningMode mode);

// True when `code` is the minimum DFS code of the graph it describes.
bool is_canonical(const Pattern& pattern);

}  // namespace stitch
