#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace stitch {

/************ labels ************************************/

enum class SentimentLabel : std::uint8_t { Positive, Neutral, Negative, NoContent, Unlabeled };

// Label carried by an edge of a simple projection. `Mixed` marks collapsed
// edges whose contributing labels disagree.
enum class EdgeLabel : std::uint8_t { Positive, Neutral, Negative, NoContent, Unlabeled, Mixed };

inline constexpr std::size_t kSentimentLabelCount = 5;
inline constexpr std::size_t kEdgeLabelCount = 6;

std::string_view to_string(SentimentLabel label);
std::string_view to_string(EdgeLabel label);

// Case-insensitive. Returns nullopt for strings outside the closed set.
std::optional<SentimentLabel> parse_sentiment_label(std::string_view text);
std::optional<EdgeLabel> parse_edge_label(std::string_view text);

constexpr EdgeLabel to_edge_label(SentimentLabel label) {
  return static_cast<EdgeLabel>(static_cast<std::uint8_t>(label));
}

enum class Category : std::uint8_t { SharedInterest, Entertainment, Political, Uncategorized };

inline constexpr Category kAllCategories[] = {Category::SharedInterest, Category::Entertainment,
                                              Category::Political, Category::Uncategorized};

std::string_view to_string(Category category);
std::optional<Category> parse_category(std::string_view text);

/************ MultiDigraph ******************************/

using VertexIndex = std::uint32_t;

// Directed multigraph over opaque string vertex ids. Self-loops and parallel
// edges are permitted; edge ids are dense and follow insertion order.
class MultiDigraph {
 public:
  struct Edge {
    std::size_t id;
    VertexIndex src;
    VertexIndex dst;
    SentimentLabel label;
    friend bool operator==(const Edge&, const Edge&) = default;
  };

  MultiDigraph() = default;
  explicit MultiDigraph(std::string graph_id) : id_(std::move(graph_id)) {}

  const std::string& id() const noexcept { return id_; }
  void set_id(std::string graph_id) { id_ = std::move(graph_id); }

  std::size_t num_vertices() const noexcept { return names_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  // Returns the index of `name`, inserting it if absent.
  VertexIndex add_vertex(const std::string& name);
  const Edge& add_edge(const std::string& src, const std::string& dst,
                       SentimentLabel label = SentimentLabel::Unlabeled);
  const Edge& add_edge(VertexIndex src, VertexIndex dst,
                       SentimentLabel label = SentimentLabel::Unlabeled);

  std::optional<VertexIndex> find(const std::string& name) const;
  const std::string& name(VertexIndex v) const { return names_[v]; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::vector<std::size_t> out_degrees() const;
  std::vector<std::size_t> in_degrees() const;

  // Subgraph induced by `vertices` (in the given order), keeping edge order.
  MultiDigraph induced(const std::vector<VertexIndex>& vertices) const;

  friend bool operator==(const MultiDigraph& a, const MultiDigraph& b);

 private:
  std::string id_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, VertexIndex> index_;
  std::vector<Edge> edges_;
};

/************ SimpleGraph *******************************/

// Graph without self-loops or parallel edges. Undirected edges are stored with
// `u < v`; directed edges keep their orientation `u -> v`.
struct SimpleGraph {
  struct Edge {
    VertexIndex u;
    VertexIndex v;
    EdgeLabel label;
    friend bool operator==(const Edge&, const Edge&) = default;
  };

  std::string id;
  bool directed = false;
  std::vector<std::string> names;
  std::vector<Edge> edges;  // sorted by (u, v)

  std::size_t num_vertices() const noexcept { return names.size(); }
  std::size_t num_edges() const noexcept { return edges.size(); }

  // Out-neighbours for directed graphs, neighbours for undirected ones.
  std::vector<std::vector<VertexIndex>> adjacency() const;
  // Neighbours ignoring direction.
  std::vector<std::vector<VertexIndex>> undirected_adjacency() const;

  friend bool operator==(const SimpleGraph&, const SimpleGraph&) = default;
};

/************ collections *******************************/

struct CollectionEntry {
  MultiDigraph graph;
  Category category = Category::Uncategorized;
};

// Ordered, category-tagged set of graphs with unique ids.
class GraphCollection {
 public:
  void add(MultiDigraph graph, Category category);

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const std::vector<CollectionEntry>& entries() const noexcept { return entries_; }
  const CollectionEntry& operator[](std::size_t i) const { return entries_[i]; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  const CollectionEntry* find(const std::string& graph_id) const;

 private:
  std::vector<CollectionEntry> entries_;
  std::set<std::string> ids_;
};

struct VertexMetadata {
  std::uint64_t views = 0;
  std::uint64_t followers = 0;
  std::uint64_t total_likes = 0;
  std::set<std::string> hashtags;
};

using VertexMetadataMap = std::map<std::string, VertexMetadata>;

}  // namespace stitch
