#include "stitch/graph.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "stitch/error.hpp"

namespace stitch {

namespace {

constexpr std::array<std::string_view, kEdgeLabelCount> kLabelNames = {
    "positive", "neutral", "negative", "no_content", "unlabeled", "mixed"};

constexpr std::array<std::string_view, 4> kCategoryNames = {"shared_interest", "entertainment",
                                                            "political", "uncategorized"};

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::string_view to_string(SentimentLabel label) {
  return kLabelNames[static_cast<std::size_t>(label)];
}

std::string_view to_string(EdgeLabel label) { return kLabelNames[static_cast<std::size_t>(label)]; }

std::optional<EdgeLabel> parse_edge_label(std::string_view text) {
  const std::string key = lower(text);
  for (std::size_t i = 0; i < kLabelNames.size(); ++i) {
    if (key == kLabelNames[i]) return static_cast<EdgeLabel>(i);
  }
  return std::nullopt;
}

std::optional<SentimentLabel> parse_sentiment_label(std::string_view text) {
  const auto label = parse_edge_label(text);
  if (!label || *label == EdgeLabel::Mixed) return std::nullopt;
  return static_cast<SentimentLabel>(static_cast<std::uint8_t>(*label));
}

std::string_view to_string(Category category) {
  return kCategoryNames[static_cast<std::size_t>(category)];
}

std::optional<Category> parse_category(std::string_view text) {
  for (std::size_t i = 0; i < kCategoryNames.size(); ++i) {
    if (text == kCategoryNames[i]) return static_cast<Category>(i);
  }
  return std::nullopt;
}

/************ MultiDigraph ******************************/

VertexIndex MultiDigraph::add_vertex(const std::string& name) {
  auto [it, inserted] = index_.try_emplace(name, static_cast<VertexIndex>(names_.size()));
  if (inserted) names_.push_back(name);
  return it->second;
}

const MultiDigraph::Edge& MultiDigraph::add_edge(const std::string& src, const std::string& dst,
                                                 SentimentLabel label) {
  const VertexIndex s = add_vertex(src);
  const VertexIndex d = add_vertex(dst);
  return add_edge(s, d, label);
}

const MultiDigraph::Edge& MultiDigraph::add_edge(VertexIndex src, VertexIndex dst,
                                                 SentimentLabel label) {
  if (src >= names_.size() || dst >= names_.size()) {
    throw InvalidArgument("edge endpoint out of range in graph '" + id_ + "'");
  }
  edges_.push_back(Edge{edges_.size(), src, dst, label});
  return edges_.back();
}

std::optional<VertexIndex> MultiDigraph::find(const std::string& name) const {
  const auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> MultiDigraph::out_degrees() const {
  std::vector<std::size_t> deg(names_.size(), 0);
  for (const Edge& e : edges_) ++deg[e.src];
  return deg;
}

std::vector<std::size_t> MultiDigraph::in_degrees() const {
  std::vector<std::size_t> deg(names_.size(), 0);
  for (const Edge& e : edges_) ++deg[e.dst];
  return deg;
}

MultiDigraph MultiDigraph::induced(const std::vector<VertexIndex>& vertices) const {
  MultiDigraph out(id_);
  constexpr VertexIndex kAbsent = ~VertexIndex{0};
  std::vector<VertexIndex> remap(names_.size(), kAbsent);
  for (const VertexIndex v : vertices) remap[v] = out.add_vertex(names_[v]);
  for (const Edge& e : edges_) {
    if (remap[e.src] != kAbsent && remap[e.dst] != kAbsent) {
      out.add_edge(remap[e.src], remap[e.dst], e.label);
    }
  }
  return out;
}

bool operator==(const MultiDigraph& a, const MultiDigraph& b) {
  return a.id_ == b.id_ && a.names_ == b.names_ && a.edges_ == b.edges_;
}

/************ SimpleGraph *******************************/

std::vector<std::vector<VertexIndex>> SimpleGraph::adjacency() const {
  std::vector<std::vector<VertexIndex>> adj(names.size());
  for (const Edge& e : edges) {
    adj[e.u].push_back(e.v);
    if (!directed) adj[e.v].push_back(e.u);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

std::vector<std::vector<VertexIndex>> SimpleGraph::undirected_adjacency() const {
  std::vector<std::vector<VertexIndex>> adj(names.size());
  for (const Edge& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return adj;
}

/************ GraphCollection ***************************/

void GraphCollection::add(MultiDigraph graph, Category category) {
  if (!ids_.insert(graph.id()).second) {
    throw DataError("duplicate graph id '" + graph.id() + "' in collection");
  }
  entries_.push_back(CollectionEntry{std::move(graph), category});
}

const CollectionEntry* GraphCollection::find(const std::string& graph_id) const {
  for (const auto& entry : entries_) {
    if (entry.graph.id() == graph_id) return &entry;
  }
  return nullptr;
}

}  // namespace stitch
