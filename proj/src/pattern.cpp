#include "stitch/pattern.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <sstream>

#include "stitch/error.hpp"

namespace stitch {

std::string_view to_string(MiningMode mode) {
  constexpr std::array<std::string_view, 3> kNames = {"undirected", "directed", "edge_labeled"};
  return kNames[static_cast<std::size_t>(mode)];
}

std::optional<MiningMode> parse_mining_mode(std::string_view text) {
  for (const auto mode : {MiningMode::Undirected, MiningMode::Directed, MiningMode::EdgeLabeled}) {
    if (text == to_string(mode)) return mode;
  }
  return std::nullopt;
}

std::string_view to_string(EdgeDirection dir) {
  constexpr std::array<std::string_view, 4> kNames = {"undirected", "out", "in", "both"};
  return kNames[static_cast<std::size_t>(dir)];
}

std::optional<EdgeDirection> parse_edge_direction(std::string_view text) {
  for (const auto dir : {EdgeDirection::Undirected, EdgeDirection::Out, EdgeDirection::In,
                         EdgeDirection::Both}) {
    if (text == to_string(dir)) return dir;
  }
  return std::nullopt;
}

std::size_t Pattern::num_edges() const {
  std::size_t n = 0;
  for (const auto& e : code) n += e.dir == EdgeDirection::Both ? 2 : 1;
  return n;
}

bool operator<(const Pattern& a, const Pattern& b) {
  if (a.n_vertices != b.n_vertices) return a.n_vertices < b.n_vertices;
  return a.code < b.code;
}

/************ string form *******************************/

namespace {

constexpr std::array<char, 4> kDirChars = {'u', 'o', 'i', 'b'};

}  // namespace

std::string to_string(const Pattern& pattern) {
  std::string out;
  for (const auto& e : pattern.code) {
    if (!out.empty()) out += ' ';
    out += std::to_string(e.from) + '-' + std::to_string(e.to);
    out += kDirChars[static_cast<std::size_t>(e.dir)];
    if (e.label) {
      out += ':';
      out += to_string(*e.label);
    }
  }
  return out;
}

Pattern parse_pattern(std::string_view text, MiningMode mode) {
  Pattern pattern;
  pattern.mode = mode;
  auto fail = [&](const std::string& why) {
    throw InvalidArgument("invalid pattern '" + std::string(text) + "': " + why);
  };
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    CodeEdge e;
    const char* p = token.data();
    const char* end = token.data() + token.size();
    auto r = std::from_chars(p, end, e.from);
    if (r.ec != std::errc{} || r.ptr == end || *r.ptr != '-') fail("bad tuple '" + token + "'");
    r = std::from_chars(r.ptr + 1, end, e.to);
    if (r.ec != std::errc{} || r.ptr == end) fail("bad tuple '" + token + "'");
    const auto dir = std::find(kDirChars.begin(), kDirChars.end(), *r.ptr);
    if (dir == kDirChars.end()) fail("bad direction in '" + token + "'");
    e.dir = static_cast<EdgeDirection>(dir - kDirChars.begin());
    p = r.ptr + 1;
    if (p != end) {
      if (*p != ':') fail("bad tuple '" + token + "'");
      const auto label = parse_edge_label(std::string_view(p + 1, end - p - 1));
      if (!label) fail("bad label in '" + token + "'");
      e.label = *label;
    }
    pattern.code.push_back(e);
    pattern.n_vertices = std::max({pattern.n_vertices, e.from + 1, e.to + 1});
  }
  if (pattern.code.empty()) fail("empty code");
  return pattern;
}

/************ attributes ********************************/

EdgeAttr reverse_attr(EdgeAttr attr, MiningMode mode) {
  if (mode != MiningMode::Directed) return attr;
  return static_cast<EdgeAttr>(((attr & 1u) << 1) | ((attr & 2u) >> 1));
}

EdgeAttr attr_of(const CodeEdge& edge, MiningMode mode) {
  switch (mode) {
    case MiningMode::Undirected:
      return 0;
    case MiningMode::Directed:
      return static_cast<EdgeAttr>(edge.dir);
    case MiningMode::EdgeLabeled:
      return static_cast<EdgeAttr>(edge.label.value_or(EdgeLabel::Unlabeled));
  }
  return 0;
}

CodeEdge make_code_edge(std::uint32_t from, std::uint32_t to, EdgeAttr attr, MiningMode mode) {
  CodeEdge e{from, to, EdgeDirection::Undirected, std::nullopt};
  if (mode == MiningMode::Directed) e.dir = static_cast<EdgeDirection>(attr);
  if (mode == MiningMode::EdgeLabeled) e.label = static_cast<EdgeLabel>(attr);
  return e;
}

/************ AttrGraph *********************************/

AttrGraph AttrGraph::from_simple(const SimpleGraph& graph, MiningMode mode) {
  const bool want_directed = mode == MiningMode::Directed;
  if (graph.directed != want_directed) {
    throw InvalidArgument("graph '" + graph.id + "' is " +
                          (graph.directed ? "directed" : "undirected") + " but mode is " +
                          std::string(to_string(mode)));
  }
  AttrGraph out(mode, graph.num_vertices());
  for (const auto& e : graph.edges) {
    EdgeAttr attr = 0;
    if (mode == MiningMode::Directed) attr = static_cast<EdgeAttr>(EdgeDirection::Out);
    if (mode == MiningMode::EdgeLabeled) attr = static_cast<EdgeAttr>(e.label);
    out.add_pair(e.u, e.v, attr);
  }
  return out;
}

AttrGraph AttrGraph::from_pattern(const Pattern& pattern) {
  AttrGraph out(pattern.mode, pattern.n_vertices);
  for (const auto& e : pattern.code) out.add_pair(e.from, e.to, attr_of(e, pattern.mode));
  return out;
}

namespace {

auto find_neighbor(std::vector<AttrGraph::Neighbor>& list, VertexIndex v) {
  return std::lower_bound(list.begin(), list.end(), v,
                          [](const AttrGraph::Neighbor& n, VertexIndex x) { return n.v < x; });
}

}  // namespace

void AttrGraph::add_pair(VertexIndex u, VertexIndex v, EdgeAttr attr) {
  if (u == v || u >= adj_.size() || v >= adj_.size()) {
    throw InvalidArgument("AttrGraph::add_pair: invalid pair");
  }
  auto set = [&](VertexIndex a, VertexIndex b, EdgeAttr value) {
    auto& list = adj_[a];
    auto it = find_neighbor(list, b);
    if (it != list.end() && it->v == b) {
      it->attr = mode_ == MiningMode::Directed ? static_cast<EdgeAttr>(it->attr | value) : value;
      return false;
    }
    list.insert(it, Neighbor{b, value});
    return true;
  };
  if (set(u, v, attr)) ++pairs_;
  set(v, u, reverse_attr(attr, mode_));
}

void AttrGraph::set_attr(VertexIndex u, VertexIndex v, EdgeAttr attr) {
  auto it = find_neighbor(adj_[u], v);
  if (it == adj_[u].end() || it->v != v) throw InvalidArgument("AttrGraph::set_attr: no pair");
  it->attr = attr;
  find_neighbor(adj_[v], u)->attr = reverse_attr(attr, mode_);
}

void AttrGraph::remove_pair(VertexIndex u, VertexIndex v) {
  auto it = find_neighbor(adj_[u], v);
  if (it == adj_[u].end() || it->v != v) return;
  adj_[u].erase(it);
  adj_[v].erase(find_neighbor(adj_[v], u));
  --pairs_;
}

std::optional<EdgeAttr> AttrGraph::attr(VertexIndex u, VertexIndex v) const {
  const auto& list = adj_[u];
  const auto it =
      std::lower_bound(list.begin(), list.end(), v, [](const Neighbor& n, VertexIndex x) {
        return n.v < x;
      });
  if (it == list.end() || it->v != v) return std::nullopt;
  return it->attr;
}

AttrGraph AttrGraph::subgraph(const std::vector<bool>& keep) const {
  std::vector<VertexIndex> remap(adj_.size(), 0);
  std::size_t n = 0;
  for (std::size_t v = 0; v < adj_.size(); ++v) {
    if (keep[v]) remap[v] = static_cast<VertexIndex>(n++);
  }
  AttrGraph out(mode_, n);
  for (VertexIndex u = 0; u < adj_.size(); ++u) {
    if (!keep[u]) continue;
    for (const auto& nb : adj_[u]) {
      if (keep[nb.v] && u < nb.v) out.add_pair(remap[u], remap[nb.v], nb.attr);
    }
  }
  return out;
}

bool AttrGraph::connected() const {
  if (adj_.empty()) return false;
  std::vector<bool> seen(adj_.size(), false);
  std::vector<VertexIndex> stack = {0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const VertexIndex v = stack.back();
    stack.pop_back();
    for (const auto& nb : adj_[v]) {
      if (!seen[nb.v]) {
        seen[nb.v] = true;
        ++count;
        stack.push_back(nb.v);
      }
    }
  }
  return count == adj_.size();
}

/************ minimum DFS code **************************/

namespace {

constexpr int kUnmapped = -1;

// One DFS traversal of the input graph consistent with the code built so far.
struct Traversal {
  std::vector<int> to_graph;    // code index -> graph vertex
  std::vector<int> to_code;     // graph vertex -> code index
  std::vector<bool> used;       // graph pair (u * n + v) already emitted
  std::vector<int> rightmost;   // code indices from root to rightmost vertex
};

struct Extension {
  bool forward = false;
  int from = 0;
  int to = 0;
  EdgeAttr attr = 0;
  int graph_vertex = kUnmapped;  // new vertex for forward extensions
};

// gSpan order among extensions of one code prefix: backward edges precede
// forward ones; backward ordered by target, forward by deepest source.
bool extension_less(const Extension& a, const Extension& b) {
  if (a.forward != b.forward) return !a.forward;
  if (!a.forward) {
    if (a.to != b.to) return a.to < b.to;
  } else {
    if (a.from != b.from) return a.from > b.from;
  }
  return a.attr < b.attr;
}

bool extension_equal(const Extension& a, const Extension& b) {
  return a.forward == b.forward && a.from == b.from && a.to == b.to && a.attr == b.attr;
}

void collect_extensions(const AttrGraph& g, const Traversal& t, int next_index,
                        std::vector<Extension>& out) {
  const std::size_t n = g.size();
  const int rm = t.rightmost.back();
  const auto g_rm = static_cast<VertexIndex>(t.to_graph[rm]);
  for (const auto& nb : g.neighbors(g_rm)) {
    const int j = t.to_code[nb.v];
    if (j != kUnmapped && !t.used[g_rm * n + nb.v]) out.push_back({false, rm, j, nb.attr});
  }
  for (auto it = t.rightmost.rbegin(); it != t.rightmost.rend(); ++it) {
    const auto gi = static_cast<VertexIndex>(t.to_graph[*it]);
    for (const auto& nb : g.neighbors(gi)) {
      if (t.to_code[nb.v] == kUnmapped) {
        out.push_back({true, *it, next_index, nb.attr, static_cast<int>(nb.v)});
      }
    }
  }
}

Traversal apply(const Traversal& t, const Extension& ext, std::size_t n) {
  Traversal next = t;
  const int gu = t.to_graph[ext.from];
  int gv;
  if (ext.forward) {
    gv = ext.graph_vertex;
    next.to_graph.push_back(gv);
    next.to_code[gv] = ext.to;
    // Rightmost path becomes root..from, then the new vertex.
    while (next.rightmost.back() != ext.from) next.rightmost.pop_back();
    next.rightmost.push_back(ext.to);
  } else {
    gv = t.to_graph[ext.to];
  }
  next.used[gu * n + gv] = true;
  next.used[gv * n + gu] = true;
  return next;
}

}  // namespace

Pattern min_dfs_code(const AttrGraph& g) {
  const std::size_t n = g.size();
  if (n == 0) throw InvalidArgument("min_dfs_code: empty graph");
  if (!g.connected()) throw InvalidArgument("min_dfs_code: graph is disconnected");

  Pattern pattern;
  pattern.mode = g.mode();
  pattern.n_vertices = static_cast<std::uint32_t>(n);
  if (g.num_pairs() == 0) return pattern;

  // First edge: minimal attribute over all oriented pairs.
  EdgeAttr best = 0xFF;
  for (VertexIndex u = 0; u < n; ++u) {
    for (const auto& nb : g.neighbors(u)) best = std::min(best, nb.attr);
  }
  std::vector<Traversal> states;
  for (VertexIndex u = 0; u < n; ++u) {
    for (const auto& nb : g.neighbors(u)) {
      if (nb.attr != best) continue;
      Traversal t;
      t.to_graph = {static_cast<int>(u), static_cast<int>(nb.v)};
      t.to_code.assign(n, kUnmapped);
      t.to_code[u] = 0;
      t.to_code[nb.v] = 1;
      t.used.assign(n * n, false);
      t.used[u * n + nb.v] = true;
      t.used[nb.v * n + u] = true;
      t.rightmost = {0, 1};
      states.push_back(std::move(t));
    }
  }
  pattern.code.push_back(make_code_edge(0, 1, best, g.mode()));

  std::vector<Extension> candidates;
  for (std::size_t step = 1; step < g.num_pairs(); ++step) {
    std::optional<Extension> min_ext;
    std::vector<std::pair<std::size_t, Extension>> chosen;
    for (std::size_t s = 0; s < states.size(); ++s) {
      candidates.clear();
      collect_extensions(g, states[s], static_cast<int>(states[s].to_graph.size()), candidates);
      for (const auto& ext : candidates) {
        if (!min_ext || extension_less(ext, *min_ext)) {
          min_ext = ext;
          chosen.clear();
        }
        if (extension_equal(ext, *min_ext)) chosen.emplace_back(s, ext);
      }
    }
    // Connected input always leaves an extension while pairs remain.
    std::vector<Traversal> next;
    next.reserve(chosen.size());
    for (const auto& [s, ext] : chosen) next.push_back(apply(states[s], ext, n));
    states = std::move(next);
    pattern.code.push_back(make_code_edge(static_cast<std::uint32_t>(min_ext->from),
                                          static_cast<std::uint32_t>(min_ext->to),
                                          min_ext->attr, g.mode()));
  }
  return pattern;
}

Pattern min_dfs_code(const SimpleGraph& graph, MiningMode mode) {
  return min_dfs_code(AttrGraph::from_simple(graph, mode));
}

bool is_canonical(const Pattern& pattern) {
  return min_dfs_code(AttrGraph::from_pattern(pattern)).code == pattern.code;
}

}  // namespace stitch
