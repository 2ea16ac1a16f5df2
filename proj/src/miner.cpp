#include "stitch/miner.hpp"

#include <algorithm>
#include <ostream>
#include <set>

#include "stitch/error.hpp"
#include "stitch/generators.hpp"
#include "stitch/parallel.hpp"

namespace stitch {

using nlohmann::json;

std::string_view to_string(MiningScope scope) {
  return scope == MiningScope::FullGraph ? "full_graph" : "largest_component";
}

std::optional<MiningScope> parse_mining_scope(std::string_view text) {
  if (text == "full_graph") return MiningScope::FullGraph;
  if (text == "largest_component") return MiningScope::LargestComponent;
  return std::nullopt;
}

void validate(const MiningConfig& config) {
  if (config.min_support < 1) throw InvalidArgument("mining: min_support must be >= 1");
  if (config.max_vertices < 2) throw InvalidArgument("mining: max_vertices must be >= 2");
}

SimpleGraph scoped_projection(const MultiDigraph& graph, MiningMode mode, MiningScope scope,
                              LabelConflict conflict) {
  auto project = [&](const MultiDigraph& g) {
    return mode == MiningMode::Directed ? project_directed_simple(g, conflict)
                                        : project_undirected_simple(g, conflict);
  };
  if (scope == MiningScope::LargestComponent && graph.num_vertices() > 0) {
    return project(largest_weak_component(graph));
  }
  return project(graph);
}

std::vector<AttrGraph> prepare_graphs(const GraphCollection& collection, MiningMode mode,
                                      MiningScope scope, LabelConflict conflict) {
  std::vector<AttrGraph> out;
  out.reserve(collection.size());
  for (const auto& entry : collection) {
    out.push_back(AttrGraph::from_simple(scoped_projection(entry.graph, mode, scope, conflict),
                                         mode));
  }
  return out;
}

namespace {

std::vector<std::uint32_t> rightmost_path(const Pattern& pattern) {
  std::vector<std::uint32_t> path = {pattern.n_vertices - 1};
  for (auto it = pattern.code.rbegin(); it != pattern.code.rend(); ++it) {
    if (it->from < it->to && it->to == path.back()) path.push_back(it->from);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

class Miner {
 public:
  Miner(const GraphCollection& collection, const MiningConfig& config)
      : collection_(collection),
        config_(config),
        graphs_(prepare_graphs(collection, config.mode, config.scope, config.conflict)) {
    switch (config.mode) {
      case MiningMode::Undirected:
        alphabet_ = {0};
        break;
      case MiningMode::Directed:
        alphabet_ = {1, 2, 3};
        break;
      case MiningMode::EdgeLabeled: {
        std::set<EdgeAttr> seen;
        for (const auto& g : graphs_) {
          for (VertexIndex v = 0; v < g.size(); ++v) {
            for (const auto& nb : g.neighbors(v)) seen.insert(nb.attr);
          }
        }
        alphabet_.assign(seen.begin(), seen.end());
        break;
      }
    }
  }

  std::vector<MinedPattern> run() {
    std::vector<std::size_t> everyone(graphs_.size());
    for (std::size_t i = 0; i < everyone.size(); ++i) everyone[i] = i;
    for (const EdgeAttr attr : alphabet_) {
      if (reverse_attr(attr, config_.mode) < attr) continue;
      Pattern seed{config_.mode, {make_code_edge(0, 1, attr, config_.mode)}, 2};
      auto supporters = support_of(seed, everyone);
      if (supporters.size() >= config_.min_support) grow(seed, supporters, std::nullopt);
    }
    std::sort(results_.begin(), results_.end(),
              [](const MinedPattern& a, const MinedPattern& b) { return a.pattern < b.pattern; });
    return std::move(results_);
  }

 private:
  std::vector<std::size_t> support_of(const Pattern& pattern,
                                      const std::vector<std::size_t>& candidates) const {
    const PatternMatcher matcher(pattern);
    std::vector<char> hit(candidates.size(), 0);
    parallel_for(candidates.size(), config_.threads,
                 [&](std::size_t i) { hit[i] = matcher.contains(graphs_[candidates[i]]); });
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (hit[i]) out.push_back(candidates[i]);
    }
    return out;
  }

  void grow(const Pattern& pattern, const std::vector<std::size_t>& supporters,
            const std::optional<Pattern>& parent) {
    MinedPattern mined{pattern, supporters.size(), {}, parent};
    for (const std::size_t g : supporters) {
      mined.supporting_graph_ids.push_back(collection_[g].graph.id());
    }
    std::sort(mined.supporting_graph_ids.begin(), mined.supporting_graph_ids.end());
    results_.push_back(std::move(mined));

    const auto path = rightmost_path(pattern);
    const std::uint32_t rm = path.back();
    const AttrGraph shape = AttrGraph::from_pattern(pattern);

    std::vector<CodeEdge> extensions;
    for (const std::uint32_t j : path) {
      if (j == rm || shape.attr(rm, j)) continue;
      for (const EdgeAttr attr : alphabet_) {
        extensions.push_back(make_code_edge(rm, j, attr, config_.mode));
      }
    }
    if (pattern.n_vertices < config_.max_vertices) {
      for (auto it = path.rbegin(); it != path.rend(); ++it) {
        for (const EdgeAttr attr : alphabet_) {
          extensions.push_back(make_code_edge(*it, pattern.n_vertices, attr, config_.mode));
        }
      }
    }

    for (const CodeEdge& ext : extensions) {
      Pattern child = pattern;
      child.code.push_back(ext);
      if (ext.to == pattern.n_vertices) ++child.n_vertices;
      if (!is_canonical(child)) continue;
      auto child_supporters = support_of(child, supporters);
      if (child_supporters.size() >= config_.min_support) grow(child, child_supporters, pattern);
    }
  }

  const GraphCollection& collection_;
  const MiningConfig& config_;
  std::vector<AttrGraph> graphs_;
  std::vector<EdgeAttr> alphabet_;
  std::vector<MinedPattern> results_;
};

}  // namespace

std::vector<MinedPattern> mine_frequent(const GraphCollection& collection,
                                        const MiningConfig& config) {
  validate(config);
  if (collection.empty()) return {};
  return Miner(collection, config).run();
}

/************ hierarchy *********************************/

namespace {

// Patterns reachable by deleting one edge (one arc of a bidirectional pair).
std::vector<Pattern> one_edge_deletions(const Pattern& pattern) {
  const AttrGraph g = AttrGraph::from_pattern(pattern);
  const MiningMode mode = pattern.mode;
  std::vector<Pattern> out;
  for (VertexIndex u = 0; u < g.size(); ++u) {
    for (const auto& nb : g.neighbors(u)) {
      if (nb.v < u) continue;
      std::vector<AttrGraph> variants;
      if (mode == MiningMode::Directed && nb.attr == static_cast<EdgeAttr>(EdgeDirection::Both)) {
        for (const auto dir : {EdgeDirection::Out, EdgeDirection::In}) {
          AttrGraph h = g;
          h.set_attr(u, nb.v, static_cast<EdgeAttr>(dir));
          variants.push_back(std::move(h));
        }
      } else {
        AttrGraph h = g;
        h.remove_pair(u, nb.v);
        std::vector<bool> keep(h.size(), true);
        keep[u] = h.degree(u) > 0;
        keep[nb.v] = h.degree(nb.v) > 0;
        variants.push_back(h.subgraph(keep));
      }
      for (const auto& h : variants) {
        if (h.num_pairs() == 0 || !h.connected()) continue;
        out.push_back(min_dfs_code(h));
      }
    }
  }
  return out;
}

}  // namespace

std::vector<HierarchyLink> build_hierarchy(const std::vector<MinedPattern>& patterns) {
  std::map<std::vector<CodeEdge>, std::size_t> index;
  for (std::size_t i = 0; i < patterns.size(); ++i) index.emplace(patterns[i].pattern.code, i);

  std::set<HierarchyLink> links;
  for (std::size_t c = 0; c < patterns.size(); ++c) {
    for (const Pattern& parent : one_edge_deletions(patterns[c].pattern)) {
      const auto it = index.find(parent.code);
      if (it != index.end()) links.insert({it->second, c});
    }
  }
  return {links.begin(), links.end()};
}

/************ cycles ************************************/

Pattern cycle_pattern(std::size_t length) {
  return min_dfs_code(project_undirected_simple(gen_cycle(length)), MiningMode::Undirected);
}

std::map<std::size_t, std::size_t> cycle_supports(const GraphCollection& collection,
                                                  std::size_t max_len, MiningScope scope,
                                                  std::size_t threads) {
  if (max_len < 3) throw InvalidArgument("cycle_supports: max_len must be >= 3");
  const auto graphs = prepare_graphs(collection, MiningMode::Undirected, scope);
  std::map<std::size_t, std::size_t> supports;
  for (std::size_t k = 3; k <= max_len; ++k) {
    const PatternMatcher matcher(cycle_pattern(k));
    std::vector<char> hit(graphs.size(), 0);
    parallel_for(graphs.size(), threads, [&](std::size_t i) { hit[i] = matcher.contains(graphs[i]); });
    supports[k] = static_cast<std::size_t>(std::count(hit.begin(), hit.end(), 1));
  }
  return supports;
}

/************ serialization *****************************/

json pattern_code_json(const Pattern& pattern) {
  json code = json::array();
  for (const auto& e : pattern.code) {
    json label = e.label ? json(std::string(to_string(*e.label))) : json(nullptr);
    code.push_back(json::array({e.from, e.to, std::string(to_string(e.dir)), label}));
  }
  return code;
}

Pattern pattern_from_code_json(const json& code, MiningMode mode) {
  if (!code.is_array() || code.empty()) throw DataError("pattern code must be a non-empty array");
  Pattern pattern;
  pattern.mode = mode;
  for (const auto& tuple : code) {
    if (!tuple.is_array() || tuple.size() != 4 || !tuple[0].is_number_unsigned() ||
        !tuple[1].is_number_unsigned() || !tuple[2].is_string()) {
      throw DataError("pattern tuple must be [i, j, dir, label]");
    }
    CodeEdge e;
    e.from = tuple[0].get<std::uint32_t>();
    e.to = tuple[1].get<std::uint32_t>();
    const auto dir = parse_edge_direction(tuple[2].get<std::string>());
    if (!dir) throw DataError("unknown direction '" + tuple[2].get<std::string>() + "'");
    e.dir = *dir;
    if (!tuple[3].is_null()) {
      const auto label = tuple[3].is_string() ? parse_edge_label(tuple[3].get<std::string>())
                                              : std::nullopt;
      if (!label) throw DataError("unknown edge label " + tuple[3].dump());
      e.label = *label;
    }
    pattern.code.push_back(e);
    pattern.n_vertices = std::max({pattern.n_vertices, e.from + 1, e.to + 1});
  }
  return pattern;
}

json patterns_to_json(const std::vector<MinedPattern>& patterns, const MiningConfig& config) {
  json list = json::array();
  for (const auto& p : patterns) {
    list.push_back({{"code", pattern_code_json(p.pattern)},
                    {"n_vertices", p.pattern.n_vertices},
                    {"support", p.support},
                    {"supporting_graphs", p.supporting_graph_ids},
                    {"parent_code", p.parent ? pattern_code_json(*p.parent) : json(nullptr)}});
  }
  return {{"mode", std::string(to_string(config.mode))},
          {"scope", std::string(to_string(config.scope))},
          {"min_support", config.min_support},
          {"max_vertices", config.max_vertices},
          {"patterns", std::move(list)}};
}

std::vector<MinedPattern> patterns_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("mode") || !doc.contains("patterns") ||
      !doc["patterns"].is_array()) {
    throw DataError("patterns document needs 'mode' and 'patterns'");
  }
  const auto mode = parse_mining_mode(doc["mode"].get<std::string>());
  if (!mode) throw DataError("unknown mining mode " + doc["mode"].dump());
  std::vector<MinedPattern> out;
  for (const auto& item : doc["patterns"]) {
    MinedPattern p;
    p.pattern = pattern_from_code_json(item.at("code"), *mode);
    p.support = item.at("support").get<std::size_t>();
    p.supporting_graph_ids = item.at("supporting_graphs").get<std::vector<std::string>>();
    if (item.contains("parent_code") && !item["parent_code"].is_null()) {
      p.parent = pattern_from_code_json(item["parent_code"], *mode);
    }
    out.push_back(std::move(p));
  }
  return out;
}

void write_hierarchy_dot(std::ostream& out, const std::vector<MinedPattern>& patterns,
                         const std::vector<HierarchyLink>& links) {
  out << "digraph hierarchy {\n"
      << "  rankdir=TB;\n"
      << "  node [shape=box, fontname=\"Helvetica\"];\n";
  std::map<std::uint32_t, std::vector<std::size_t>> by_size;
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    const auto& p = patterns[i];
    by_size[p.pattern.n_vertices].push_back(i);
    out << "  p" << i << " [label=\"" << to_string(p.pattern) << "\\n|V|=" << p.pattern.n_vertices
        << " support=" << p.support << "\"];\n";
  }
  for (const auto& [size, members] : by_size) {
    out << "  { rank=same;";
    for (const std::size_t i : members) out << " p" << i << ';';
    out << " }\n";
  }
  for (const auto& link : links) out << "  p" << link.parent << " -> p" << link.child << ";\n";
  out << "}\n";
}

}  // namespace stitch
