#include "stitch/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <queue>

#include "stitch/error.hpp"
#include "stitch/parallel.hpp"
#include "stitch/projection.hpp"

namespace stitch {

using nlohmann::json;

double reciprocity(const SimpleGraph& graph) {
  if (graph.edges.empty()) return 0.0;
  std::size_t mutual = 0;
  for (const auto& e : graph.edges) {
    const auto it = std::lower_bound(graph.edges.begin(), graph.edges.end(), e.v,
                                     [](const SimpleGraph::Edge& x, VertexIndex u) { return x.u < u; });
    for (auto j = it; j != graph.edges.end() && j->u == e.v; ++j) {
      if (j->v == e.u) {
        ++mutual;
        break;
      }
    }
  }
  return static_cast<double>(mutual) / static_cast<double>(graph.edges.size());
}

double avg_local_clustering(const SimpleGraph& graph) {
  const std::size_t n = graph.num_vertices();
  if (n == 0) return 0.0;
  auto adj = graph.undirected_adjacency();
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  double total = 0.0;
  for (VertexIndex v = 0; v < n; ++v) {
    const auto& nb = adj[v];
    const std::size_t k = nb.size();
    if (k < 2) continue;
    std::size_t links = 0;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        links += std::binary_search(adj[nb[i]].begin(), adj[nb[i]].end(), nb[j]);
      }
    }
    total += static_cast<double>(links) / (static_cast<double>(k) * (k - 1) / 2.0);
  }
  return total / static_cast<double>(n);
}

std::optional<double> degree_centralization(const SimpleGraph& graph) {
  const std::size_t n = graph.num_vertices();
  if (n <= 2) return std::nullopt;
  auto adj = graph.undirected_adjacency();
  std::vector<std::size_t> degree(n);
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(adj[v].begin(), adj[v].end());
    degree[v] = std::unique(adj[v].begin(), adj[v].end()) - adj[v].begin();
  }
  const std::size_t dmax = *std::max_element(degree.begin(), degree.end());
  std::size_t sum = 0;
  for (const auto d : degree) sum += dmax - d;
  return static_cast<double>(sum) / (static_cast<double>(n - 1) * static_cast<double>(n - 2));
}

namespace {

struct Bfs {
  std::size_t max_dist = 0;
  std::size_t dist_sum = 0;
  std::size_t pairs = 0;
};

// All-pairs BFS over `adj`, skipping the source itself.
Bfs all_pairs(const std::vector<std::vector<VertexIndex>>& adj) {
  const std::size_t n = adj.size();
  Bfs out;
  std::vector<std::size_t> dist(n);
  std::vector<VertexIndex> queue;
  queue.reserve(n);
  constexpr std::size_t kUnseen = static_cast<std::size_t>(-1);
  for (VertexIndex s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), kUnseen);
    queue.clear();
    dist[s] = 0;
    queue.push_back(s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const VertexIndex u = queue[head];
      for (const VertexIndex w : adj[u]) {
        if (dist[w] != kUnseen) continue;
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
    for (VertexIndex t = 0; t < n; ++t) {
      if (t == s || dist[t] == kUnseen) continue;
      out.max_dist = std::max(out.max_dist, dist[t]);
      out.dist_sum += dist[t];
      ++out.pairs;
    }
  }
  return out;
}

double mean_distance(const Bfs& b) {
  return b.pairs == 0 ? 0.0 : static_cast<double>(b.dist_sum) / static_cast<double>(b.pairs);
}

}  // namespace

PathStats path_stats(const MultiDigraph& graph, DiameterScope diameter_scope) {
  PathStats out;
  if (graph.num_vertices() == 0) return out;
  const MultiDigraph lcc = largest_weak_component(graph);
  const SimpleGraph lcc_directed = project_directed_simple(lcc);
  const SimpleGraph lcc_undirected = project_undirected_simple(lcc);
  const Bfs lcc_d = all_pairs(lcc_directed.adjacency());
  const Bfs lcc_u = all_pairs(lcc_undirected.adjacency());
  out.avg_path_directed = mean_distance(lcc_d);
  out.avg_path_undirected = mean_distance(lcc_u);
  if (diameter_scope == DiameterScope::LargestComponent) {
    out.directed_diameter = lcc_d.max_dist;
    out.undirected_diameter = lcc_u.max_dist;
  } else {
    out.directed_diameter = all_pairs(project_directed_simple(graph).adjacency()).max_dist;
    out.undirected_diameter = all_pairs(project_undirected_simple(graph).adjacency()).max_dist;
  }
  return out;
}

MetricsRow compute_row(const MultiDigraph& graph, DiameterScope diameter_scope) {
  MetricsRow row;
  row.graph_id = graph.id();
  row.n_vertices = graph.num_vertices();
  row.n_edges = graph.num_edges();
  if (graph.num_vertices() == 0) return row;
  row.n_components = weak_components(graph).size();
  const PathStats paths = path_stats(graph, diameter_scope);
  row.directed_diameter = paths.directed_diameter;
  row.undirected_diameter = paths.undirected_diameter;
  row.avg_path_directed = paths.avg_path_directed;
  row.avg_path_undirected = paths.avg_path_undirected;
  const MultiDigraph lcc = largest_weak_component(graph);
  row.lcc_size = lcc.num_vertices();
  const SimpleGraph und = project_undirected_simple(lcc);
  row.lcc_clustering = avg_local_clustering(und);
  row.lcc_reciprocity = reciprocity(project_directed_simple(lcc));
  row.lcc_degree_centralization = degree_centralization(und);
  return row;
}

MetricsReport compute_report(const GraphCollection& collection, std::size_t threads,
                             DiameterScope diameter_scope) {
  if (collection.empty()) throw InvalidArgument("metrics: empty collection");
  MetricsReport report;
  report.rows.resize(collection.size());
  parallel_for(collection.size(), threads, [&](std::size_t i) {
    report.rows[i] = compute_row(collection[i].graph, diameter_scope);
  });

  for (const Category category : kAllCategories) {
    AggregateRow agg;
    agg.category = category;
    double central_sum = 0.0;
    std::size_t central_count = 0;
    for (std::size_t i = 0; i < collection.size(); ++i) {
      if (collection[i].category != category) continue;
      const MetricsRow& r = report.rows[i];
      ++agg.members;
      agg.n_vertices += r.n_vertices;
      agg.n_edges += r.n_edges;
      agg.n_components += r.n_components;
      agg.directed_diameter += r.directed_diameter;
      agg.undirected_diameter += r.undirected_diameter;
      agg.avg_path_directed += r.avg_path_directed;
      agg.avg_path_undirected += r.avg_path_undirected;
      agg.lcc_size += r.lcc_size;
      agg.lcc_clustering += r.lcc_clustering;
      agg.lcc_reciprocity += r.lcc_reciprocity;
      if (r.lcc_degree_centralization) {
        central_sum += *r.lcc_degree_centralization;
        ++central_count;
      }
    }
    if (agg.members == 0) continue;
    const double m = static_cast<double>(agg.members);
    for (double* field : {&agg.n_vertices, &agg.n_edges, &agg.n_components,
                          &agg.directed_diameter, &agg.undirected_diameter,
                          &agg.avg_path_directed, &agg.avg_path_undirected, &agg.lcc_size,
                          &agg.lcc_clustering, &agg.lcc_reciprocity}) {
      *field /= m;
    }
    if (central_count > 0) agg.lcc_degree_centralization = central_sum / central_count;
    report.aggregates.push_back(agg);
  }

  std::stable_sort(report.rows.begin(), report.rows.end(),
                   [](const MetricsRow& a, const MetricsRow& b) {
                     if (a.n_vertices != b.n_vertices) return a.n_vertices > b.n_vertices;
                     return a.graph_id < b.graph_id;
                   });
  return report;
}

namespace {

std::string fixed(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

std::string fixed(const std::optional<double>& x) { return x ? fixed(*x) : "-"; }

json optional_json(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

}  // namespace

void write_report_csv(std::ostream& out, const MetricsReport& report) {
  out << "kind,id,members,n_vertices,n_edges,n_components,diameter_directed,"
         "diameter_undirected,avg_path_directed,avg_path_undirected,lcc_size,lcc_clustering,"
         "lcc_reciprocity,lcc_degree_centralization\n";
  for (const auto& r : report.rows) {
    out << "graph," << r.graph_id << ",1," << r.n_vertices << ',' << r.n_edges << ','
        << r.n_components << ',' << r.directed_diameter << ',' << r.undirected_diameter << ','
        << fixed(r.avg_path_directed) << ',' << fixed(r.avg_path_undirected) << ',' << r.lcc_size
        << ',' << fixed(r.lcc_clustering) << ',' << fixed(r.lcc_reciprocity) << ','
        << fixed(r.lcc_degree_centralization) << '\n';
  }
  for (const auto& a : report.aggregates) {
    out << "category," << to_string(a.category) << ',' << a.members << ','
        << fixed(a.n_vertices) << ',' << fixed(a.n_edges) << ',' << fixed(a.n_components) << ','
        << fixed(a.directed_diameter) << ',' << fixed(a.undirected_diameter) << ','
        << fixed(a.avg_path_directed) << ',' << fixed(a.avg_path_undirected) << ','
        << fixed(a.lcc_size) << ',' << fixed(a.lcc_clustering) << ','
        << fixed(a.lcc_reciprocity) << ',' << fixed(a.lcc_degree_centralization) << '\n';
  }
}

json report_to_json(const MetricsReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"id", r.graph_id},
                    {"n_vertices", r.n_vertices},
                    {"n_edges", r.n_edges},
                    {"n_components", r.n_components},
                    {"diameter_directed", r.directed_diameter},
                    {"diameter_undirected", r.undirected_diameter},
                    {"avg_path_directed", r.avg_path_directed},
                    {"avg_path_undirected", r.avg_path_undirected},
                    {"lcc_size", r.lcc_size},
                    {"lcc_clustering", r.lcc_clustering},
                    {"lcc_reciprocity", r.lcc_reciprocity},
                    {"lcc_degree_centralization", optional_json(r.lcc_degree_centralization)}});
  }
  json aggs = json::array();
  for (const auto& a : report.aggregates) {
    aggs.push_back({{"category", to_string(a.category)},
                    {"members", a.members},
                    {"n_vertices", a.n_vertices},
                    {"n_edges", a.n_edges},
                    {"n_components", a.n_components},
                    {"diameter_directed", a.directed_diameter},
                    {"diameter_undirected", a.undirected_diameter},
                    {"avg_path_directed", a.avg_path_directed},
                    {"avg_path_undirected", a.avg_path_undirected},
                    {"lcc_size", a.lcc_size},
                    {"lcc_clustering", a.lcc_clustering},
                    {"lcc_reciprocity", a.lcc_reciprocity},
                    {"lcc_degree_centralization", optional_json(a.lcc_degree_centralization)}});
  }
  return {{"graphs", rows}, {"categories", aggs}};
}

MetadataRatios metadata_ratios(const MultiDigraph& graph, const VertexMetadataMap& meta,
                               const std::string& collection_hashtag) {
  MetadataRatios out;
  double stitcher[3] = {0, 0, 0};
  double stitchee[3] = {0, 0, 0};
  std::size_t same = 0;
  for (const auto& e : graph.edges()) {
    const auto a = meta.find(graph.name(e.src));
    const auto b = meta.find(graph.name(e.dst));
    if (a == meta.end() || b == meta.end()) continue;
    ++out.covered_edges;
    const VertexMetadata& s = a->second;
    const VertexMetadata& t = b->second;
    stitcher[0] += static_cast<double>(s.views);
    stitcher[1] += static_cast<double>(s.followers);
    stitcher[2] += static_cast<double>(s.total_likes);
    stitchee[0] += static_cast<double>(t.views);
    stitchee[1] += static_cast<double>(t.followers);
    stitchee[2] += static_cast<double>(t.total_likes);
    if (collection_hashtag.empty()) {
      same += std::any_of(s.hashtags.begin(), s.hashtags.end(),
                          [&](const std::string& h) { return t.hashtags.count(h) > 0; });
    } else {
      same += s.hashtags.count(collection_hashtag) > 0 && t.hashtags.count(collection_hashtag) > 0;
    }
  }
  if (out.covered_edges == 0) {
    throw DataError("metadata_ratios: no edge of graph '" + graph.id() +
                    "' has metadata on both endpoints");
  }
  const double n = static_cast<double>(out.covered_edges);
  auto ratio = [&](int k) -> std::optional<double> {
    if (stitcher[k] == 0.0) return std::nullopt;
    return (stitchee[k] / n) / (stitcher[k] / n);
  };
  out.view_ratio = ratio(0);
  out.follower_ratio = ratio(1);
  out.likes_ratio = ratio(2);
  out.same_hashtag_fraction = static_cast<double>(same) / n;
  return out;
}

}  // namespace stitch
