#include "stitch/cluster.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <unordered_map>

#include "stitch/error.hpp"
#include "stitch/io.hpp"

namespace stitch {

using nlohmann::json;

void validate(const Labeling& labeling) {
  if (labeling.ids.size() != labeling.labels.size()) {
    throw InvalidArgument("labeling: ids and labels differ in length");
  }
  std::set<std::string> seen;
  for (const auto& id : labeling.ids) {
    if (!seen.insert(id).second) throw InvalidArgument("labeling: duplicate id '" + id + "'");
  }
}

Labeling category_labeling(const GraphCollection& collection) {
  Labeling out;
  for (const auto& entry : collection) {
    out.ids.push_back(entry.graph.id());
    out.labels.push_back(static_cast<int>(entry.category));
  }
  return out;
}

namespace {

// Renames clusters by first appearance; each noise point gets its own id.
std::vector<std::size_t> canonical_partition(const std::vector<int>& labels) {
  std::unordered_map<int, std::size_t> names;
  std::vector<std::size_t> out;
  out.reserve(labels.size());
  std::size_t next = 0;
  for (const int l : labels) {
    if (l == kNoise) {
      out.push_back(next++);
      continue;
    }
    const auto [it, inserted] = names.emplace(l, next);
    if (inserted) ++next;
    out.push_back(it->second);
  }
  return out;
}

double entropy(const std::map<std::size_t, std::size_t>& counts, double n) {
  double h = 0;
  for (const auto& [_, c] : counts) {
    const double p = static_cast<double>(c) / n;
    h -= p * std::log(p);
  }
  return h;
}

}  // namespace

double nmi(const Labeling& a, const Labeling& b) {
  validate(a);
  validate(b);
  if (a.size() != b.size()) throw InvalidArgument("nmi: labelings cover different graphs");
  std::unordered_map<std::string, int> b_label;
  for (std::size_t i = 0; i < b.size(); ++i) b_label.emplace(b.ids[i], b.labels[i]);
  std::vector<int> aligned;
  aligned.reserve(a.size());
  for (const auto& id : a.ids) {
    const auto it = b_label.find(id);
    if (it == b_label.end()) throw InvalidArgument("nmi: id '" + id + "' missing from second labeling");
    aligned.push_back(it->second);
  }
  if (a.size() == 0) return 1.0;

  const auto pa = canonical_partition(a.labels);
  const auto pb = canonical_partition(aligned);
  if (pa == pb) return 1.0;

  const double n = static_cast<double>(pa.size());
  std::map<std::size_t, std::size_t> ca;
  std::map<std::size_t, std::size_t> cb;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> joint;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    ++ca[pa[i]];
    ++cb[pb[i]];
    ++joint[{pa[i], pb[i]}];
  }
  if (ca.size() == 1 || cb.size() == 1) return 0.0;
  const double ha = entropy(ca, n);
  const double hb = entropy(cb, n);
  double mi = 0;
  for (const auto& [key, c] : joint) {
    const double nij = static_cast<double>(c);
    const double ai = static_cast<double>(ca[key.first]);
    const double bj = static_cast<double>(cb[key.second]);
    mi += nij / n * std::log(n * nij / (ai * bj));
  }
  return std::clamp(mi / ((ha + hb) / 2.0), 0.0, 1.0);
}

std::vector<int> density_cluster(const Eigen::MatrixXd& points, double eps, std::size_t min_pts) {
  if (!(eps > 0)) throw InvalidArgument("density_cluster: eps must be positive");
  if (min_pts == 0) throw InvalidArgument("density_cluster: min_pts must be >= 1");
  const auto n = static_cast<std::size_t>(points.rows());
  const double eps2 = eps * eps;

  std::vector<std::vector<std::size_t>> near(n);
  Eigen::MatrixXd dist2(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      dist2(i, j) = (points.row(i) - points.row(j)).squaredNorm();
      if (dist2(i, j) <= eps2) near[i].push_back(j);
    }
  }
  std::vector<bool> core(n);
  for (std::size_t i = 0; i < n; ++i) core[i] = near[i].size() >= min_pts;

  // Connected components of the core graph.
  std::vector<std::size_t> component(n, n);
  for (std::size_t s = 0; s < n; ++s) {
    if (!core[s] || component[s] != n) continue;
    std::vector<std::size_t> stack = {s};
    component[s] = s;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (const std::size_t w : near[u]) {
        if (core[w] && component[w] == n) {
          component[w] = s;
          stack.push_back(w);
        }
      }
    }
  }

  auto coords_less = [&](std::size_t a, std::size_t b) {
    for (Eigen::Index c = 0; c < points.cols(); ++c) {
      if (points(a, c) != points(b, c)) return points(a, c) < points(b, c);
    }
    return false;
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (core[i]) continue;
    std::size_t best = n;
    for (const std::size_t j : near[i]) {
      if (!core[j]) continue;
      if (best == n || dist2(i, j) < dist2(i, best) ||
          (dist2(i, j) == dist2(i, best) && coords_less(j, best))) {
        best = j;
      }
    }
    if (best != n) component[i] = component[best];
  }

  std::vector<int> labels(n, kNoise);
  std::unordered_map<std::size_t, int> names;
  for (std::size_t i = 0; i < n; ++i) {
    if (component[i] == n) continue;
    const auto [it, _] = names.emplace(component[i], static_cast<int>(names.size()));
    labels[i] = it->second;
  }
  return labels;
}

Labeling density_cluster(const LabeledMatrix& m, double eps, std::size_t min_pts) {
  Labeling out;
  out.ids = m.row_ids;
  out.labels = density_cluster(m.values, eps, min_pts);
  return out;
}

void validate(const ClusterPipeline& pipeline) {
  if (!(pipeline.eps > 0) || !std::isfinite(pipeline.eps)) throw InvalidArgument("cluster: eps must be positive");
  if (pipeline.min_pts == 0) throw InvalidArgument("cluster: min_pts must be positive");
  if (pipeline.pca && *pipeline.pca <= 0) throw InvalidArgument("cluster: pca components must be positive");
}

json to_json(const ClusterPipeline& pipeline) {
  json j;
  j["log1p"] = pipeline.log1p;
  j["pca"] = pipeline.pca ? json(*pipeline.pca) : json(nullptr);
  j["unit_scale"] = pipeline.unit_scale;
  j["eps"] = pipeline.eps;
  j["min_pts"] = pipeline.min_pts;
  return j;
}

Eigen::MatrixXd prepare_points(const Eigen::MatrixXd& values, const ClusterPipeline& pipeline) {
  validate(pipeline);
  Eigen::MatrixXd x = values;
  if (pipeline.log1p) {
    if (x.size() > 0 && x.minCoeff() < 0) throw DataError("cluster: log1p needs non-negative values");
    x = x.array().log1p().matrix();
  }
  if (pipeline.pca) x = pca_project(x, *pipeline.pca);
  if (pipeline.unit_scale && x.rows() > 1) {
    double spread = 0;
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
      const double mean = x.col(c).mean();
      const double var = (x.col(c).array() - mean).square().sum() / static_cast<double>(x.rows() - 1);
      spread = std::max(spread, std::sqrt(var));
    }
    if (spread > 0) x /= spread;
  }
  return x;
}

Labeling cluster_matrix(const LabeledMatrix& m, const ClusterPipeline& pipeline) {
  Labeling out;
  out.ids = m.row_ids;
  out.labels = density_cluster(prepare_points(m.values, pipeline), pipeline.eps, pipeline.min_pts);
  return out;
}

namespace {

std::vector<double> average_ranks(const std::vector<double>& x) {
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> rank(x.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && x[idx[j + 1]] == x[idx[i]]) ++j;
    const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) rank[idx[k]] = r;
    i = j + 1;
  }
  return rank;
}

std::optional<double> spearman(const std::vector<double>& x, const std::vector<double>& y) {
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0 || syy == 0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

ClusterProfile build_profile(const Labeling& labeling, const GraphCollection& collection,
                             const LabeledMatrix* vectors) {
  validate(labeling);
  if (labeling.size() != collection.size()) {
    throw InvalidArgument("size_profile: labeling does not cover the collection");
  }
  std::unordered_map<std::string, std::size_t> row_of;
  if (vectors) {
    for (std::size_t r = 0; r < vectors->row_ids.size(); ++r) row_of.emplace(vectors->row_ids[r], r);
  }
  std::map<int, ClusterSummary> by_label;
  std::vector<int> member_label(labeling.size());
  std::vector<double> sizes(labeling.size());
  for (std::size_t i = 0; i < labeling.size(); ++i) {
    const CollectionEntry* entry = collection.find(labeling.ids[i]);
    if (!entry) {
      throw InvalidArgument("size_profile: graph '" + labeling.ids[i] + "' not in collection");
    }
    sizes[i] = static_cast<double>(entry->graph.num_vertices());
    member_label[i] = labeling.labels[i];
    ClusterSummary& s = by_label[labeling.labels[i]];
    s.label = labeling.labels[i];
    ++s.members;
    s.mean_size += sizes[i];
    if (vectors) {
      const auto it = row_of.find(labeling.ids[i]);
      if (it == row_of.end()) {
        throw InvalidArgument("size_profile: no vector for graph '" + labeling.ids[i] + "'");
      }
      const Eigen::VectorXd v = vectors->values.row(static_cast<Eigen::Index>(it->second)).transpose();
      if (s.mean_vector.size() == 0) s.mean_vector = Eigen::VectorXd::Zero(v.size());
      s.mean_vector += v;
    }
  }
  ClusterProfile profile;
  std::map<int, double> mean_size;
  for (auto& [label, s] : by_label) {
    s.mean_size /= static_cast<double>(s.members);
    if (s.mean_vector.size() > 0) s.mean_vector /= static_cast<double>(s.members);
    mean_size[label] = s.mean_size;
    profile.clusters.push_back(s);
  }

  std::vector<std::pair<double, int>> order;
  for (const auto& [label, m] : mean_size) {
    if (label != kNoise) order.emplace_back(m, label);
  }
  if (order.size() >= 2) {
    std::sort(order.begin(), order.end());
    std::map<int, double> rank;
    for (std::size_t r = 0; r < order.size(); ++r) rank[order[r].second] = static_cast<double>(r);
    std::vector<double> x;
    std::vector<double> y;
    for (std::size_t i = 0; i < member_label.size(); ++i) {
      if (member_label[i] == kNoise) continue;
      x.push_back(rank[member_label[i]]);
      y.push_back(sizes[i]);
    }
    profile.size_rank_correlation = spearman(x, y);
  }
  return profile;
}

}  // namespace

ClusterProfile size_profile(const Labeling& labeling, const GraphCollection& collection) {
  return build_profile(labeling, collection, nullptr);
}

ClusterProfile size_profile(const Labeling& labeling, const GraphCollection& collection,
                            const LabeledMatrix& vectors) {
  return build_profile(labeling, collection, &vectors);
}

void write_labeling_csv(std::ostream& out, const Labeling& labeling) {
  out << "graph_id,label\n";
  for (std::size_t i = 0; i < labeling.size(); ++i) {
    out << labeling.ids[i] << ',' << labeling.labels[i] << '\n';
  }
}

Labeling read_labeling_csv(std::istream& in, const std::string& source) {
  Labeling out;
  std::string line;
  std::size_t line_no = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (header) {
      header = false;
      if (fields.size() != 2 || fields[0] != "graph_id" || fields[1] != "label") {
        throw ParseError(source, line_no, "expected header graph_id,label");
      }
      continue;
    }
    if (fields.size() != 2) throw ParseError(source, line_no, "expected 2 fields");
    int label = 0;
    const auto& f = fields[1];
    const auto res = std::from_chars(f.data(), f.data() + f.size(), label);
    if (res.ec != std::errc{} || res.ptr != f.data() + f.size()) {
      throw ParseError(source, line_no, "bad label '" + f + "'");
    }
    out.ids.push_back(fields[0]);
    out.labels.push_back(label);
  }
  if (header) throw ParseError(source, 0, "empty labeling file");
  try {
    validate(out);
  } catch (const InvalidArgument& e) {
    throw DataError(source + ": " + e.what());
  }
  return out;
}

json profile_to_json(const ClusterProfile& profile) {
  json clusters = json::array();
  for (const auto& c : profile.clusters) {
    json entry = {{"label", c.label}, {"members", c.members}, {"mean_size", c.mean_size}};
    if (c.mean_vector.size() > 0) {
      entry["mean_vector"] = std::vector<double>(c.mean_vector.data(),
                                                 c.mean_vector.data() + c.mean_vector.size());
    }
    clusters.push_back(std::move(entry));
  }
  return {{"clusters", clusters},
          {"size_rank_correlation", profile.size_rank_correlation
                                        ? json(*profile.size_rank_correlation)
                                        : json(nullptr)}};
}

}  // namespace stitch
