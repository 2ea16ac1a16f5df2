#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "stitch/embed.hpp"
#include "stitch/graph.hpp"

namespace stitch {

inline constexpr int kNoise = -1;

// graph id -> label, in row order. Ids are unique.
struct Labeling {
  std::vector<std::string> ids;
  std::vector<int> labels;

  std::size_t size() const noexcept { return ids.size(); }
};

// Throws InvalidArgument on duplicate ids or size mismatch.
void validate(const Labeling& labeling);

// Category of each graph, labelled by enum index.
Labeling category_labeling(const GraphCollection& collection);

// Mutual information over the arithmetic mean of the entropies. Noise labels
// count as singleton clusters. Identical partitions give 1; otherwise a
// constant labeling gives 0. Throws InvalidArgument when the id sets differ.
double nmi(const Labeling& a, const Labeling& b);

// Density clustering with Euclidean distance. A point is core when at least
// `min_pts` points (itself included) lie within `eps`; connected cores form
// clusters and every other point within `eps` of a core joins its nearest
// core (ties go to the lexicographically smaller core coordinates). The
// partition does not depend on row order; labels are numbered by first
// appearance. Throws InvalidArgument for eps <= 0 or min_pts == 0.
std::vector<int> density_cluster(const Eigen::MatrixXd& points, double eps, std::size_t min_pts);
Labeling density_cluster(const LabeledMatrix& m, double eps, std::size_t min_pts);

struct ClusterPipeline {
  bool log1p = false;                  // applied to raw values first
  std::optional<Eigen::Index> pca;     // project onto this many components
  bool unit_scale = false;             // divide by the largest column std
  double eps = 0.5;
  std::size_t min_pts = 2;
};

void validate(const ClusterPipeline& pipeline);
nlohmann::json to_json(const ClusterPipeline& pipeline);

// Preprocessed points, before clustering.
Eigen::MatrixXd prepare_points(const Eigen::MatrixXd& values, const ClusterPipeline& pipeline);
Labeling cluster_matrix(const LabeledMatrix& m, const ClusterPipeline& pipeline);

struct ClusterSummary {
  int label = 0;
  std::size_t members = 0;
  double mean_size = 0;          // mean |V|
  Eigen::VectorXd mean_vector;   // empty when no vectors were supplied
};

struct ClusterProfile {
  std::vector<ClusterSummary> clusters;  // by label ascending; noise first when present
  // Spearman correlation between the size rank of a graph's cluster and the
  // graph's |V|, noise excluded. Absent with fewer than two clusters or no
  // variance.
  std::optional<double> size_rank_correlation;
};

// Throws InvalidArgument when the labeling does not cover exactly the
// collection's graphs.
ClusterProfile size_profile(const Labeling& labeling, const GraphCollection& collection);
// Also fills mean vectors from the rows of `vectors`.
ClusterProfile size_profile(const Labeling& labeling, const GraphCollection& collection,
                            const LabeledMatrix& vectors);

void write_labeling_csv(std::ostream& out, const Labeling& labeling);
Labeling read_labeling_csv(std::istream& in, const std::string& source = "<labeling>");

nlohmann::json profile_to_json(const ClusterProfile& profile);

}  // namespace stitch
