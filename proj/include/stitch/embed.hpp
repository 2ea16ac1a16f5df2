#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "stitch/graph.hpp"
#include "stitch/miner.hpp"
#include "stitch/pattern.hpp"

namespace stitch {

// Dense matrix with string row and column ids.
struct LabeledMatrix {
  std::vector<std::string> row_ids;
  std::vector<std::string> column_ids;
  Eigen::MatrixXd values;

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }
};

// Header "graph_id,<column ids>", one row per graph. Values round-trip
// exactly (shortest form for integers, 17 significant digits otherwise).
void write_matrix_csv(std::ostream& out, const LabeledMatrix& m);
// Throws ParseError on ragged rows or non-numeric cells.
LabeledMatrix read_matrix_csv(std::istream& in, const std::string& source = "<matrix>");

/************ Bag-of-Subgraphs ***************************/

enum class BosVariant { Binary, Count };

std::string_view to_string(BosVariant variant);
std::optional<BosVariant> parse_bos_variant(std::string_view text);

struct OccurrenceMatrix {
  BosVariant variant = BosVariant::Binary;
  std::vector<Pattern> patterns;  // one per column
  LabeledMatrix matrix;           // columns named by to_string(pattern)
};

struct BosOptions {
  BosVariant variant = BosVariant::Binary;
  MiningScope scope = MiningScope::FullGraph;
  LabelConflict conflict = LabelConflict::Mixed;
  std::size_t threads = 1;
};

// Binary cells hold containment; count cells hold occurrences (injective
// maps modulo pattern automorphisms). Throws InvalidArgument when `patterns`
// is empty or mixes modes.
OccurrenceMatrix bag_of_subgraphs(const GraphCollection& collection,
                                  const std::vector<Pattern>& patterns,
                                  const BosOptions& options = {});

/************ WL documents *******************************/

struct WlDocument {
  std::string graph_id;
  std::vector<std::string> tokens;  // |V| * (h + 1), iteration-major
};

inline constexpr std::string_view kWlBaseToken = "wl";

// Stable 64-bit FNV-1a hash, as 16 lowercase hex digits.
std::string stable_hash_hex(std::string_view text);

// Subtree relabeling on the undirected view of `graph` (labels ignored).
// Throws DataError on a hash collision.
WlDocument wl_document(const SimpleGraph& graph, std::size_t iterations);

// One document per graph of the scoped undirected projections. Collisions
// are checked across the whole corpus.
std::vector<WlDocument> wl_documents(const GraphCollection& collection, std::size_t iterations,
                                     MiningScope scope = MiningScope::FullGraph,
                                     std::size_t threads = 1);

/************ document embeddings ************************/

struct TrainConfig {
  std::size_t dim = 128;
  std::size_t epochs = 50;
  std::size_t negative_samples = 5;
  double learning_rate = 0.025;
  double min_learning_rate = 0.0001;
  std::size_t wl_iterations = 2;
  std::optional<std::uint64_t> seed;
};

// Throws InvalidArgument for zero sizes, non-positive rates or a missing seed.
void validate(const TrainConfig& config);

struct TrainingInfo {
  std::size_t dim = 0;
  std::size_t epochs = 0;
  std::size_t negative_samples = 0;
  double learning_rate = 0;
  double min_learning_rate = 0;
  std::size_t wl_iterations = 0;
  std::uint64_t seed = 0;
  std::size_t vocabulary_size = 0;
  std::vector<double> epoch_losses;  // mean loss per (document, token) pair
  double final_loss() const { return epoch_losses.empty() ? 0.0 : epoch_losses.back(); }
};

struct EmbeddingMatrix {
  LabeledMatrix matrix;  // columns d0..d{dim-1}
  TrainingInfo info;
};

// Distributed bag-of-words document vectors with negative sampling from the
// unigram^0.75 distribution. Single-threaded and fully determined by the
// seed. Throws InvalidArgument for fewer than two documents and DataError for
// an empty vocabulary.
EmbeddingMatrix train_embeddings(const std::vector<WlDocument>& docs, const TrainConfig& config);

nlohmann::json training_info_json(const TrainingInfo& info);

/************ PCA ****************************************/

// Projects mean-centred rows onto the top-k principal axes. Each axis is
// signed so that its largest-magnitude loading is positive; axes with zero
// variance yield zero coordinates. Throws InvalidArgument for fewer than two
// rows, no columns or k == 0.
template <typename Derived>
Eigen::MatrixXd pca_project(const Eigen::MatrixBase<Derived>& data, Eigen::Index k = 2);

LabeledMatrix pca_project(const LabeledMatrix& m, Eigen::Index k = 2);

}  // namespace stitch

#include "stitch/pca_impl.hpp"
