#include "stitch/embed.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <unordered_map>

#include "stitch/error.hpp"
#include "stitch/io.hpp"
#include "stitch/matcher.hpp"
#include "stitch/parallel.hpp"
#include "stitch/projection.hpp"
#include "stitch/random.hpp"

namespace stitch {

using nlohmann::json;

/************ CSV ****************************************/

void write_matrix_csv(std::ostream& out, const LabeledMatrix& m) {
  out << "graph_id";
  for (const auto& c : m.column_ids) out << ',' << c;
  out << '\n';
  char buf[64];
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out << m.row_ids[r];
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const auto res = std::to_chars(buf, buf + sizeof buf, m.values(r, c));
      out << ',' << std::string_view(buf, res.ptr - buf);
    }
    out << '\n';
  }
}

LabeledMatrix read_matrix_csv(std::istream& in, const std::string& source) {
  LabeledMatrix m;
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError(source, 0, "empty matrix file");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto header = split_csv_line(line);
  if (header.empty() || header.front() != "graph_id") {
    throw ParseError(source, line_no, "header must start with graph_id");
  }
  m.column_ids.assign(header.begin() + 1, header.end());
  std::vector<double> cells;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      throw ParseError(source, line_no,
                       "expected " + std::to_string(header.size()) + " fields, got " +
                           std::to_string(fields.size()));
    }
    m.row_ids.push_back(fields[0]);
    for (std::size_t i = 1; i < fields.size(); ++i) {
      const auto& f = fields[i];
      double x = 0;
      const auto res = std::from_chars(f.data(), f.data() + f.size(), x);
      if (res.ec != std::errc{} || res.ptr != f.data() + f.size() || !std::isfinite(x)) {
        throw ParseError(source, line_no, "bad numeric cell '" + f + "'");
      }
      cells.push_back(x);
    }
  }
  const auto rows = static_cast<Eigen::Index>(m.row_ids.size());
  const auto cols = static_cast<Eigen::Index>(m.column_ids.size());
  m.values = Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      cells.data(), rows, cols);
  return m;
}

/************ Bag-of-Subgraphs ***************************/

std::string_view to_string(BosVariant variant) {
  return variant == BosVariant::Binary ? "binary" : "count";
}

std::optional<BosVariant> parse_bos_variant(std::string_view text) {
  if (text == "binary") return BosVariant::Binary;
  if (text == "count") return BosVariant::Count;
  return std::nullopt;
}

OccurrenceMatrix bag_of_subgraphs(const GraphCollection& collection,
                                  const std::vector<Pattern>& patterns,
                                  const BosOptions& options) {
  if (patterns.empty()) throw InvalidArgument("bag_of_subgraphs: no patterns");
  const MiningMode mode = patterns.front().mode;
  for (const auto& p : patterns) {
    if (p.mode != mode) throw InvalidArgument("bag_of_subgraphs: patterns mix mining modes");
  }
  std::vector<PatternMatcher> matchers;
  matchers.reserve(patterns.size());
  for (const auto& p : patterns) matchers.emplace_back(p);

  OccurrenceMatrix out;
  out.variant = options.variant;
  out.patterns = patterns;
  for (const auto& p : patterns) out.matrix.column_ids.push_back(to_string(p));
  for (const auto& entry : collection) out.matrix.row_ids.push_back(entry.graph.id());

  const auto graphs = prepare_graphs(collection, mode, options.scope, options.conflict);
  const auto rows = static_cast<Eigen::Index>(graphs.size());
  const auto cols = static_cast<Eigen::Index>(patterns.size());
  out.matrix.values = Eigen::MatrixXd::Zero(rows, cols);
  parallel_for(graphs.size(), options.threads, [&](std::size_t r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto& m = matchers[c];
      out.matrix.values(r, c) = options.variant == BosVariant::Binary
                                    ? (m.contains(graphs[r]) ? 1.0 : 0.0)
                                    : static_cast<double>(m.count_occurrences(graphs[r]));
    }
  });
  return out;
}

/************ WL documents *******************************/

std::string stable_hash_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[i] = kHex[h & 0xf];
  return out;
}

namespace {

using Preimages = std::unordered_map<std::string, std::string>;

void record(Preimages& seen, const std::string& token, const std::string& preimage) {
  const auto [it, inserted] = seen.emplace(token, preimage);
  if (!inserted && it->second != preimage) {
    throw DataError("wl: hash collision on token " + token + " between '" + it->second +
                    "' and '" + preimage + "'");
  }
}

WlDocument relabel(const SimpleGraph& graph, std::size_t iterations, Preimages& seen) {
  const std::size_t n = graph.num_vertices();
  auto adj = graph.undirected_adjacency();
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  WlDocument doc;
  doc.graph_id = graph.id;
  doc.tokens.reserve(n * (iterations + 1));
  std::vector<std::string> current(n, std::string(kWlBaseToken));
  doc.tokens.insert(doc.tokens.end(), current.begin(), current.end());
  std::vector<std::string> next(n);
  std::vector<const std::string*> around;
  for (std::size_t it = 0; it < iterations; ++it) {
    for (std::size_t v = 0; v < n; ++v) {
      around.clear();
      for (const VertexIndex w : adj[v]) around.push_back(&current[w]);
      std::sort(around.begin(), around.end(),
                [](const std::string* a, const std::string* b) { return *a < *b; });
      std::string preimage = current[v];
      preimage += '(';
      for (std::size_t i = 0; i < around.size(); ++i) {
        if (i > 0) preimage += ',';
        preimage += *around[i];
      }
      preimage += ')';
      next[v] = stable_hash_hex(preimage);
      record(seen, next[v], preimage);
    }
    current.swap(next);
    doc.tokens.insert(doc.tokens.end(), current.begin(), current.end());
  }
  return doc;
}

}  // namespace

WlDocument wl_document(const SimpleGraph& graph, std::size_t iterations) {
  Preimages seen;
  return relabel(graph, iterations, seen);
}

std::vector<WlDocument> wl_documents(const GraphCollection& collection, std::size_t iterations,
                                     MiningScope scope, std::size_t threads) {
  std::vector<WlDocument> docs(collection.size());
  std::vector<Preimages> seen(collection.size());
  parallel_for(collection.size(), threads, [&](std::size_t i) {
    const SimpleGraph g = scoped_projection(collection[i].graph, MiningMode::Undirected, scope);
    docs[i] = relabel(g, iterations, seen[i]);
    docs[i].graph_id = collection[i].graph.id();
  });
  Preimages all;
  for (const auto& s : seen) {
    for (const auto& [token, preimage] : s) record(all, token, preimage);
  }
  return docs;
}

/************ document embeddings ************************/

void validate(const TrainConfig& config) {
  if (config.dim == 0) throw InvalidArgument("train: dim must be positive");
  if (config.epochs == 0) throw InvalidArgument("train: epochs must be positive");
  if (config.negative_samples == 0) throw InvalidArgument("train: negative_samples must be positive");
  if (!(config.learning_rate > 0)) throw InvalidArgument("train: learning_rate must be positive");
  if (!(config.min_learning_rate > 0) || config.min_learning_rate > config.learning_rate) {
    throw InvalidArgument("train: min_learning_rate must be in (0, learning_rate]");
  }
  if (!config.seed) throw InvalidArgument("train: a seed is required");
}

namespace {

double neg_log_sigmoid(double x) {
  return x >= 0 ? std::log1p(std::exp(-x)) : -x + std::log1p(std::exp(x));
}

double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

EmbeddingMatrix train_embeddings(const std::vector<WlDocument>& docs, const TrainConfig& config) {
  validate(config);
  if (docs.size() < 2) throw InvalidArgument("train: need at least two documents");

  std::map<std::string, std::size_t> counts;
  for (const auto& d : docs) {
    for (const auto& t : d.tokens) ++counts[t];
  }
  if (counts.empty()) throw DataError("train: empty vocabulary");

  std::unordered_map<std::string, std::size_t> index;
  std::vector<double> cumulative;
  double running = 0;
  for (const auto& [token, count] : counts) {
    index.emplace(token, index.size());
    running += std::pow(static_cast<double>(count), 0.75);
    cumulative.push_back(running);
  }
  std::vector<std::vector<std::size_t>> encoded(docs.size());
  std::size_t total_tokens = 0;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (const auto& t : docs[d].tokens) encoded[d].push_back(index.at(t));
    total_tokens += docs[d].tokens.size();
  }

  const auto dim = static_cast<Eigen::Index>(config.dim);
  const auto n_docs = static_cast<Eigen::Index>(docs.size());
  Rng rng(*config.seed);
  Eigen::MatrixXd doc_vecs(dim, n_docs);
  for (Eigen::Index d = 0; d < n_docs; ++d) {
    for (Eigen::Index k = 0; k < dim; ++k) {
      doc_vecs(k, d) = (rng.uniform() - 0.5) / static_cast<double>(dim);
    }
  }
  Eigen::MatrixXd out_vecs = Eigen::MatrixXd::Zero(dim, static_cast<Eigen::Index>(counts.size()));

  TrainingInfo info;
  info.dim = config.dim;
  info.epochs = config.epochs;
  info.negative_samples = config.negative_samples;
  info.learning_rate = config.learning_rate;
  info.min_learning_rate = config.min_learning_rate;
  info.wl_iterations = config.wl_iterations;
  info.seed = *config.seed;
  info.vocabulary_size = counts.size();

  const double schedule = static_cast<double>(config.epochs) * static_cast<double>(total_tokens);
  double processed = 0;
  std::vector<std::size_t> order(docs.size());
  Eigen::VectorXd grad(dim);
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(order);
    double loss = 0;
    for (const std::size_t d : order) {
      auto dv = doc_vecs.col(static_cast<Eigen::Index>(d));
      for (const std::size_t target : encoded[d]) {
        const double lr = std::max(config.min_learning_rate,
                                   config.learning_rate -
                                       (config.learning_rate - config.min_learning_rate) *
                                           (processed / schedule));
        processed += 1;
        grad.setZero();
        for (std::size_t s = 0; s <= config.negative_samples; ++s) {
          std::size_t word = target;
          double label = 1.0;
          if (s > 0) {
            word = rng.from_cumulative(cumulative);
            if (word == target) continue;
            label = 0.0;
          }
          auto ov = out_vecs.col(static_cast<Eigen::Index>(word));
          const double score = dv.dot(ov);
          loss += label > 0 ? neg_log_sigmoid(score) : neg_log_sigmoid(-score);
          const double g = (label - sigmoid(score)) * lr;
          grad += g * ov;
          ov += g * dv;
        }
        dv += grad;
      }
    }
    info.epoch_losses.push_back(total_tokens > 0 ? loss / static_cast<double>(total_tokens) : 0.0);
  }
  if (!doc_vecs.allFinite()) throw DataError("train: embedding diverged to non-finite values");

  EmbeddingMatrix result;
  result.info = std::move(info);
  for (const auto& d : docs) result.matrix.row_ids.push_back(d.graph_id);
  for (std::size_t k = 0; k < config.dim; ++k) result.matrix.column_ids.push_back("d" + std::to_string(k));
  result.matrix.values = doc_vecs.transpose();
  return result;
}

json training_info_json(const TrainingInfo& info) {
  return {{"dim", info.dim},
          {"epochs", info.epochs},
          {"negative_samples", info.negative_samples},
          {"learning_rate", info.learning_rate},
          {"min_learning_rate", info.min_learning_rate},
          {"wl_iterations", info.wl_iterations},
          {"seed", info.seed},
          {"vocabulary_size", info.vocabulary_size},
          {"final_loss", info.final_loss()},
          {"epoch_losses", info.epoch_losses}};
}

/************ PCA ****************************************/

LabeledMatrix pca_project(const LabeledMatrix& m, Eigen::Index k) {
  LabeledMatrix out;
  out.row_ids = m.row_ids;
  for (Eigen::Index c = 0; c < k; ++c) out.column_ids.push_back("pc" + std::to_string(c + 1));
  out.values = pca_project(m.values, k);
  return out;
}

}  // namespace stitch
