#include "cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stitch/cluster.hpp"
#include "stitch/embed.hpp"
#include "stitch/error.hpp"
#include "stitch/generators.hpp"
#include "stitch/io.hpp"
#include "stitch/metrics.hpp"
#include "stitch/miner.hpp"
#include "stitch/video.hpp"

namespace stitch::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::vector<std::string> kModes = {"undirected", "directed", "edge_labeled"};
const std::vector<std::string> kScopes = {"full_graph", "largest_component"};
const std::vector<std::string> kConflicts = {"mixed", "majority"};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json read_json(const fs::path& path) {
  const std::string text = slurp(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << content;
  if (!out) throw DataError("write failed: " + path.string());
}

void write_json(const fs::path& path, const json& j) { write_file(path, j.dump(2) + "\n"); }

void echo_config(const fs::path& dir, const std::string& command, json config) {
  config["command"] = command;
  write_json(dir / (command + ".config.json"), config);
}

MiningScope scope_of(const std::string& s) { return *parse_mining_scope(s); }
MiningMode mode_of(const std::string& s) { return *parse_mining_mode(s); }
LabelConflict conflict_of(const std::string& s) {
  return s == "majority" ? LabelConflict::Majority : LabelConflict::Mixed;
}

struct MiningFlags {
  std::size_t min_support = 2;
  std::size_t max_vertices = 6;
  std::string mode = "undirected";
  std::string scope = "full_graph";
  std::string conflict = "mixed";

  void add(CLI::App* app) {
    app->add_option("--min-support", min_support, "Minimum number of supporting graphs")
        ->check(CLI::PositiveNumber);
    app->add_option("--max-vertices", max_vertices, "Largest pattern size")->check(CLI::Range(2, 64));
    app->add_option("--mode", mode, "Pattern mode")->check(CLI::IsMember(kModes));
    app->add_option("--scope", scope, "Mine whole graphs or their largest component")
        ->check(CLI::IsMember(kScopes));
    app->add_option("--conflict", conflict, "Label rule for merged edges")
        ->check(CLI::IsMember(kConflicts));
  }

  MiningConfig config(std::size_t threads) const {
    return {min_support, max_vertices, mode_of(mode), scope_of(scope), conflict_of(conflict), threads};
  }

  json to_json() const {
    return {{"min_support", min_support}, {"max_vertices", max_vertices}, {"mode", mode},
            {"scope", scope},             {"conflict", conflict}};
  }
};

/************ validate ***********************************/

struct ValidateArgs {
  std::string manifest;
  std::string videos;
  std::string out;
};

int cmd_validate(const ValidateArgs& a, std::ostream& out) {
  if (a.manifest.empty() && a.videos.empty()) throw InvalidArgument("validate needs --manifest or --videos");
  json report;
  bool ok = true;
  if (!a.manifest.empty()) {
    const auto collection = load_manifest(a.manifest);
    json graphs = json::array();
    for (const auto& e : collection) {
      graphs.push_back({{"id", e.graph.id()},
                        {"category", std::string(to_string(e.category))},
                        {"n_vertices", e.graph.num_vertices()},
                        {"n_edges", e.graph.num_edges()}});
    }
    out << "manifest: " << collection.size() << " graphs ok\n";
    report["graphs"] = std::move(graphs);
  }
  if (!a.videos.empty()) {
    const fs::path path(a.videos);
    const json doc = read_json(path);
    if (!doc.contains("graphs") || !doc["graphs"].is_array()) {
      throw DataError(a.videos + ": expected an object with a 'graphs' array");
    }
    json videos = json::array();
    for (const auto& item : doc["graphs"]) {
      const std::string id = item.at("id").get<std::string>();
      const fs::path video_path = path.parent_path() / item.at("video").get<std::string>();
      const auto video = load_edge_list(video_path, id);
      const auto check = validate_video_graph(video);
      json entry = {{"id", id}, {"valid", check.valid()}};
      json violations = json::array();
      for (const auto& v : check.violations) {
        violations.push_back({{"vertex", v.vertex}, {"rule", std::string(to_string(v.rule))}});
        out << id << ": " << to_string(v.rule) << " at " << v.vertex << "\n";
      }
      entry["violations"] = std::move(violations);
      entry["warnings"] = check.warnings.size();
      if (check.valid() && item.contains("creators")) {
        std::ifstream in(path.parent_path() / item["creators"].get<std::string>());
        if (!in) throw DataError("cannot open creators for " + id);
        const auto user = derive_user_graph(video, parse_creator_map(in, id + " creators"));
        entry["user_vertices"] = user.num_vertices();
        entry["user_edges"] = user.num_edges();
      }
      ok = ok && check.valid();
      videos.push_back(std::move(entry));
    }
    out << "videos: " << videos.size() << " graphs, " << (ok ? "all valid" : "violations found")
        << "\n";
    report["videos"] = std::move(videos);
  }
  report["valid"] = ok;
  if (!a.out.empty()) {
    write_json(fs::path(a.out) / "validation.json", report);
    echo_config(a.out, "validate", {{"manifest", a.manifest}, {"videos", a.videos}});
  }
  return ok ? kOk : kDataError;
}

/************ metrics ************************************/

struct MetricsArgs {
  std::string manifest;
  std::string out;
  std::string diameter_scope = "full_graph";
  std::size_t threads = 1;
};

int cmd_metrics(const MetricsArgs& a) {
  const auto collection = load_manifest(a.manifest);
  const auto scope = a.diameter_scope == "largest_component" ? DiameterScope::LargestComponent
                                                             : DiameterScope::FullGraph;
  const auto report = compute_report(collection, a.threads, scope);
  std::ostringstream csv;
  write_report_csv(csv, report);
  write_file(fs::path(a.out) / "metrics.csv", csv.str());
  write_json(fs::path(a.out) / "metrics.json", report_to_json(report));
  echo_config(a.out, "metrics",
              {{"manifest", a.manifest}, {"diameter_scope", a.diameter_scope}, {"threads", a.threads}});
  return kOk;
}

/************ mine ***************************************/

struct MineArgs {
  std::string manifest;
  std::string out;
  MiningFlags mining;
  std::size_t threads = 1;
};

int cmd_mine(const MineArgs& a) {
  const auto collection = load_manifest(a.manifest);
  const auto config = a.mining.config(a.threads);
  const auto patterns = mine_frequent(collection, config);
  write_json(fs::path(a.out) / "patterns.json", patterns_to_json(patterns, config));
  std::ostringstream dot;
  write_hierarchy_dot(dot, patterns, build_hierarchy(patterns));
  write_file(fs::path(a.out) / "hierarchy.dot", dot.str());
  json echo = a.mining.to_json();
  echo["manifest"] = a.manifest;
  echo["threads"] = a.threads;
  echo_config(a.out, "mine", echo);
  return kOk;
}

/************ embed **************************************/

struct EmbedArgs {
  std::string manifest;
  std::string out;
  std::string method;
  std::string variant = "binary";
  std::string patterns;
  MiningFlags mining;
  std::string bos_scope = "full_graph";
  TrainConfig train;
  std::string wl_scope = "full_graph";
  std::size_t threads = 1;
};

std::string matrix_text(const LabeledMatrix& m) {
  std::ostringstream buf;
  write_matrix_csv(buf, m);
  return buf.str();
}

int cmd_embed(const EmbedArgs& a) {
  const auto collection = load_manifest(a.manifest);
  const fs::path dir(a.out);
  json echo = {{"manifest", a.manifest}, {"method", a.method}, {"threads", a.threads}};
  json meta = {{"method", a.method}, {"n_graphs", collection.size()}};

  if (a.method == "bos") {
    std::vector<Pattern> patterns;
    if (!a.patterns.empty()) {
      for (auto& p : patterns_from_json(read_json(a.patterns))) patterns.push_back(std::move(p.pattern));
      echo["patterns"] = a.patterns;
    } else {
      for (auto& p : mine_frequent(collection, a.mining.config(a.threads))) {
        patterns.push_back(std::move(p.pattern));
      }
      echo["mining"] = a.mining.to_json();
    }
    if (patterns.empty()) throw DataError("no patterns to embed with");
    echo["variant"] = a.variant;
    echo["bos_scope"] = a.bos_scope;
    std::vector<BosVariant> variants;
    if (a.variant != "count") variants.push_back(BosVariant::Binary);
    if (a.variant != "binary") variants.push_back(BosVariant::Count);
    json files = json::array();
    for (const auto v : variants) {
      BosOptions options{v, scope_of(a.bos_scope), conflict_of(a.mining.conflict), a.threads};
      const auto m = bag_of_subgraphs(collection, patterns, options);
      const std::string name =
          variants.size() == 1 ? "embedding.csv" : "embedding_" + std::string(to_string(v)) + ".csv";
      write_file(dir / name, matrix_text(m.matrix));
      files.push_back({{"variant", std::string(to_string(v))}, {"file", name}});
    }
    meta["files"] = std::move(files);
    meta["n_patterns"] = patterns.size();
  } else {
    const auto docs = wl_documents(collection, a.train.wl_iterations, scope_of(a.wl_scope), a.threads);
    const auto emb = train_embeddings(docs, a.train);
    write_file(dir / "embedding.csv", matrix_text(emb.matrix));
    meta["files"] = json::array({{{"file", "embedding.csv"}}});
    meta["training"] = training_info_json(emb.info);
    echo["wl_scope"] = a.wl_scope;
    echo["train"] = {{"dim", a.train.dim},
                     {"epochs", a.train.epochs},
                     {"negative_samples", a.train.negative_samples},
                     {"learning_rate", a.train.learning_rate},
                     {"min_learning_rate", a.train.min_learning_rate},
                     {"wl_iterations", a.train.wl_iterations},
                     {"seed", *a.train.seed}};
  }
  write_json(dir / "embedding.meta.json", meta);
  echo_config(a.out, "embed", echo);
  return kOk;
}

/************ cluster ************************************/

struct ClusterArgs {
  std::string matrix;
  std::string out;
  std::string manifest;
  ClusterPipeline pipeline;
  Eigen::Index pca = 0;
};

int cmd_cluster(ClusterArgs a) {
  std::ifstream in(a.matrix, std::ios::binary);
  if (!in) throw DataError("cannot open " + a.matrix);
  const auto m = read_matrix_csv(in, a.matrix);
  if (a.pca > 0) a.pipeline.pca = a.pca;
  const auto labeling = cluster_matrix(m, a.pipeline);
  std::ostringstream csv;
  write_labeling_csv(csv, labeling);
  write_file(fs::path(a.out) / "labels.csv", csv.str());
  if (!a.manifest.empty()) {
    const auto collection = load_manifest(a.manifest);
    write_json(fs::path(a.out) / "profile.json", profile_to_json(size_profile(labeling, collection, m)));
  }
  json echo = to_json(a.pipeline);
  echo["matrix"] = a.matrix;
  echo["manifest"] = a.manifest;
  echo_config(a.out, "cluster", echo);
  return kOk;
}

/************ nmi ****************************************/

struct NmiArgs {
  std::string a;
  std::string b;
  std::string categories;
  std::string out;
};

Labeling load_labeling(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  return read_labeling_csv(in, path);
}

int cmd_nmi(const NmiArgs& args, std::ostream& out) {
  const Labeling a = load_labeling(args.a);
  const Labeling b = args.b.empty() ? category_labeling(load_manifest(args.categories))
                                    : load_labeling(args.b);
  const double value = nmi(a, b);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  out << buf << "\n";
  if (!args.out.empty()) {
    write_json(fs::path(args.out) / "nmi.json", {{"nmi", value}});
    echo_config(args.out, "nmi", {{"a", args.a}, {"b", args.b}, {"categories", args.categories}});
  }
  return kOk;
}

/************ gen ****************************************/

struct GenArgs {
  std::string out;
  std::string preset;
  StitchGenConfig config;
};

int cmd_gen(const GenArgs& a) {
  StitchGenConfig config = a.config;
  if (a.preset == "hashtags") config = hashtag_profile_config(a.config.seed);
  validate(config);
  const auto samples = gen_stitch_samples(config);
  const fs::path dir(a.out);
  std::vector<ManifestEntry> users;
  json videos = json::array();
  for (const auto& s : samples) {
    const std::string& id = s.user.id();
    std::ostringstream user_csv, video_csv, creator_csv;
    write_edge_list(user_csv, s.user);
    write_edge_list(video_csv, s.video);
    write_creator_map(creator_csv, s.creators, s.video);
    write_file(dir / "users" / (id + ".csv"), user_csv.str());
    write_file(dir / "videos" / (id + ".csv"), video_csv.str());
    write_file(dir / "creators" / (id + ".csv"), creator_csv.str());
    users.push_back({id, dir / "users" / (id + ".csv"), s.category, false});
    videos.push_back({{"id", id},
                      {"video", "videos/" + id + ".csv"},
                      {"creators", "creators/" + id + ".csv"},
                      {"category", std::string(to_string(s.category))}});
  }
  std::ostringstream manifest;
  write_manifest(manifest, users, dir);
  write_file(dir / "manifest.json", manifest.str());
  write_json(dir / "videos.json", {{"graphs", std::move(videos)}});

  std::vector<std::string> categories;
  for (const auto c : config.categories) categories.emplace_back(to_string(c));
  echo_config(a.out, "gen",
              {{"preset", a.preset},
               {"n_graphs", config.n_graphs},
               {"target_sizes", config.target_sizes},
               {"multi_edge_rate", config.multi_edge_rate},
               {"self_loop_rate", config.self_loop_rate},
               {"creator_reuse_rate", config.creator_reuse_rate},
               {"star_exponent", config.star_exponent},
               {"disjoint_roles", config.disjoint_roles},
               {"label_weights", config.label_weights},
               {"categories", categories},
               {"graph_ids", config.graph_ids},
               {"seed", config.seed}});
  return kOk;
}

/************ cycles *************************************/

struct CyclesArgs {
  std::string manifest;
  std::string out;
  std::size_t max_len = 8;
  std::string scope = "largest_component";
  std::size_t threads = 1;
};

int cmd_cycles(const CyclesArgs& a) {
  const auto collection = load_manifest(a.manifest);
  const auto supports = cycle_supports(collection, a.max_len, scope_of(a.scope), a.threads);
  std::ostringstream csv, dot;
  csv << "length,support\n";
  dot << "graph cycles {\n  node [shape=circle, label=\"\"];\n";
  for (const auto& [len, support] : supports) {
    csv << len << ',' << support << '\n';
    dot << "  subgraph cluster_c" << len << " {\n    label=\"C" << len << " support " << support
        << "\";\n";
    for (std::size_t i = 0; i < len; ++i) {
      dot << "    c" << len << '_' << i << " -- c" << len << '_' << (i + 1) % len << ";\n";
    }
    dot << "  }\n";
  }
  dot << "}\n";
  write_file(fs::path(a.out) / "cycles.csv", csv.str());
  write_file(fs::path(a.out) / "cycles.dot", dot.str());
  echo_config(a.out, "cycles",
              {{"manifest", a.manifest}, {"max_len", a.max_len}, {"scope", a.scope}, {"threads", a.threads}});
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stitch network analysis toolkit", "stitch"};
  app.require_subcommand(1);

  ValidateArgs validate_args;
  auto* validate_cmd = app.add_subcommand("validate", "Check a manifest and video graphs");
  validate_cmd->add_option("--manifest", validate_args.manifest, "User-graph manifest");
  validate_cmd->add_option("--videos", validate_args.videos, "Video-graph manifest");
  validate_cmd->add_option("--out", validate_args.out, "Directory for validation.json");
  validate_cmd->require_option(1, 3);

  MetricsArgs metrics_args;
  auto* metrics_cmd = app.add_subcommand("metrics", "Per-graph metrics table");
  metrics_cmd->add_option("--manifest", metrics_args.manifest)->required();
  metrics_cmd->add_option("--out", metrics_args.out)->required();
  metrics_cmd->add_option("--diameter-scope", metrics_args.diameter_scope)->check(CLI::IsMember(kScopes));
  metrics_cmd->add_option("--threads", metrics_args.threads)->check(CLI::PositiveNumber);

  MineArgs mine_args;
  auto* mine_cmd = app.add_subcommand("mine", "Frequent subgraph mining");
  mine_cmd->add_option("--manifest", mine_args.manifest)->required();
  mine_cmd->add_option("--out", mine_args.out)->required();
  mine_args.mining.add(mine_cmd);
  mine_cmd->add_option("--threads", mine_args.threads)->check(CLI::PositiveNumber);

  EmbedArgs embed_args;
  std::uint64_t seed = 0;
  auto* embed_cmd = app.add_subcommand("embed", "Whole-graph embeddings");
  embed_cmd->add_option("--manifest", embed_args.manifest)->required();
  embed_cmd->add_option("--out", embed_args.out)->required();
  embed_cmd->add_option("--method", embed_args.method)->required()->check(CLI::IsMember({"bos", "wl"}));
  embed_cmd->add_option("--variant", embed_args.variant)->check(CLI::IsMember({"binary", "count", "both"}));
  embed_cmd->add_option("--patterns", embed_args.patterns, "patterns.json from a mine run");
  embed_args.mining.add(embed_cmd);
  embed_cmd->add_option("--bos-scope", embed_args.bos_scope)->check(CLI::IsMember(kScopes));
  auto* seed_opt = embed_cmd->add_option("--seed", seed);
  embed_cmd->add_option("--dim", embed_args.train.dim);
  embed_cmd->add_option("--epochs", embed_args.train.epochs);
  embed_cmd->add_option("--negative", embed_args.train.negative_samples);
  embed_cmd->add_option("--learning-rate", embed_args.train.learning_rate);
  embed_cmd->add_option("--min-learning-rate", embed_args.train.min_learning_rate);
  embed_cmd->add_option("--wl-iterations", embed_args.train.wl_iterations);
  embed_cmd->add_option("--wl-scope", embed_args.wl_scope)->check(CLI::IsMember(kScopes));
  embed_cmd->add_option("--threads", embed_args.threads)->check(CLI::PositiveNumber);

  ClusterArgs cluster_args;
  auto* cluster_cmd = app.add_subcommand("cluster", "Density clustering of a matrix");
  cluster_cmd->add_option("--matrix", cluster_args.matrix)->required();
  cluster_cmd->add_option("--out", cluster_args.out)->required();
  cluster_cmd->add_option("--eps", cluster_args.pipeline.eps)->required();
  cluster_cmd->add_option("--min-pts", cluster_args.pipeline.min_pts);
  cluster_cmd->add_option("--pca", cluster_args.pca, "Project onto k principal components first");
  cluster_cmd->add_flag("--log1p", cluster_args.pipeline.log1p);
  cluster_cmd->add_flag("--unit-scale", cluster_args.pipeline.unit_scale);
  cluster_cmd->add_option("--manifest", cluster_args.manifest, "Write a size profile");

  NmiArgs nmi_args;
  auto* nmi_cmd = app.add_subcommand("nmi", "Compare two labelings");
  nmi_cmd->add_option("--a", nmi_args.a)->required();
  auto* b_opt = nmi_cmd->add_option("--b", nmi_args.b);
  auto* cat_opt = nmi_cmd->add_option("--categories", nmi_args.categories, "Manifest whose categories form labeling b");
  b_opt->excludes(cat_opt);
  nmi_cmd->add_option("--out", nmi_args.out);

  GenArgs gen_args;
  auto* gen_cmd = app.add_subcommand("gen", "Synthetic stitch collections");
  gen_cmd->add_option("--out", gen_args.out)->required();
  gen_cmd->add_option("--preset", gen_args.preset)->check(CLI::IsMember({"hashtags"}));
  gen_cmd->add_option("--seed", gen_args.config.seed);
  gen_cmd->add_option("--graphs", gen_args.config.n_graphs);
  gen_cmd->add_option("--sizes", gen_args.config.target_sizes)->delimiter(',');
  gen_cmd->add_option("--multi-edge-rate", gen_args.config.multi_edge_rate);
  gen_cmd->add_option("--self-loop-rate", gen_args.config.self_loop_rate);
  gen_cmd->add_option("--reuse-rate", gen_args.config.creator_reuse_rate);
  gen_cmd->add_option("--star-exponent", gen_args.config.star_exponent);
  gen_cmd->add_flag("--disjoint-roles", gen_args.config.disjoint_roles);

  CyclesArgs cycles_args;
  auto* cycles_cmd = app.add_subcommand("cycles", "Cycle support table");
  cycles_cmd->add_option("--manifest", cycles_args.manifest)->required();
  cycles_cmd->add_option("--out", cycles_args.out)->required();
  cycles_cmd->add_option("--max-len", cycles_args.max_len)->check(CLI::Range(3, 64));
  cycles_cmd->add_option("--scope", cycles_args.scope)->check(CLI::IsMember(kScopes));
  cycles_cmd->add_option("--threads", cycles_args.threads)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*validate_cmd) return cmd_validate(validate_args, out);
    if (*metrics_cmd) return cmd_metrics(metrics_args);
    if (*mine_cmd) return cmd_mine(mine_args);
    if (*embed_cmd) {
      if (embed_args.method == "wl") {
        if (seed_opt->count() == 0) throw InvalidArgument("embed --method wl requires --seed");
        embed_args.train.seed = seed;
      }
      return cmd_embed(embed_args);
    }
    if (*cluster_cmd) return cmd_cluster(cluster_args);
    if (*nmi_cmd) {
      if (nmi_args.b.empty() && nmi_args.categories.empty()) {
        throw InvalidArgument("nmi needs --b or --categories");
      }
      return cmd_nmi(nmi_args, out);
    }
    if (*gen_cmd) return cmd_gen(gen_args);
    if (*cycles_cmd) return cmd_cycles(cycles_args);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}

}  // namespace stitch::cli
