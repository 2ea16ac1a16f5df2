#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "stitch/graph.hpp"
#include "stitch/video.hpp"

namespace stitch {

struct EdgeListOptions {
  bool has_header = false;
  std::string source = "<edge-list>";  // used in diagnostics
};

// Reads `src,dst[,label]` rows. Empty lines are skipped; every other row must
// have two or three fields and a label from the closed set (case-insensitive).
MultiDigraph parse_edge_list(std::istream& in, const std::string& graph_id,
                             const EdgeListOptions& options = {});
MultiDigraph load_edge_list(const std::filesystem::path& path, const std::string& graph_id,
                            bool has_header = false);

// Writes `src,dst,label` rows without a header, in edge order.
void write_edge_list(std::ostream& out, const MultiDigraph& graph);

struct ManifestEntry {
  std::string id;
  std::filesystem::path path;  // resolved against the manifest directory
  Category category = Category::Uncategorized;
  bool has_header = false;
};

// Parses `{"graphs": [{"id", "path", "category"[, "header"]}]}` without
// touching the referenced files.
std::vector<ManifestEntry> parse_manifest_entries(std::istream& in,
                                                  const std::filesystem::path& base_dir,
                                                  const std::string& source = "<manifest>");

// Parses the manifest and loads every referenced edge list, in manifest order.
GraphCollection parse_manifest(std::istream& in, const std::filesystem::path& base_dir,
                               const std::string& source = "<manifest>");
GraphCollection load_manifest(const std::filesystem::path& path);

// Paths are written relative to `base_dir` when they live beneath it.
void write_manifest(std::ostream& out, const std::vector<ManifestEntry>& entries,
                    const std::filesystem::path& base_dir);

// Header `vertex,views,followers,likes,hashtags` is required; hashtags are
// `|`-separated and may be empty.
VertexMetadataMap parse_vertex_metadata(std::istream& in,
                                        const std::string& source = "<metadata>");

// `video,user` rows with a header.
CreatorMap parse_creator_map(std::istream& in, const std::string& source = "<creators>");
void write_creator_map(std::ostream& out, const CreatorMap& creators,
                       const MultiDigraph& video_graph);

// Splits one CSV line on commas. Quoting is not supported.
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace stitch
