#include "stitch/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include <json.hpp>

#include "stitch/error.hpp"

namespace stitch {

namespace fs = std::filesystem;
using nlohmann::json;

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

/************ edge lists ********************************/

MultiDigraph parse_edge_list(std::istream& in, const std::string& graph_id,
                             const EdgeListOptions& options) {
  MultiDigraph graph(graph_id);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (options.has_header && line_no == 1) continue;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() < 2 || fields.size() > 3) {
      throw ParseError(options.source, line_no,
                       "expected 2 or 3 fields, got " + std::to_string(fields.size()));
    }
    if (fields[0].empty() || fields[1].empty()) {
      throw ParseError(options.source, line_no, "empty vertex id");
    }
    SentimentLabel label = SentimentLabel::Unlabeled;
    if (fields.size() == 3 && !fields[2].empty()) {
      const auto parsed = parse_sentiment_label(fields[2]);
      if (!parsed) throw ParseError(options.source, line_no, "unknown label '" + fields[2] + "'");
      label = *parsed;
    }
    graph.add_edge(fields[0], fields[1], label);
  }
  return graph;
}

MultiDigraph load_edge_list(const fs::path& path, const std::string& graph_id, bool has_header) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read edge list '" + path.string() + "'");
  return parse_edge_list(in, graph_id, EdgeListOptions{has_header, path.string()});
}

void write_edge_list(std::ostream& out, const MultiDigraph& graph) {
  for (const auto& e : graph.edges()) {
    out << graph.name(e.src) << ',' << graph.name(e.dst) << ',' << to_string(e.label) << '\n';
  }
}

/************ manifest **********************************/

std::vector<ManifestEntry> parse_manifest_entries(std::istream& in, const fs::path& base_dir,
                                                  const std::string& source) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& err) {
    throw ParseError(source, 0, err.what());
  }
  if (!doc.is_object() || !doc.contains("graphs") || !doc["graphs"].is_array()) {
    throw ParseError(source, 0, "manifest must be an object with a 'graphs' array");
  }

  std::vector<ManifestEntry> entries;
  std::set<std::string> ids;
  std::size_t index = 0;
  for (const auto& item : doc["graphs"]) {
    const std::string where = "graphs[" + std::to_string(index++) + "]";
    if (!item.is_object()) throw ParseError(source, 0, where + " is not an object");
    for (const char* key : {"id", "path", "category"}) {
      if (!item.contains(key) || !item[key].is_string()) {
        throw ParseError(source, 0, where + " needs a string '" + key + "'");
      }
    }
    ManifestEntry entry;
    entry.id = item["id"].get<std::string>();
    if (!ids.insert(entry.id).second) {
      throw ParseError(source, 0, "duplicate graph id '" + entry.id + "'");
    }
    const fs::path path = item["path"].get<std::string>();
    entry.path = path.is_absolute() ? path : base_dir / path;
    const auto category = parse_category(item["category"].get<std::string>());
    if (!category) {
      throw ParseError(source, 0,
                       where + ": unknown category '" + item["category"].get<std::string>() + "'");
    }
    entry.category = *category;
    if (item.contains("header")) {
      if (!item["header"].is_boolean()) throw ParseError(source, 0, where + ": 'header' not bool");
      entry.has_header = item["header"].get<bool>();
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

GraphCollection parse_manifest(std::istream& in, const fs::path& base_dir,
                               const std::string& source) {
  GraphCollection collection;
  for (const auto& entry : parse_manifest_entries(in, base_dir, source)) {
    collection.add(load_edge_list(entry.path, entry.id, entry.has_header), entry.category);
  }
  return collection;
}

GraphCollection load_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read manifest '" + path.string() + "'");
  return parse_manifest(in, path.parent_path(), path.string());
}

void write_manifest(std::ostream& out, const std::vector<ManifestEntry>& entries,
                    const fs::path& base_dir) {
  json graphs = json::array();
  for (const auto& entry : entries) {
    fs::path path = entry.path;
    const auto rel = path.lexically_relative(base_dir);
    if (!rel.empty() && *rel.begin() != "..") path = rel;
    json item = {{"id", entry.id},
                 {"path", path.generic_string()},
                 {"category", std::string(to_string(entry.category))}};
    if (entry.has_header) item["header"] = true;
    graphs.push_back(std::move(item));
  }
  out << json{{"graphs", graphs}}.dump(2) << '\n';
}

/************ vertex metadata ***************************/

namespace {

std::uint64_t parse_count(const std::string& text, const std::string& source, std::size_t line,
                          const char* column) {
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    throw ParseError(source, line, std::string("invalid ") + column + " count '" + text + "'");
  }
  return value;
}

}  // namespace

VertexMetadataMap parse_vertex_metadata(std::istream& in, const std::string& source) {
  VertexMetadataMap meta;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) {
      if (line != "vertex,views,followers,likes,hashtags") {
        throw ParseError(source, 1, "expected header 'vertex,views,followers,likes,hashtags'");
      }
      continue;
    }
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 5) {
      throw ParseError(source, line_no, "expected 5 fields, got " + std::to_string(fields.size()));
    }
    if (fields[0].empty()) throw ParseError(source, line_no, "empty vertex id");
    VertexMetadata record;
    record.views = parse_count(fields[1], source, line_no, "views");
    record.followers = parse_count(fields[2], source, line_no, "followers");
    record.total_likes = parse_count(fields[3], source, line_no, "likes");
    std::size_t start = 0;
    const std::string& tags = fields[4];
    while (!tags.empty() && start <= tags.size()) {
      const std::size_t bar = std::min(tags.find('|', start), tags.size());
      const std::string tag = tags.substr(start, bar - start);
      if (tag.empty()) throw ParseError(source, line_no, "empty hashtag");
      record.hashtags.insert(tag);
      start = bar + 1;
    }
    if (!meta.emplace(fields[0], std::move(record)).second) {
      throw ParseError(source, line_no, "duplicate vertex '" + fields[0] + "'");
    }
  }
  if (line_no == 0) throw ParseError(source, 0, "missing header");
  return meta;
}

/************ creator maps ******************************/

CreatorMap parse_creator_map(std::istream& in, const std::string& source) {
  CreatorMap creators;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) {
      if (line != "video,user") throw ParseError(source, 1, "expected header 'video,user'");
      continue;
    }
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
      throw ParseError(source, line_no, "expected 'video,user'");
    }
    if (!creators.emplace(fields[0], fields[1]).second) {
      throw ParseError(source, line_no, "duplicate video '" + fields[0] + "'");
    }
  }
  return creators;
}

void write_creator_map(std::ostream& out, const CreatorMap& creators,
                       const MultiDigraph& video_graph) {
  out << "video,user\n";
  for (const auto& video : video_graph.names()) {
    out << video << ',' << creators.at(video) << '\n';
  }
}

}  // namespace stitch
