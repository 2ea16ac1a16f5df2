#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "stitch/graph.hpp"
#include "stitch/matcher.hpp"
#include "stitch/pattern.hpp"
#include "stitch/projection.hpp"

namespace stitch {

enum class MiningScope { FullGraph, LargestComponent };

std::string_view to_string(MiningScope scope);
std::optional<MiningScope> parse_mining_scope(std::string_view text);

struct MiningConfig {
  std::size_t min_support = 1;
  std::size_t max_vertices = 6;
  MiningMode mode = MiningMode::Undirected;
  MiningScope scope = MiningScope::FullGraph;
  LabelConflict conflict = LabelConflict::Mixed;
  std::size_t threads = 1;
};

void validate(const MiningConfig& config);

struct MinedPattern {
  Pattern pattern;
  std::size_t support = 0;
  std::vector<std::string> supporting_graph_ids;  // sorted
  std::optional<Pattern> parent;                  // DFS-code prefix, one edge smaller
};

// Scope + simple projection matching `mode`, in collection order.
std::vector<AttrGraph> prepare_graphs(const GraphCollection& collection, MiningMode mode,
                                      MiningScope scope,
                                      LabelConflict conflict = LabelConflict::Mixed);
SimpleGraph scoped_projection(const MultiDigraph& graph, MiningMode mode, MiningScope scope,
                              LabelConflict conflict = LabelConflict::Mixed);

// Every connected pattern with support >= min_support and at most
// max_vertices vertices, with transactional support. Sorted by (vertex count,
// code); identical for any thread count.
std::vector<MinedPattern> mine_frequent(const GraphCollection& collection,
                                        const MiningConfig& config);

struct HierarchyLink {
  std::size_t parent;  // indices into the pattern list
  std::size_t child;
  friend auto operator<=>(const HierarchyLink&, const HierarchyLink&) = default;
};

// Links each pattern to every listed pattern obtained by deleting one edge
// (and any vertex it isolates). Sorted by (parent, child).
std::vector<HierarchyLink> build_hierarchy(const std::vector<MinedPattern>& patterns);

// Pattern for the k-cycle in Undirected mode.
Pattern cycle_pattern(std::size_t length);

// Support of C_k for k = 3..max_len over the undirected projections.
std::map<std::size_t, std::size_t> cycle_supports(
    const GraphCollection& collection, std::size_t max_len,
    MiningScope scope = MiningScope::LargestComponent, std::size_t threads = 1);

/************ serialization *****************************/

nlohmann::json pattern_code_json(const Pattern& pattern);
Pattern pattern_from_code_json(const nlohmann::json& code, MiningMode mode);

nlohmann::json patterns_to_json(const std::vector<MinedPattern>& patterns,
                                const MiningConfig& config);
std::vector<MinedPattern> patterns_from_json(const nlohmann::json& doc);

void write_hierarchy_dot(std::ostream& out, const std::vector<MinedPattern>& patterns,
                         const std::vector<HierarchyLink>& links);

}  // namespace stitch
