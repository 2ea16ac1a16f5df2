#pragma once

#include <cstdint>

#include "stitch/graph.hpp"
#include "stitch/pattern.hpp"

namespace stitch {

struct MatchOptions {
  // Non-induced (edge-subset) semantics by default. Induced matching also
  // requires non-adjacent pattern vertices to map to non-adjacent vertices
  // and directed pairs to match exactly.
  bool induced = false;
};

// Backtracking subgraph matcher for one pattern, reusable across host graphs.
class PatternMatcher {
 public:
  explicit PatternMatcher(const Pattern& pattern, MatchOptions options = {});
  PatternMatcher(AttrGraph pattern, MatchOptions options);

  // Throws InvalidArgument when the host's mode differs from the pattern's.
  bool contains(const AttrGraph& host) const;
  // Number of injective, edge-preserving vertex maps pattern -> host.
  std::uint64_t count_maps(const AttrGraph& host) const;
  // Distinct occurrences: maps modulo pattern automorphisms.
  std::uint64_t count_occurrences(const AttrGraph& host) const;
  std::uint64_t automorphisms() const { return automorphisms_; }

  const AttrGraph& pattern() const noexcept { return pattern_; }

 private:
  struct Step {
    VertexIndex vertex;
    int anchor;  // position of an earlier neighbour, -1 for the root
    EdgeAttr anchor_attr;  // attribute seen from the anchor
    std::vector<std::pair<int, EdgeAttr>> links;  // earlier neighbours (position, attr from them)
    std::vector<int> non_links;                   // earlier non-neighbours (induced only)
  };

  template <bool kCountAll>
  std::uint64_t search(const AttrGraph& host) const;
  void check_mode(const AttrGraph& host) const;

  AttrGraph pattern_;
  MatchOptions options_;
  std::vector<Step> order_;
  std::uint64_t automorphisms_ = 1;
};

bool contains_pattern(const AttrGraph& host, const Pattern& pattern, MatchOptions options = {});
// Projects according to the pattern's mode; `host` directedness must match it.
bool contains_pattern(const SimpleGraph& host, const Pattern& pattern, MatchOptions options = {});

std::uint64_t count_occurrences(const AttrGraph& host, const Pattern& pattern,
                                MatchOptions options = {});

}  // namespace stitch
