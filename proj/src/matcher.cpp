#include "stitch/matcher.hpp"

#include <algorithm>
#include <string>

#include "stitch/error.hpp"

namespace stitch {

namespace {

bool fits(EdgeAttr wanted, EdgeAttr have, MiningMode mode, bool induced) {
  if (mode == MiningMode::Directed && !induced) return (wanted & have) == wanted;
  return wanted == have;
}

}  // namespace

PatternMatcher::PatternMatcher(const Pattern& pattern, MatchOptions options)
    : PatternMatcher(AttrGraph::from_pattern(pattern), options) {}

PatternMatcher::PatternMatcher(AttrGraph pattern, MatchOptions options)
    : pattern_(std::move(pattern)), options_(options) {
  const std::size_t n = pattern_.size();
  if (n == 0) throw InvalidArgument("PatternMatcher: empty pattern");
  if (!pattern_.connected()) throw InvalidArgument("PatternMatcher: pattern is disconnected");

  // Most constrained first: most links to already ordered vertices, then degree.
  std::vector<int> position(n, -1);
  for (std::size_t k = 0; k < n; ++k) {
    VertexIndex best = 0;
    long best_links = -1;
    std::size_t best_degree = 0;
    for (VertexIndex v = 0; v < n; ++v) {
      if (position[v] != -1) continue;
      long links = 0;
      for (const auto& nb : pattern_.neighbors(v)) links += position[nb.v] != -1;
      if (k > 0 && links == 0) continue;
      const std::size_t degree = pattern_.degree(v);
      if (links > best_links || (links == best_links && degree > best_degree)) {
        best = v;
        best_links = links;
        best_degree = degree;
      }
    }
    Step step{best, -1, 0, {}, {}};
    for (std::size_t p = 0; p < k; ++p) {
      const VertexIndex earlier = order_[p].vertex;
      if (const auto attr = pattern_.attr(earlier, best)) {
        step.links.emplace_back(static_cast<int>(p), *attr);
      } else {
        step.non_links.push_back(static_cast<int>(p));
      }
    }
    if (!step.links.empty()) {
      step.anchor = step.links.front().first;
      step.anchor_attr = step.links.front().second;
    }
    position[best] = static_cast<int>(k);
    order_.push_back(std::move(step));
  }
  automorphisms_ = count_maps(pattern_);
}

void PatternMatcher::check_mode(const AttrGraph& host) const {
  if (host.mode() != pattern_.mode()) {
    throw InvalidArgument("pattern mode " + std::string(to_string(pattern_.mode())) +
                          " does not match graph mode " + std::string(to_string(host.mode())));
  }
}

template <bool kCountAll>
std::uint64_t PatternMatcher::search(const AttrGraph& host) const {
  const std::size_t depth_max = order_.size();
  if (host.size() < depth_max) return 0;
  const MiningMode mode = pattern_.mode();
  const bool induced = options_.induced;

  std::vector<VertexIndex> image(depth_max, 0);
  std::vector<char> used(host.size(), 0);
  std::uint64_t found = 0;

  auto admissible = [&](std::size_t depth, VertexIndex cand) {
    const Step& step = order_[depth];
    if (used[cand] || host.degree(cand) < pattern_.degree(step.vertex)) return false;
    for (const auto& [p, attr] : step.links) {
      const auto have = host.attr(image[p], cand);
      if (!have || !fits(attr, *have, mode, induced)) return false;
    }
    if (induced) {
      for (const int p : step.non_links) {
        if (host.attr(image[p], cand)) return false;
      }
    }
    return true;
  };

  // Returns true to stop the search early.
  auto recurse = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == depth_max) {
      ++found;
      return !kCountAll;
    }
    const Step& step = order_[depth];
    auto visit = [&](VertexIndex cand) {
      image[depth] = cand;
      used[cand] = 1;
      const bool stop = self(self, depth + 1);
      used[cand] = 0;
      return stop;
    };
    if (step.anchor < 0) {
      for (VertexIndex cand = 0; cand < host.size(); ++cand) {
        if (admissible(depth, cand) && visit(cand)) return true;
      }
    } else {
      for (const auto& nb : host.neighbors(image[step.anchor])) {
        if (!fits(step.anchor_attr, nb.attr, mode, induced)) continue;
        if (admissible(depth, nb.v) && visit(nb.v)) return true;
      }
    }
    return false;
  };
  recurse(recurse, 0);
  return found;
}

bool PatternMatcher::contains(const AttrGraph& host) const {
  check_mode(host);
  return search<false>(host) > 0;
}

std::uint64_t PatternMatcher::count_maps(const AttrGraph& host) const {
  check_mode(host);
  return search<true>(host);
}

std::uint64_t PatternMatcher::count_occurrences(const AttrGraph& host) const {
  return count_maps(host) / automorphisms_;
}

bool contains_pattern(const AttrGraph& host, const Pattern& pattern, MatchOptions options) {
  return PatternMatcher(pattern, options).contains(host);
}

bool contains_pattern(const SimpleGraph& host, const Pattern& pattern, MatchOptions options) {
  return contains_pattern(AttrGraph::from_simple(host, pattern.mode), pattern, options);
}

std::uint64_t count_occurrences(const AttrGraph& host, const Pattern& pattern,
                                MatchOptions options) {
  return PatternMatcher(pattern, options).count_occurrences(host);
}

}  // namespace stitch
