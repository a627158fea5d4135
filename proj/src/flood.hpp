#pragma once

// Alternating-flood primitives shared by the CLAP engine and the greedy
// baseline. Internal to the library.

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

#include "duplex/duplex_state.hpp"
#include "duplex/graph.hpp"

namespace duplex::detail {

// Alternating moves between V⁻ vertices of one layer.
//
// Layer 1 floods start at unmatched V⁻ vertices (D₁ drivers): a⁻ –(∉M)– x⁺ –(∈M)– b⁻.
// Every V⁻ vertex reached this way is matched and is a valid destination.
//
// Layer 2 floods start at matched V⁻ vertices (non-D₂): a⁻ –(∈M)– p⁺ –(∉M)– w⁻.
// A reached w⁻ is a destination iff it is unmatched (w ∈ D₂), in which case
// the walk stops there; matched w⁻ are intermediates only.
//
// Both step kinds contribute the edge pair {via, prev}, {via, cur}.
template <typename Visit>
void for_each_step(const BipartiteRep& b, const Matching& m, Layer layer, NodeId a, Visit&& visit) {
  if (layer == Layer::first) {
    for (NodeId x : b.plus_neighbors(a)) {
      NodeId next = m.mate_of_plus(x);
      if (next == kNoNode || next == a) continue;
      visit(next, x);
    }
  } else {
    NodeId p = m.mate_of_minus(a);
    if (p == kNoNode) return;
    for (NodeId w : b.minus_neighbors(p)) {
      if (w == a) continue;
      visit(w, p);
    }
  }
}

inline bool is_destination(const Matching& m, Layer layer, NodeId v) {
  return layer == Layer::first ? m.minus_matched(v) : !m.minus_matched(v);
}

inline bool expands(const Matching& m, NodeId v) { return m.minus_matched(v); }

inline bool valid_origin(const DuplexState& s, Layer layer, NodeId v) {
  return layer == Layer::first ? s.is_driver(Layer::first, v) : !s.is_driver(Layer::second, v);
}

// Epoch-stamped membership set; reset is O(1) amortized.
class StampSet {
 public:
  void reset(std::size_t n) {
    if (stamp_.size() < n) stamp_.assign(n, 0);
    if (++epoch_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      epoch_ = 1;
    }
  }
  bool test(std::size_t i) const { return stamp_[i] == epoch_; }
  void set(std::size_t i) { stamp_[i] = epoch_; }
  bool insert(std::size_t i) {
    if (stamp_[i] == epoch_) return false;
    stamp_[i] = epoch_;
    return true;
  }

 private:
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
};

// Sequence of floods in one search that share a covered set per layer.
// Alternating reachability is transitive, so a vertex covered by an earlier
// flood contributes nothing new to a later one; each layer is traversed at
// most once per search.
class IncrementalFlood {
 public:
  void reset(std::size_t n) {
    covered_[0].reset(n);
    covered_[1].reset(n);
  }

  // Destinations newly reached from `source`, ascending.
  const std::vector<NodeId>& flood(const DuplexState& s, Layer layer, NodeId source) {
    const auto& b = s.network().bipartite(layer);
    const auto& m = s.matching(layer);
    auto& covered = covered_[index_of(layer)];
    fresh_.clear();
    if (!covered.insert(source)) return fresh_;
    frontier_.clear();
    frontier_.push_back(source);
    for (std::size_t head = 0; head < frontier_.size(); ++head) {
      for_each_step(b, m, layer, frontier_[head], [&](NodeId next, NodeId) {
        if (!covered.insert(next)) return;
        if (is_destination(m, layer, next)) fresh_.push_back(next);
        if (expands(m, next)) frontier_.push_back(next);
      });
    }
    std::sort(fresh_.begin(), fresh_.end());
    return fresh_;
  }

 private:
  std::array<StampSet, 2> covered_;
  std::vector<NodeId> frontier_;
  std::vector<NodeId> fresh_;
};

}  // namespace duplex::detail
