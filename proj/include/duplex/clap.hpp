#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "duplex/duplex_state.hpp"
#include "duplex/graph.hpp"

namespace duplex {

/// Admissible segment (from →ℓ to) together with its witness alternating path,
/// listed edge by edge from from⁻ to to⁻.
///
/// Layer 1: from ∈ D₁, to ∉ D₁; applying it moves the layer-1 driver from
/// `from` to `to`. Layer 2: from ∉ D₂, to ∈ D₂; applying it moves the layer-2
/// driver from `to` to `from`.
struct Segment {
  NodeId from = kNoNode;
  NodeId to = kNoNode;
  Layer layer = Layer::first;
  std::vector<BipartiteEdge> witness;

  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Cross-layer augmenting path: layer-alternating chain of segments from a DD₁
/// node to a DD₂ node through consistently classified relays.
struct ClapPath {
  std::vector<Segment> segments;

  std::size_t length() const { return segments.size(); }
  /// v₀, v₁, ..., v_h.
  std::vector<NodeId> node_sequence() const;
};

/// Result of a (multi-source) alternating flood in one layer.
struct AltReachResult {
  /// Admissible destinations in ascending order; never contains a source.
  std::vector<NodeId> reachable;
  /// For every V⁻ vertex visited (destinations and intermediates): the
  /// previous V⁻ vertex on the BFS tree and the V⁺ vertex joining them.
  struct Step {
    NodeId prev_minus;
    NodeId via_plus;
  };
  std::unordered_map<NodeId, Step> parents;
  /// Rebuilds the witness from the owning source to `v`, ordered source first.
  std::vector<BipartiteEdge> path_to(NodeId v) const;
};

/// Multi-source alternating reachability in layer `layer` with start-parity.
/// Throws std::invalid_argument if a source has the wrong polarity for the
/// layer (layer 1 needs a D₁ source, layer 2 a non-D₂ source).
AltReachResult alt_reach(std::span<const NodeId> sources, Layer layer, const DuplexState& state);

/// Shortest M_ℓ-alternating witness for the segment (from →ℓ to), or nullopt
/// if the segment is not admissible. Ties between equal-length paths go to
/// the lexicographically smallest parent choice.
std::optional<std::vector<BipartiteEdge>> alt_path(NodeId from, NodeId to, Layer layer,
                                                   const DuplexState& state);

/// Layer-alternating BFS from all of DD₁; returns a CLAP with the minimum
/// number of segments, or nullopt when the state is CLAP-stable.
std::optional<ClapPath> find_shortest_clap(const DuplexState& state);

/// True iff every CLAP invariant holds against `state`: endpoint classes,
/// layer alternation, distinct nodes, relay typing, segment polarity, witness
/// alternation with start/endpoint parity, and within-layer edge-disjointness.
bool verify_clap(const ClapPath& clap, const DuplexState& state);

struct ApplyReport {
  std::size_t delta_before = 0;
  std::size_t delta_after = 0;
  std::size_t union_before = 0;
  std::size_t union_after = 0;
};

/// Applies the batched symmetric differences of all witnesses. The CLAP is
/// fully validated first; a stale or infeasible CLAP throws
/// std::invalid_argument and leaves the state untouched.
ApplyReport apply_clap(DuplexState& state, const ClapPath& clap);

struct IterationRecord {
  std::size_t clap_length;
  std::size_t delta_before;
  std::size_t delta_after;
  std::size_t union_before;
  std::size_t union_after;
  double elapsed_seconds;
};

struct RunLog {
  std::vector<IterationRecord> iterations;
  std::size_t initial_union = 0;
  std::size_t final_union = 0;
  std::size_t initial_delta = 0;
  std::size_t final_delta = 0;
  /// Set iff the loop stopped because no CLAP exists.
  bool clap_stable = false;
  bool timed_out = false;
  double elapsed_seconds = 0.0;

  /// h̄ over applied CLAPs; 0 when none were applied.
  double mean_clap_length() const;
};

struct ClapOptions {
  std::optional<std::size_t> max_iterations;
  std::optional<std::chrono::steady_clock::time_point> deadline;
  /// Recompute caches from scratch after every application.
  bool check_invariants = false;
};

/// CLAP-S main loop: find and apply shortest CLAPs until none exists.
RunLog clap_s(DuplexState& state, const ClapOptions& options = {});

}  // namespace duplex
