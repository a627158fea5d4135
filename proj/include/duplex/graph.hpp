#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace duplex {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

/// Directed edge (source, target) on dense node ids.
struct Edge {
  NodeId source;
  NodeId target;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Edge (u⁺, v⁻) of the bipartite representation. `plus` indexes the out-copy
/// V⁺, `minus` the in-copy V⁻ of the same node set.
struct BipartiteEdge {
  NodeId plus;
  NodeId minus;

  friend bool operator==(const BipartiteEdge&, const BipartiteEdge&) = default;
  friend auto operator<=>(const BipartiteEdge&, const BipartiteEdge&) = default;
};

/// Compressed adjacency: neighbors of vertex v are
/// targets[offsets[v] .. offsets[v+1]).
class Adjacency {
 public:
  Adjacency() = default;
  Adjacency(std::size_t n, std::span<const std::pair<NodeId, NodeId>> arcs);

  std::span<const NodeId> operator[](NodeId v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t size() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
};

/// One layer of a duplex: a simple directed graph on 0..n-1. Self-loops are
/// kept, duplicate edges are collapsed at construction.
class DirectedLayer {
 public:
  DirectedLayer() = default;
  /// Throws std::out_of_range if an endpoint is >= n.
  DirectedLayer(std::size_t n, std::vector<Edge> edges);

  std::size_t node_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  /// Sorted by (source, target), no duplicates.
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const NodeId> out_neighbors(NodeId v) const { return out_[v]; }
  std::span<const NodeId> in_neighbors(NodeId v) const { return in_[v]; }
  std::size_t duplicates_collapsed() const { return duplicates_collapsed_; }
  bool has_edge(NodeId u, NodeId v) const;

  friend bool operator==(const DirectedLayer& a, const DirectedLayer& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  Adjacency out_;
  Adjacency in_;
  std::size_t duplicates_collapsed_ = 0;
};

/// Bipartite representation B = (V⁺ ∪ V⁻, E_B) of a directed layer.
class BipartiteRep {
 public:
  BipartiteRep() = default;
  BipartiteRep(std::size_t n, std::vector<BipartiteEdge> edges);

  std::size_t node_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<BipartiteEdge>& edges() const { return edges_; }
  /// V⁻ neighbors of u⁺, ascending.
  std::span<const NodeId> minus_neighbors(NodeId plus) const { return plus_adj_[plus]; }
  /// V⁺ neighbors of v⁻, ascending.
  std::span<const NodeId> plus_neighbors(NodeId minus) const { return minus_adj_[minus]; }
  bool has_edge(NodeId plus, NodeId minus) const;

 private:
  std::size_t n_ = 0;
  std::vector<BipartiteEdge> edges_;
  Adjacency plus_adj_;
  Adjacency minus_adj_;
};

/// Matching stored as two mutually inverse mate arrays.
class Matching {
 public:
  Matching() = default;
  explicit Matching(std::size_t n)
      : mate_of_plus_(n, kNoNode), mate_of_minus_(n, kNoNode) {}

  std::size_t node_count() const { return mate_of_plus_.size(); }
  std::size_t size() const { return size_; }

  NodeId mate_of_plus(NodeId plus) const { return mate_of_plus_[plus]; }
  NodeId mate_of_minus(NodeId minus) const { return mate_of_minus_[minus]; }
  bool plus_matched(NodeId plus) const { return mate_of_plus_[plus] != kNoNode; }
  bool minus_matched(NodeId minus) const { return mate_of_minus_[minus] != kNoNode; }
  bool contains(BipartiteEdge e) const { return mate_of_plus_[e.plus] == e.minus; }

  /// Both endpoints must be free.
  void add(BipartiteEdge e);
  /// The edge must be present.
  void remove(BipartiteEdge e);

  /// Matched pairs in ascending order of the V⁺ endpoint.
  std::vector<BipartiteEdge> pairs() const;

  /// True iff mate arrays are inverse, size is consistent and every pair is
  /// an edge of `b`.
  bool is_valid_for(const BipartiteRep& b) const;

  friend bool operator==(const Matching&, const Matching&) = default;

 private:
  std::vector<NodeId> mate_of_plus_;
  std::vector<NodeId> mate_of_minus_;
  std::size_t size_ = 0;
};

/// Sorted member list of a driver set D(M) = { v : v⁻ unmatched }.
struct DriverSet {
  std::vector<NodeId> members;

  std::size_t size() const { return members.size(); }
  bool contains(NodeId v) const;
  friend bool operator==(const DriverSet&, const DriverSet&) = default;
};

BipartiteRep build_bipartite(const DirectedLayer& layer);

/// Hopcroft-Karp maximum matching. With a seed, the adjacency order and the
/// free-vertex scan order are shuffled so different seeds can land on
/// different maximum matchings of the same size.
Matching max_matching(const BipartiteRep& b, std::optional<std::uint64_t> seed = std::nullopt);

DriverSet driver_set(const Matching& m, std::size_t n);

}  // namespace duplex
