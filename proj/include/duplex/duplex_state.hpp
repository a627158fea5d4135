#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "duplex/graph.hpp"

namespace duplex {

enum class Layer : std::uint8_t { first = 1, second = 2 };

constexpr int index_of(Layer l) { return l == Layer::first ? 0 : 1; }
constexpr int number_of(Layer l) { return static_cast<int>(l); }
constexpr Layer other(Layer l) { return l == Layer::first ? Layer::second : Layer::first; }
inline constexpr std::array<Layer, 2> kLayers{Layer::first, Layer::second};

/// Two directed layers on a common node set, with their bipartite
/// representations. Immutable once built.
class DuplexNetwork {
 public:
  /// Throws std::invalid_argument if the layers disagree on node count.
  DuplexNetwork(DirectedLayer layer1, DirectedLayer layer2);

  std::size_t node_count() const { return n_; }
  const DirectedLayer& layer(Layer l) const { return layers_[index_of(l)]; }
  const BipartiteRep& bipartite(Layer l) const { return bips_[index_of(l)]; }
  /// Order-sensitive hash of both edge lists.
  std::uint64_t fingerprint() const { return fingerprint_; }

 private:
  std::size_t n_;
  std::array<DirectedLayer, 2> layers_;
  std::array<BipartiteRep, 2> bips_;
  std::uint64_t fingerprint_;
};

/// Consistently Driven / Consistently Matched / layer-1-only / layer-2-only.
enum class NodeClass : std::uint8_t { cds, cms, dd1, dd2 };

struct PartitionSnapshot {
  std::vector<NodeId> cds;
  std::vector<NodeId> cms;
  std::vector<NodeId> dd1;
  std::vector<NodeId> dd2;
};

/// The mutable pair of matchings (M₁, M₂) with cached driver membership and
/// node classes. Budgets k₁, k₂ are fixed at construction.
class DuplexState {
 public:
  /// Builds a state from explicit matchings; budgets are n - |M_l|.
  /// Throws std::invalid_argument if a matching is not valid for its layer.
  DuplexState(std::shared_ptr<const DuplexNetwork> net, Matching m1, Matching m2);

  const DuplexNetwork& network() const { return *net_; }
  const std::shared_ptr<const DuplexNetwork>& network_ptr() const { return net_; }
  std::size_t node_count() const { return net_->node_count(); }

  const Matching& matching(Layer l) const { return m_[index_of(l)]; }
  std::size_t budget(Layer l) const { return k_[index_of(l)]; }
  bool is_driver(Layer l, NodeId v) const { return !m_[index_of(l)].minus_matched(v); }
  DriverSet drivers(Layer l) const { return driver_set(m_[index_of(l)], node_count()); }

  NodeClass node_class(NodeId v) const { return class_[v]; }
  std::size_t class_size(NodeClass c) const { return class_count_[static_cast<int>(c)]; }

  /// Nodes of one class in ascending order.
  std::vector<NodeId> members_of(NodeClass c) const;

  /// Hash of both mate arrays; equal states hash equal.
  std::uint64_t fingerprint() const;

  /// Recomputes every cache from the matchings and throws std::logic_error on
  /// any mismatch or violated state invariant.
  void check_invariants() const;

  friend bool operator==(const DuplexState& a, const DuplexState& b) {
    return a.net_ == b.net_ && a.m_ == b.m_;
  }

 private:
  friend class StateEditor;

  void reclassify(NodeId v);

  std::shared_ptr<const DuplexNetwork> net_;
  std::array<Matching, 2> m_;
  std::array<std::size_t, 2> k_;
  std::vector<NodeClass> class_;
  std::array<std::size_t, 4> class_count_{};
};

/// Low-level mutation hook used by the CLAP engine. Applies a symmetric
/// difference on one layer's matching and refreshes the classes of the
/// touched endpoints only.
class StateEditor {
 public:
  explicit StateEditor(DuplexState& s) : s_(s) {}
  Matching& matching(Layer l) { return s_.m_[index_of(l)]; }
  void touch(NodeId v) { s_.reclassify(v); }

 private:
  DuplexState& s_;
};

/// Initial state from (optionally seeded) maximum matchings of both layers;
/// budgets are the per-layer minima.
DuplexState init_state(std::shared_ptr<const DuplexNetwork> net,
                       std::optional<std::uint64_t> seed = std::nullopt);

PartitionSnapshot partition(const DuplexState& state);

/// Δ = |DD₁| + |DD₂|.
std::size_t difference_mass(const DuplexState& state);

/// |D₁ ∪ D₂|; throws std::logic_error if 2|U| − Δ ≠ k₁ + k₂.
std::size_t union_size(const DuplexState& state);

}  // namespace duplex
