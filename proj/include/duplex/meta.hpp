#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "duplex/clap.hpp"
#include "duplex/duplex_state.hpp"

namespace duplex {

/// Vertex of a bipartite representation: the V⁺ or V⁻ copy of a node.
struct BipartiteVertex {
  bool plus;
  NodeId node;
  friend bool operator==(const BipartiteVertex&, const BipartiteVertex&) = default;
};

/// Connected component of the symmetric-difference graph M △ M̂ of one layer.
struct SymDiffComponent {
  enum class Kind { path, cycle };

  Layer layer = Layer::first;
  Kind kind = Kind::path;
  /// Walk order; for cycles the first vertex is not repeated at the end.
  std::vector<BipartiteVertex> vertices;
  /// Edges in walk order; consecutive edges alternate between the matchings.
  std::vector<BipartiteEdge> edges;
  /// Endpoints of a path that lie in V⁻. Two for the paths that become
  /// meta-graph edges; one only when the matchings are not maximum.
  std::vector<NodeId> vminus_endpoints;
};

/// Components of m △ comparator. Throws std::invalid_argument when the two
/// matchings differ in size or node count.
std::vector<SymDiffComponent> sym_diff_components(const Matching& m, const Matching& comparator,
                                                  Layer layer = Layer::first);

/// Edge {u, v} of the layer-labeled meta-graph K, oriented as the admissible
/// segment (from →ℓ to) of the current state.
struct MetaEdge {
  NodeId u;
  NodeId v;
  Layer label;
  NodeId from;
  NodeId to;
  /// Number of directions (0, 1 or 2) that pass the admissibility test.
  int admissible_directions;
  /// The H_ℓ path, oriented from `from`⁻ to `to`⁻; an M_ℓ-alternating witness.
  std::vector<BipartiteEdge> witness;
};

struct MetaGraph {
  std::vector<NodeId> nodes;
  std::vector<MetaEdge> edges;

  std::size_t degree(NodeId v) const;
  /// Incident edge indices of v.
  std::vector<std::size_t> incident(NodeId v) const;
};

/// Builds K from the path components of H₁ and H₂ and orients every edge.
/// Throws std::invalid_argument if the states do not share a network and budgets.
MetaGraph build_meta_graph(const DuplexState& state, const DuplexState& comparator);

/// δ(v) = (δ₁, δ₂), δ_ℓ = [v ∈ D̂_ℓ] − [v ∈ D_ℓ].
struct NodeSignature {
  int delta1 = 0;
  int delta2 = 0;
  friend bool operator==(const NodeSignature&, const NodeSignature&) = default;
};

enum class SignatureClass { L, R, N1, N2, Cplus, Cminus, Xplus, Xminus, Z };

NodeSignature signature(NodeId v, const DuplexState& state, const DuplexState& comparator);
SignatureClass classify(NodeSignature s);
std::string_view to_string(SignatureClass c);

struct MetaComponent {
  enum class Kind { path, cycle };
  Kind kind = Kind::path;
  /// Node order along the component; paths start and end at degree-1 nodes.
  std::vector<NodeId> nodes;
  std::vector<std::size_t> edges;
  /// Labels alternate along the walk.
  bool labels_alternate = true;
};

/// Connected components of K in ascending order of their smallest node.
std::vector<MetaComponent> meta_components(const MetaGraph& meta);

struct ComponentContribution {
  MetaComponent component;
  /// Endpoint signature classes for paths (two entries), empty for cycles.
  std::vector<SignatureClass> endpoint_classes;
  /// Decrease of Δ credited to this component: Σ over its nodes of
  /// ([v ∈ DD₁ ∪ DD₂ now] − [v ∈ DD̂₁ ∪ DD̂₂]).
  long contribution = 0;
};

std::vector<ComponentContribution> component_delta_contributions(const MetaGraph& meta, const DuplexState& state,
                                                                 const DuplexState& comparator);

struct CertificateReport {
  /// True iff no comparator has a smaller Δ than the state.
  bool optimal = true;
  std::size_t state_delta = 0;
  std::size_t best_delta = 0;
  std::optional<std::size_t> best_comparator;
  /// Directed label-alternating DD₁ → DD₂ path in the oriented meta-graph of
  /// the best comparator, translated into a CLAP.
  std::optional<ClapPath> witness;
  bool witness_verified = false;
};

/// Checks the state against every comparator; if one improves Δ, extracts an
/// improving CLAP from the oriented meta-graph and verifies it.
CertificateReport certify_optimal_or_find_witness(const DuplexState& state,
                                                  const std::vector<DuplexState>& oracle_states);

}  // namespace duplex
