#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "duplex/duplex_state.hpp"
#include "duplex/graph.hpp"

namespace duplex {

enum class LayerModel { er, ba };

/// Layer models of a synthetic duplex.
enum class ModelPair { er_er, ba_ba, er_ba };

std::string_view to_string(ModelPair p);
/// Accepts "ER-ER", "BA-BA", "ER-BA" (case-insensitive). Throws std::invalid_argument.
ModelPair parse_model_pair(std::string_view s);

/// Directed Erdős-Rényi layer with round(n·k/2) edges drawn uniformly from the
/// ordered pairs u ≠ v. Throws std::invalid_argument if k < 0 or k > n-1.
DirectedLayer gen_er(std::size_t n, double avg_degree, std::uint64_t seed);

/// Barabási-Albert layer with m = round(k/2) links per new node, each edge
/// then given a random direction. Starts from a star on m+1 nodes, so the edge
/// count is (n-m)·m. Throws std::invalid_argument if m < 1 or n < m+1.
DirectedLayer gen_ba(std::size_t n, double avg_degree, std::uint64_t seed);

struct OverlapResult {
  DirectedLayer layer;
  double jaccard = 0.0;
  /// |jaccard - rho| <= 0.01.
  bool within_tolerance = false;
};

/// Second layer with |E₁∩E₂|/|E₁∪E₂| close to rho and |E₂| = |E₁|: keeps r
/// base edges and draws |E₁|-r fresh edges outside the base from `model`.
/// Throws std::invalid_argument if rho is outside [0, 1].
OverlapResult gen_overlapped_layer(const DirectedLayer& base, double rho, LayerModel model, std::uint64_t seed);

struct GenSpec {
  ModelPair models = ModelPair::er_er;
  std::size_t n = 0;
  double avg_degree = 0.0;
  std::optional<double> overlap;
  std::uint64_t seed = 0;
};

struct GeneratedDuplex {
  DuplexNetwork net;
  /// Jaccard similarity of the two edge sets.
  double jaccard = 0.0;
  /// False only when an overlap was requested and missed by more than 0.01.
  bool within_tolerance = true;
};

GeneratedDuplex generate_duplex(const GenSpec& spec);

double jaccard(const DirectedLayer& a, const DirectedLayer& b);

}  // namespace duplex
