#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "duplex/duplex_state.hpp"
#include "duplex/graph.hpp"

namespace duplex {

struct RsuConfig {
  std::size_t samples_per_layer = 20;
  std::uint64_t seed = 0;
};

struct BaselineResult {
  std::size_t final_union = 0;
  DriverSet d1;
  DriverSet d2;
  double elapsed_seconds = 0.0;
  /// Samples drawn (RSU), moves applied (CLAP-G) or matching pairs scored (exact).
  std::size_t work = 0;
  bool timed_out = false;
};

/// Random Sample & Union. Sample 0 of each layer is the unshuffled
/// Hopcroft-Karp matching; samples 1..K-1 use seeds derived from cfg.seed.
/// Throws std::invalid_argument if K is 0.
BaselineResult rsu(const DuplexNetwork& net, const RsuConfig& cfg,
                   std::optional<std::chrono::steady_clock::time_point> deadline = std::nullopt);

/// Greedy single-segment search: repeatedly applies the first length-1 CLAP
/// found scanning DD₁ ascending (layer 1, then layer 2). Mutates `state`.
BaselineResult clap_g(DuplexState& state,
                      std::optional<std::chrono::steady_clock::time_point> deadline = std::nullopt);

struct EnumerationLimits {
  /// Cap on matchings enumerated per layer and on driver-set pairs scored.
  std::size_t max_pairs = 1'000'000;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

/// All maximum matchings of `b`, or nullopt if there are more than `cap`.
std::optional<std::vector<Matching>> enumerate_maximum_matchings(const BipartiteRep& b, std::size_t cap);

struct ExactResult {
  /// False when the enumeration cap was exceeded; no answer is given then.
  bool feasible = false;
  BaselineResult result;
  /// One optimal pair of matchings.
  std::optional<std::pair<Matching, Matching>> witness;
  std::size_t matchings_layer1 = 0;
  std::size_t matchings_layer2 = 0;
};

/// Exact minimum of |D₁ ∪ D₂| over all pairs of maximum matchings.
ExactResult exact_min_union(const DuplexNetwork& net, const EnumerationLimits& limits = {});

/// Every state (M₁, M₂) with both matchings maximum, one per distinct pair of
/// driver sets. nullopt if the cap is exceeded.
std::optional<std::vector<DuplexState>> enumerate_feasible_states(std::shared_ptr<const DuplexNetwork> net,
                                                                  std::size_t cap);

}  // namespace duplex
