#pragma once

#include <memory>
#include <vector>

#include "duplex/duplex_state.hpp"

namespace fixtures {

using duplex::BipartiteEdge;
using duplex::DirectedLayer;
using duplex::DuplexNetwork;
using duplex::DuplexState;
using duplex::Edge;
using duplex::Matching;

inline Matching matching_of(std::size_t n, const std::vector<BipartiteEdge>& pairs) {
  Matching m(n);
  for (auto e : pairs) m.add(e);
  return m;
}

inline std::shared_ptr<const DuplexNetwork> net_of(std::size_t n, std::vector<Edge> e1, std::vector<Edge> e2) {
  return std::make_shared<const DuplexNetwork>(DirectedLayer(n, std::move(e1)), DirectedLayer(n, std::move(e2)));
}

// Six nodes, budgets (2, 2), D₁ = {1,2}, D₂ = {4,5}: |U| = 4, optimum 2.
inline std::shared_ptr<const DuplexNetwork> two_step_net() {
  return net_of(6, {{0, 3}, {0, 1}, {1, 4}, {1, 2}, {2, 5}, {5, 0}}, {{0, 1}, {1, 2}, {2, 0}, {4, 3}, {4, 5}});
}

inline DuplexState two_step_state() {
  auto net = two_step_net();
  return DuplexState(net, matching_of(6, {{0, 3}, {1, 4}, {2, 5}, {5, 0}}),
                     matching_of(6, {{0, 1}, {1, 2}, {2, 0}, {4, 3}}));
}

// Five nodes whose only CLAPs have three segments: 2 →¹ 1 →² 0 →¹ 3, relays
// 1 ∈ CMS and 0 ∈ CDS.
inline DuplexState three_segment_state() {
  auto net = net_of(5, {{2, 4}, {3, 1}, {3, 2}, {3, 4}, {4, 0}, {4, 3}}, {{0, 2}, {2, 0}, {2, 1}});
  return DuplexState(net, matching_of(5, {{2, 4}, {3, 1}, {4, 3}}), matching_of(5, {{0, 2}, {2, 1}}));
}

// k disjoint gadgets {a, b, c} with edges a→b, a→c in both layers; layer 1
// matches a→b, layer 2 matches a→c. Each gadget holds one length-1 CLAP.
inline DuplexState gadget_state(std::size_t k) {
  const std::size_t n = 3 * k;
  std::vector<Edge> edges;
  std::vector<BipartiteEdge> m1, m2;
  for (duplex::NodeId g = 0; g < k; ++g) {
    duplex::NodeId a = 3 * g, b = a + 1, c = a + 2;
    edges.push_back({a, b});
    edges.push_back({a, c});
    m1.push_back({a, b});
    m2.push_back({a, c});
  }
  auto net = net_of(n, edges, edges);
  return DuplexState(net, matching_of(n, m1), matching_of(n, m2));
}

}  // namespace fixtures
