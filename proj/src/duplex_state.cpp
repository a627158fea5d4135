#include "duplex/duplex_state.hpp"

#include <stdexcept>
#include <string>

#include "duplex/rng.hpp"

namespace duplex {

namespace {

std::uint64_t fnv1a(std::uint64_t h, std::uint64_t x) {
  for (int i = 0; i < 8; ++i) {
    h ^= (x >> (8 * i)) & 0xffU;
    h *= 0x100000001b3ULL;
  }
  return h;
}

constexpr std::uint64_t kFnvBasis = 0xcbf29ce484222325ULL;

NodeClass classify(bool in_d1, bool in_d2) {
  if (in_d1 && in_d2) return NodeClass::cds;
  if (in_d1) return NodeClass::dd1;
  if (in_d2) return NodeClass::dd2;
  return NodeClass::cms;
}

}  // namespace

DuplexNetwork::DuplexNetwork(DirectedLayer layer1, DirectedLayer layer2)
    : n_(layer1.node_count()), layers_{std::move(layer1), std::move(layer2)} {
  if (layers_[0].node_count() != layers_[1].node_count())
    throw std::invalid_argument("duplex layers must share a node count (" +
                                std::to_string(layers_[0].node_count()) + " vs " +
                                std::to_string(layers_[1].node_count()) + ")");
  bips_[0] = build_bipartite(layers_[0]);
  bips_[1] = build_bipartite(layers_[1]);
  std::uint64_t h = fnv1a(kFnvBasis, n_);
  for (const auto& layer : layers_) {
    h = fnv1a(h, layer.edge_count());
    for (const auto& e : layer.edges()) h = fnv1a(h, (std::uint64_t{e.source} << 32) | e.target);
  }
  fingerprint_ = h;
}

DuplexState::DuplexState(std::shared_ptr<const DuplexNetwork> net, Matching m1, Matching m2)
    : net_(std::move(net)), m_{std::move(m1), std::move(m2)} {
  if (!net_) throw std::invalid_argument("DuplexState needs a network");
  const std::size_t n = net_->node_count();
  for (Layer l : kLayers) {
    if (!m_[index_of(l)].is_valid_for(net_->bipartite(l)))
      throw std::invalid_argument("matching is not valid for layer " + std::to_string(number_of(l)));
    k_[index_of(l)] = n - m_[index_of(l)].size();
  }
  class_.resize(n);
  for (NodeId v = 0; v < n; ++v) {
    class_[v] = classify(is_driver(Layer::first, v), is_driver(Layer::second, v));
    ++class_count_[static_cast<int>(class_[v])];
  }
}

void DuplexState::reclassify(NodeId v) {
  NodeClass c = classify(is_driver(Layer::first, v), is_driver(Layer::second, v));
  --class_count_[static_cast<int>(class_[v])];
  class_[v] = c;
  ++class_count_[static_cast<int>(c)];
}

std::vector<NodeId> DuplexState::members_of(NodeClass c) const {
  std::vector<NodeId> out;
  out.reserve(class_size(c));
  for (NodeId v = 0; v < class_.size(); ++v)
    if (class_[v] == c) out.push_back(v);
  return out;
}

std::uint64_t DuplexState::fingerprint() const {
  std::uint64_t h = kFnvBasis;
  for (const auto& m : m_)
    for (NodeId u = 0; u < m.node_count(); ++u) h = fnv1a(h, m.mate_of_plus(u));
  return h;
}

void DuplexState::check_invariants() const {
  const std::size_t n = node_count();
  std::array<std::size_t, 4> counts{};
  for (Layer l : kLayers) {
    const auto& m = m_[index_of(l)];
    if (!m.is_valid_for(net_->bipartite(l)))
      throw std::logic_error("layer " + std::to_string(number_of(l)) + " matching is invalid");
    if (m.size() + k_[index_of(l)] != n)
      throw std::logic_error("layer " + std::to_string(number_of(l)) + " budget drifted");
  }
  for (NodeId v = 0; v < n; ++v) {
    NodeClass expect = classify(is_driver(Layer::first, v), is_driver(Layer::second, v));
    if (class_[v] != expect) throw std::logic_error("cached class of node " + std::to_string(v) + " is stale");
    ++counts[static_cast<int>(expect)];
  }
  if (counts != class_count_) throw std::logic_error("cached class counts are stale");
  const std::size_t cds = counts[static_cast<int>(NodeClass::cds)];
  if (cds + counts[static_cast<int>(NodeClass::dd1)] != k_[0] ||
      cds + counts[static_cast<int>(NodeClass::dd2)] != k_[1])
    throw std::logic_error("driver sets disagree with budgets");
}

DuplexState init_state(std::shared_ptr<const DuplexNetwork> net, std::optional<std::uint64_t> seed) {
  std::optional<std::uint64_t> s1, s2;
  if (seed) {
    s1 = derive_seed(*seed, {1});
    s2 = derive_seed(*seed, {2});
  }
  Matching m1 = max_matching(net->bipartite(Layer::first), s1);
  Matching m2 = max_matching(net->bipartite(Layer::second), s2);
  return DuplexState(std::move(net), std::move(m1), std::move(m2));
}

PartitionSnapshot partition(const DuplexState& state) {
  PartitionSnapshot p;
  for (NodeId v = 0; v < state.node_count(); ++v) {
    switch (state.node_class(v)) {
      case NodeClass::cds: p.cds.push_back(v); break;
      case NodeClass::cms: p.cms.push_back(v); break;
      case NodeClass::dd1: p.dd1.push_back(v); break;
      case NodeClass::dd2: p.dd2.push_back(v); break;
    }
  }
  return p;
}

std::size_t difference_mass(const DuplexState& state) {
  return state.class_size(NodeClass::dd1) + state.class_size(NodeClass::dd2);
}

std::size_t union_size(const DuplexState& state) {
  const std::size_t u = state.class_size(NodeClass::cds) + difference_mass(state);
  const std::size_t k = state.budget(Layer::first) + state.budget(Layer::second);
  if (2 * u - difference_mass(state) != k)
    throw std::logic_error("union size identity 2|U| - Delta = k1 + k2 violated");
  return u;
}

}  // namespace duplex
