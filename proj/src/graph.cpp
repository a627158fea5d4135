#include "duplex/graph.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace duplex {

Adjacency::Adjacency(std::size_t n, std::span<const std::pair<NodeId, NodeId>> arcs)
    : offsets_(n + 1, 0), targets_(arcs.size()) {
  for (auto [from, to] : arcs) ++offsets_[from + 1];
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (auto [from, to] : arcs) targets_[cursor[from]++] = to;
  for (std::size_t v = 0; v < n; ++v)
    std::sort(targets_.begin() + offsets_[v], targets_.begin() + offsets_[v + 1]);
}

DirectedLayer::DirectedLayer(std::size_t n, std::vector<Edge> edges) : n_(n) {
  for (const auto& e : edges) {
    if (e.source >= n || e.target >= n)
      throw std::out_of_range("edge (" + std::to_string(e.source) + "," + std::to_string(e.target) +
                              ") has an endpoint outside 0.." + std::to_string(n) + "-1");
  }
  std::sort(edges.begin(), edges.end());
  auto last = std::unique(edges.begin(), edges.end());
  duplicates_collapsed_ = static_cast<std::size_t>(edges.end() - last);
  edges.erase(last, edges.end());
  edges_ = std::move(edges);

  std::vector<std::pair<NodeId, NodeId>> arcs;
  arcs.reserve(edges_.size());
  for (const auto& e : edges_) arcs.emplace_back(e.source, e.target);
  out_ = Adjacency(n_, arcs);
  for (auto& a : arcs) std::swap(a.first, a.second);
  in_ = Adjacency(n_, arcs);
}

bool DirectedLayer::has_edge(NodeId u, NodeId v) const {
  if (u >= n_ || v >= n_) return false;
  auto nb = out_[u];
  return std::binary_search(nb.begin(), nb.end(), v);
}

BipartiteRep::BipartiteRep(std::size_t n, std::vector<BipartiteEdge> edges)
    : n_(n), edges_(std::move(edges)) {
  std::vector<std::pair<NodeId, NodeId>> arcs;
  arcs.reserve(edges_.size());
  for (const auto& e : edges_) {
    if (e.plus >= n || e.minus >= n) throw std::out_of_range("bipartite edge endpoint out of range");
    arcs.emplace_back(e.plus, e.minus);
  }
  plus_adj_ = Adjacency(n_, arcs);
  for (auto& a : arcs) std::swap(a.first, a.second);
  minus_adj_ = Adjacency(n_, arcs);
}

bool BipartiteRep::has_edge(NodeId plus, NodeId minus) const {
  if (plus >= n_ || minus >= n_) return false;
  auto nb = plus_adj_[plus];
  return std::binary_search(nb.begin(), nb.end(), minus);
}

void Matching::add(BipartiteEdge e) {
  if (mate_of_plus_[e.plus] != kNoNode || mate_of_minus_[e.minus] != kNoNode)
    throw std::logic_error("Matching::add on a saturated vertex");
  mate_of_plus_[e.plus] = e.minus;
  mate_of_minus_[e.minus] = e.plus;
  ++size_;
}

void Matching::remove(BipartiteEdge e) {
  if (mate_of_plus_[e.plus] != e.minus) throw std::logic_error("Matching::remove of a non-member edge");
  mate_of_plus_[e.plus] = kNoNode;
  mate_of_minus_[e.minus] = kNoNode;
  --size_;
}

std::vector<BipartiteEdge> Matching::pairs() const {
  std::vector<BipartiteEdge> out;
  out.reserve(size_);
  for (NodeId u = 0; u < mate_of_plus_.size(); ++u)
    if (mate_of_plus_[u] != kNoNode) out.push_back({u, mate_of_plus_[u]});
  return out;
}

bool Matching::is_valid_for(const BipartiteRep& b) const {
  const std::size_t n = node_count();
  if (n != b.node_count() || mate_of_minus_.size() != n) return false;
  std::size_t plus_count = 0;
  std::size_t minus_count = 0;
  for (NodeId u = 0; u < n; ++u) {
    NodeId v = mate_of_plus_[u];
    if (v == kNoNode) continue;
    ++plus_count;
    if (v >= n || mate_of_minus_[v] != u || !b.has_edge(u, v)) return false;
  }
  for (NodeId v = 0; v < n; ++v) {
    NodeId u = mate_of_minus_[v];
    if (u == kNoNode) continue;
    ++minus_count;
    if (u >= n || mate_of_plus_[u] != v) return false;
  }
  return plus_count == size_ && minus_count == size_;
}

bool DriverSet::contains(NodeId v) const {
  return std::binary_search(members.begin(), members.end(), v);
}

BipartiteRep build_bipartite(const DirectedLayer& layer) {
  std::vector<BipartiteEdge> edges;
  edges.reserve(layer.edge_count());
  for (const auto& e : layer.edges()) edges.push_back({e.source, e.target});
  return BipartiteRep(layer.node_count(), std::move(edges));
}

namespace {

// Hopcroft-Karp with V⁺ as the left side. Phases alternate a BFS layering
// from all free V⁺ vertices with an iterative DFS that extends vertex-disjoint
// shortest augmenting paths.
class HopcroftKarp {
 public:
  HopcroftKarp(const BipartiteRep& b, std::optional<std::uint64_t> seed)
      : n_(b.node_count()), adj_(n_), matching_(n_), dist_(n_), it_(n_) {
    for (NodeId u = 0; u < n_; ++u) {
      auto nb = b.minus_neighbors(u);
      adj_[u].assign(nb.begin(), nb.end());
    }
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), NodeId{0});
    if (seed) {
      std::mt19937_64 rng(*seed);
      for (auto& list : adj_) std::shuffle(list.begin(), list.end(), rng);
      std::shuffle(order_.begin(), order_.end(), rng);
    }
  }

  Matching run() {
    while (layer()) {
      std::fill(it_.begin(), it_.end(), 0);
      for (NodeId u : order_)
        if (!matching_.plus_matched(u)) augment_from(u);
    }
    return std::move(matching_);
  }

 private:
  static constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();

  bool layer() {
    std::vector<NodeId> queue;
    queue.reserve(n_);
    for (NodeId u : order_) {
      if (!matching_.plus_matched(u)) {
        dist_[u] = 0;
        queue.push_back(u);
      } else {
        dist_[u] = kInf;
      }
    }
    bool found = false;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      NodeId u = queue[head];
      for (NodeId v : adj_[u]) {
        NodeId w = matching_.mate_of_minus(v);
        if (w == kNoNode) {
          found = true;
        } else if (dist_[w] == kInf) {
          dist_[w] = dist_[u] + 1;
          queue.push_back(w);
        }
      }
    }
    return found;
  }

  void augment_from(NodeId root) {
    // stack of V⁺ vertices; chosen[i] is the V⁻ vertex taken out of stack[i]
    std::vector<NodeId> stack{root};
    std::vector<NodeId> chosen;
    while (!stack.empty()) {
      NodeId u = stack.back();
      bool advanced = false;
      while (it_[u] < adj_[u].size()) {
        NodeId v = adj_[u][it_[u]++];
        NodeId w = matching_.mate_of_minus(v);
        if (w == kNoNode) {
          chosen.push_back(v);
          for (std::size_t i = stack.size(); i-- > 0;) {
            NodeId plus = stack[i];
            NodeId minus = chosen[i];
            NodeId old = matching_.mate_of_plus(plus);
            if (old != kNoNode) matching_.remove({plus, old});
            if (matching_.minus_matched(minus)) matching_.remove({matching_.mate_of_minus(minus), minus});
            matching_.add({plus, minus});
          }
          return;
        }
        if (dist_[w] == dist_[u] + 1) {
          chosen.push_back(v);
          stack.push_back(w);
          advanced = true;
          break;
        }
      }
      if (!advanced) {
        dist_[u] = kInf;
        stack.pop_back();
        if (!chosen.empty()) chosen.pop_back();
      }
    }
  }

  std::size_t n_;
  std::vector<std::vector<NodeId>> adj_;
  std::vector<NodeId> order_;
  Matching matching_;
  std::vector<std::uint32_t> dist_;
  std::vector<std::size_t> it_;
};

}  // namespace

Matching max_matching(const BipartiteRep& b, std::optional<std::uint64_t> seed) {
  return HopcroftKarp(b, seed).run();
}

DriverSet driver_set(const Matching& m, std::size_t n) {
  DriverSet d;
  d.members.reserve(n - m.size());
  for (NodeId v = 0; v < n; ++v)
    if (!m.minus_matched(v)) d.members.push_back(v);
  return d;
}

}  // namespace duplex
