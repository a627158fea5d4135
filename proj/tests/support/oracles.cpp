#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace oracle {

namespace {

void matchings_rec(const BipartiteRep& b, NodeId plus, std::vector<char>& used_minus,
                   std::vector<BipartiteEdge>& cur, std::size_t size,
                   std::vector<std::vector<BipartiteEdge>>& out) {
  const std::size_t n = b.node_count();
  if (cur.size() == size) {
    out.push_back(cur);
    return;
  }
  if (plus == n || cur.size() + (n - plus) < size) return;
  matchings_rec(b, plus + 1, used_minus, cur, size, out);
  for (const auto& e : b.edges()) {
    if (e.plus != plus || used_minus[e.minus]) continue;
    used_minus[e.minus] = 1;
    cur.push_back(e);
    matchings_rec(b, plus + 1, used_minus, cur, size, out);
    cur.pop_back();
    used_minus[e.minus] = 0;
  }
}

std::vector<std::vector<BipartiteEdge>> incident_edges(const BipartiteRep& b, bool by_minus) {
  std::vector<std::vector<BipartiteEdge>> inc(b.node_count());
  for (const auto& e : b.edges()) inc[by_minus ? e.minus : e.plus].push_back(e);
  return inc;
}

}  // namespace

std::size_t max_matching_size(const BipartiteRep& b) {
  for (std::size_t s = b.node_count();; --s) {
    if (!matchings_of_size(b, s).empty()) return s;
    if (s == 0) return 0;
  }
}

std::vector<std::vector<BipartiteEdge>> matchings_of_size(const BipartiteRep& b, std::size_t size) {
  std::vector<std::vector<BipartiteEdge>> out;
  std::vector<char> used(b.node_count(), 0);
  std::vector<BipartiteEdge> cur;
  matchings_rec(b, 0, used, cur, size, out);
  return out;
}

Matching to_matching(const std::vector<BipartiteEdge>& edges, std::size_t n) {
  Matching m(n);
  for (const auto& e : edges) m.add(e);
  return m;
}

bool has_augmenting_path(const BipartiteRep& b, const Matching& m) {
  // Alternating path from a free V⁺ vertex to a free V⁻ vertex.
  const std::size_t n = b.node_count();
  auto by_plus = incident_edges(b, false);
  std::vector<char> seen_minus(n, 0);
  std::function<bool(NodeId)> dfs = [&](NodeId plus) {
    for (const auto& e : by_plus[plus]) {
      if (m.contains(e) || seen_minus[e.minus]) continue;
      seen_minus[e.minus] = 1;
      if (!m.minus_matched(e.minus)) return true;
      if (dfs(m.mate_of_minus(e.minus))) return true;
    }
    return false;
  };
  for (NodeId u = 0; u < n; ++u) {
    if (m.plus_matched(u)) continue;
    std::fill(seen_minus.begin(), seen_minus.end(), 0);
    if (dfs(u)) return true;
  }
  return false;
}

std::size_t min_union(const DuplexNetwork& net) {
  const std::size_t n = net.node_count();
  std::array<std::set<std::vector<NodeId>>, 2> driver_sets;
  for (Layer l : duplex::kLayers) {
    const auto& b = net.bipartite(l);
    for (const auto& edges : matchings_of_size(b, max_matching_size(b))) {
      std::vector<char> matched(n, 0);
      for (const auto& e : edges) matched[e.minus] = 1;
      std::vector<NodeId> d;
      for (NodeId v = 0; v < n; ++v)
        if (!matched[v]) d.push_back(v);
      driver_sets[duplex::index_of(l)].insert(d);
    }
  }
  std::size_t best = n + 1;
  for (const auto& a : driver_sets[0])
    for (const auto& c : driver_sets[1]) {
      std::vector<NodeId> u;
      std::set_union(a.begin(), a.end(), c.begin(), c.end(), std::back_inserter(u));
      best = std::min(best, u.size());
    }
  return best;
}

std::vector<Reach> segment_targets(const DuplexState& s, Layer layer, NodeId from) {
  const auto& b = s.network().bipartite(layer);
  const auto& m = s.matching(layer);
  const std::size_t n = s.node_count();
  std::vector<Reach> out;
  const bool origin_ok = layer == Layer::first ? !m.minus_matched(from) : m.minus_matched(from);
  if (!origin_ok) return out;

  auto by_minus = incident_edges(b, true);
  auto by_plus = incident_edges(b, false);
  std::vector<char> on_minus(n, 0), on_plus(n, 0);
  std::vector<char> found(n, 0);
  std::vector<BipartiteEdge> path;
  on_minus[from] = 1;

  // at_minus: current end is a V⁻ vertex `v`; want_matched: required
  // membership of the next edge.
  std::function<void(bool, NodeId, bool)> dfs = [&](bool at_minus, NodeId v, bool want_matched) {
    if (at_minus && v != from && !path.empty()) {
      const bool last_in = m.contains(path.back());
      const bool parity_ok = last_in == m.minus_matched(v);
      const bool polarity_ok = layer == Layer::first ? m.minus_matched(v) : !m.minus_matched(v);
      if (parity_ok && polarity_ok && !found[v]) {
        found[v] = 1;
        out.push_back({v, path});
      }
    }
    const auto& inc = at_minus ? by_minus[v] : by_plus[v];
    for (const auto& e : inc) {
      if (m.contains(e) != want_matched) continue;
      if (at_minus) {
        if (on_plus[e.plus]) continue;
        on_plus[e.plus] = 1;
        path.push_back(e);
        dfs(false, e.plus, !want_matched);
        path.pop_back();
        on_plus[e.plus] = 0;
      } else {
        if (on_minus[e.minus]) continue;
        on_minus[e.minus] = 1;
        path.push_back(e);
        dfs(true, e.minus, !want_matched);
        path.pop_back();
        on_minus[e.minus] = 0;
      }
    }
  };
  dfs(true, from, m.minus_matched(from));
  std::sort(out.begin(), out.end(), [](const Reach& a, const Reach& c) { return a.to < c.to; });
  return out;
}

std::vector<duplex::ClapPath> all_claps(const DuplexState& s, std::size_t max_len) {
  using duplex::NodeClass;
  std::vector<duplex::ClapPath> out;
  const std::size_t n = s.node_count();
  std::vector<char> used(n, 0);
  duplex::ClapPath cur;
  std::function<void(NodeId, Layer)> dfs = [&](NodeId u, Layer layer) {
    if (cur.segments.size() >= max_len) return;
    for (auto& r : segment_targets(s, layer, u)) {
      if (used[r.to]) continue;
      const NodeClass c = s.node_class(r.to);
      cur.segments.push_back({u, r.to, layer, r.witness});
      if (c == NodeClass::dd2) out.push_back(cur);
      const NodeClass relay = layer == Layer::first ? NodeClass::cms : NodeClass::cds;
      if (c == relay) {
        used[r.to] = 1;
        dfs(r.to, duplex::other(layer));
        used[r.to] = 0;
      }
      cur.segments.pop_back();
    }
  };
  for (NodeId v = 0; v < n; ++v) {
    if (s.node_class(v) != NodeClass::dd1) continue;
    used[v] = 1;
    for (Layer l : duplex::kLayers) dfs(v, l);
    used[v] = 0;
  }
  return out;
}

std::optional<std::size_t> shortest_clap_length(const DuplexState& s) {
  std::optional<std::size_t> best;
  for (const auto& c : all_claps(s, s.node_count()))
    if (!best || c.length() < *best) best = c.length();
  return best;
}

DirectedLayer random_layer(std::size_t n, double p, std::mt19937_64& rng, bool self_loops) {
  std::bernoulli_distribution coin(p);
  std::vector<duplex::Edge> edges;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = 0; v < n; ++v)
      if ((u != v || self_loops) && coin(rng)) edges.push_back({u, v});
  return DirectedLayer(n, std::move(edges));
}

std::shared_ptr<const DuplexNetwork> make_net(DirectedLayer a, DirectedLayer b) {
  return std::make_shared<const DuplexNetwork>(std::move(a), std::move(b));
}

DuplexState random_feasible_state(std::shared_ptr<const DuplexNetwork> net, std::mt19937_64& rng) {
  std::array<Matching, 2> ms;
  for (Layer l : duplex::kLayers) {
    const auto& b = net->bipartite(l);
    auto all = matchings_of_size(b, max_matching_size(b));
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    ms[duplex::index_of(l)] = to_matching(all[pick(rng)], net->node_count());
  }
  return DuplexState(net, ms[0], ms[1]);
}

}  // namespace oracle
