#include "duplex/clap.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <string>

#include "flood.hpp"

namespace duplex {

namespace {

using detail::expands;
using detail::for_each_step;
using detail::is_destination;
using detail::valid_origin;

struct SearchWorkspace {
  detail::IncrementalFlood flood;
  detail::StampSet state_seen;      // (node, next layer) pairs, index 2v + layer index
  std::vector<std::uint64_t> pred;  // packed predecessor state, by state index

  void reset(std::size_t n) {
    flood.reset(n);
    state_seen.reset(2 * n);
    if (pred.size() < 2 * n) pred.resize(2 * n);
  }
};

constexpr std::uint64_t kNoPred = ~std::uint64_t{0};

std::size_t state_index(NodeId v, Layer l) { return 2 * std::size_t{v} + index_of(l); }

bool witness_is_valid(const Segment& seg, const DuplexState& s) {
  const auto& w = seg.witness;
  const auto& b = s.network().bipartite(seg.layer);
  const auto& m = s.matching(seg.layer);
  const std::size_t n = s.node_count();
  if (w.empty() || w.size() % 2 != 0) return false;
  if (seg.from >= n || seg.to >= n) return false;

  // Walk minus -> plus -> minus ... checking shared vertices.
  NodeId cur_minus = seg.from;
  std::vector<NodeId> minus_seen{seg.from};
  std::vector<NodeId> plus_seen;
  for (std::size_t i = 0; i < w.size(); i += 2) {
    const auto& e1 = w[i];
    const auto& e2 = w[i + 1];
    if (e1.minus != cur_minus || e2.plus != e1.plus) return false;
    if (!b.has_edge(e1.plus, e1.minus) || !b.has_edge(e2.plus, e2.minus)) return false;
    plus_seen.push_back(e1.plus);
    cur_minus = e2.minus;
    minus_seen.push_back(cur_minus);
  }
  if (cur_minus != seg.to) return false;
  auto all_distinct = [](std::vector<NodeId> v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
  };
  if (!all_distinct(minus_seen) || !all_distinct(plus_seen)) return false;

  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (m.contains(w[i]) == m.contains(w[i + 1])) return false;
  if (m.contains(w.front()) != m.minus_matched(seg.from)) return false;  // start-parity
  if (m.contains(w.back()) != m.minus_matched(seg.to)) return false;     // endpoint parity
  return true;
}

bool segment_polarity_ok(const Segment& seg, const DuplexState& s) {
  if (seg.layer == Layer::first)
    return s.is_driver(Layer::first, seg.from) && !s.is_driver(Layer::first, seg.to);
  return !s.is_driver(Layer::second, seg.from) && s.is_driver(Layer::second, seg.to);
}

}  // namespace

std::vector<NodeId> ClapPath::node_sequence() const {
  std::vector<NodeId> nodes;
  if (segments.empty()) return nodes;
  nodes.push_back(segments.front().from);
  for (const auto& s : segments) nodes.push_back(s.to);
  return nodes;
}

std::vector<BipartiteEdge> AltReachResult::path_to(NodeId v) const {
  std::vector<BipartiteEdge> rev;
  auto it = parents.find(v);
  while (it != parents.end()) {
    rev.push_back({it->second.via_plus, v});
    rev.push_back({it->second.via_plus, it->second.prev_minus});
    v = it->second.prev_minus;
    it = parents.find(v);
  }
  std::reverse(rev.begin(), rev.end());
  return rev;
}

AltReachResult alt_reach(std::span<const NodeId> sources, Layer layer, const DuplexState& state) {
  const std::size_t n = state.node_count();
  for (NodeId s : sources) {
    if (s >= n || !valid_origin(state, layer, s))
      throw std::invalid_argument("alt_reach: source " + std::to_string(s) +
                                  " violates the segment-origin polarity of layer " +
                                  std::to_string(number_of(layer)));
  }
  AltReachResult out;
  const auto& b = state.network().bipartite(layer);
  const auto& m = state.matching(layer);
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<std::uint8_t> is_source(n, 0);
  std::deque<NodeId> queue;
  for (NodeId s : sources) {
    is_source[s] = 1;
    if (!seen[s]) {
      seen[s] = 1;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    NodeId a = queue.front();
    queue.pop_front();
    for_each_step(b, m, layer, a, [&](NodeId next, NodeId via) {
      if (seen[next]) return;
      seen[next] = 1;
      out.parents.emplace(next, AltReachResult::Step{a, via});
      if (is_destination(m, layer, next) && !is_source[next]) out.reachable.push_back(next);
      if (expands(m, next)) queue.push_back(next);
    });
  }
  std::sort(out.reachable.begin(), out.reachable.end());
  return out;
}

std::optional<std::vector<BipartiteEdge>> alt_path(NodeId from, NodeId to, Layer layer,
                                                   const DuplexState& state) {
  const std::size_t n = state.node_count();
  if (from >= n || to >= n || from == to) return std::nullopt;
  if (!valid_origin(state, layer, from)) return std::nullopt;
  const auto& m = state.matching(layer);
  if (!is_destination(m, layer, to)) return std::nullopt;
  const auto& b = state.network().bipartite(layer);

  std::vector<NodeId> prev(n, kNoNode);
  std::vector<NodeId> via(n, kNoNode);
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<NodeId> queue{from};
  seen[from] = 1;
  bool found = false;
  for (std::size_t head = 0; head < queue.size() && !found; ++head) {
    NodeId a = queue[head];
    for_each_step(b, m, layer, a, [&](NodeId next, NodeId x) {
      if (found || seen[next]) return;
      seen[next] = 1;
      prev[next] = a;
      via[next] = x;
      if (next == to) {
        found = true;
        return;
      }
      if (expands(m, next)) queue.push_back(next);
    });
  }
  if (!found) return std::nullopt;
  std::vector<BipartiteEdge> rev;
  for (NodeId v = to; v != from; v = prev[v]) {
    rev.push_back({via[v], v});
    rev.push_back({via[v], prev[v]});
  }
  std::reverse(rev.begin(), rev.end());
  return rev;
}

std::optional<ClapPath> find_shortest_clap(const DuplexState& state) {
  if (state.class_size(NodeClass::dd1) == 0 || state.class_size(NodeClass::dd2) == 0) return std::nullopt;
  const std::size_t n = state.node_count();
  thread_local SearchWorkspace ws;
  ws.reset(n);

  struct QueuedState {
    NodeId node;
    Layer layer;
  };
  std::deque<QueuedState> queue;
  for (NodeId s : state.members_of(NodeClass::dd1)) {
    for (Layer l : kLayers) {
      ws.state_seen.set(state_index(s, l));
      ws.pred[state_index(s, l)] = kNoPred;
      queue.push_back({s, l});
    }
  }

  while (!queue.empty()) {
    auto [u, layer] = queue.front();
    queue.pop_front();
    const auto& fresh = ws.flood.flood(state, layer, u);

    NodeId target = kNoNode;
    for (NodeId v : fresh) {
      if (state.node_class(v) == NodeClass::dd2) {
        target = v;  // fresh is sorted: smallest id wins
        break;
      }
    }
    if (target != kNoNode) {
      // Unroll the segment-level chain, then build witnesses lazily.
      std::vector<std::pair<NodeId, NodeId>> hops;  // (from, to) in reverse order
      std::vector<Layer> hop_layers;
      hops.emplace_back(u, target);
      hop_layers.push_back(layer);
      NodeId x = u;
      Layer xl = layer;
      while (ws.pred[state_index(x, xl)] != kNoPred) {
        std::uint64_t packed = ws.pred[state_index(x, xl)];
        auto p = static_cast<NodeId>(packed >> 1);
        Layer pl = (packed & 1U) ? Layer::second : Layer::first;
        hops.emplace_back(p, x);
        hop_layers.push_back(pl);
        x = p;
        xl = pl;
      }
      ClapPath clap;
      for (std::size_t i = hops.size(); i-- > 0;) {
        Segment seg{hops[i].first, hops[i].second, hop_layers[i], {}};
        auto w = alt_path(seg.from, seg.to, seg.layer, state);
        if (!w) throw std::logic_error("find_shortest_clap: segment lost its witness");
        seg.witness = std::move(*w);
        clap.segments.push_back(std::move(seg));
      }
      assert(verify_clap(clap, state));
      return clap;
    }

    const NodeClass relay = layer == Layer::first ? NodeClass::cms : NodeClass::cds;
    const Layer next_layer = other(layer);
    for (NodeId v : fresh) {
      if (state.node_class(v) != relay) continue;
      if (!ws.state_seen.insert(state_index(v, next_layer))) continue;
      ws.pred[state_index(v, next_layer)] = (std::uint64_t{u} << 1) | static_cast<std::uint64_t>(index_of(layer));
      queue.push_back({v, next_layer});
    }
  }
  return std::nullopt;
}

bool verify_clap(const ClapPath& clap, const DuplexState& state) {
  const auto& segs = clap.segments;
  const std::size_t n = state.node_count();
  if (segs.empty()) return false;
  for (const auto& s : segs)
    if (s.from >= n || s.to >= n) return false;
  if (state.node_class(segs.front().from) != NodeClass::dd1) return false;
  if (state.node_class(segs.back().to) != NodeClass::dd2) return false;
  for (std::size_t i = 0; i + 1 < segs.size(); ++i) {
    if (segs[i].to != segs[i + 1].from) return false;
    if (segs[i].layer == segs[i + 1].layer) return false;
    const NodeClass want = segs[i].layer == Layer::first ? NodeClass::cms : NodeClass::cds;
    if (state.node_class(segs[i].to) != want) return false;
  }
  auto nodes = clap.node_sequence();
  std::sort(nodes.begin(), nodes.end());
  if (std::adjacent_find(nodes.begin(), nodes.end()) != nodes.end()) return false;

  std::array<std::vector<BipartiteEdge>, 2> used;
  for (const auto& s : segs) {
    if (!segment_polarity_ok(s, state) || !witness_is_valid(s, state)) return false;
    auto& u = used[index_of(s.layer)];
    u.insert(u.end(), s.witness.begin(), s.witness.end());
  }
  for (auto& u : used) {
    std::sort(u.begin(), u.end());
    if (std::adjacent_find(u.begin(), u.end()) != u.end()) return false;
  }
  return true;
}

ApplyReport apply_clap(DuplexState& state, const ClapPath& clap) {
  if (!verify_clap(clap, state))
    throw std::invalid_argument("apply_clap: CLAP is stale or infeasible for the current state");

  ApplyReport report;
  report.delta_before = difference_mass(state);
  report.union_before = union_size(state);
  const std::size_t k1 = state.budget(Layer::first);
  const std::size_t k2 = state.budget(Layer::second);

  StateEditor edit(state);
  for (const auto& seg : clap.segments) {
    Matching& m = edit.matching(seg.layer);
    std::vector<BipartiteEdge> incoming;
    for (const auto& e : seg.witness) {
      if (m.contains(e))
        m.remove(e);
      else
        incoming.push_back(e);
    }
    for (const auto& e : incoming) m.add(e);
    edit.touch(seg.from);
    edit.touch(seg.to);
  }

  report.delta_after = difference_mass(state);
  report.union_after = union_size(state);
  if (state.drivers(Layer::first).size() != k1 || state.drivers(Layer::second).size() != k2 ||
      report.delta_after + 2 != report.delta_before || report.union_after + 1 != report.union_before)
    throw std::logic_error("apply_clap: gain contract violated");
#ifndef NDEBUG
  state.check_invariants();
#endif
  return report;
}

double RunLog::mean_clap_length() const {
  if (iterations.empty()) return 0.0;
  double total = 0.0;
  for (const auto& it : iterations) total += static_cast<double>(it.clap_length);
  return total / static_cast<double>(iterations.size());
}

RunLog clap_s(DuplexState& state, const ClapOptions& options) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  RunLog log;
  log.initial_union = union_size(state);
  log.initial_delta = difference_mass(state);
  while (true) {
    if (options.max_iterations && log.iterations.size() >= *options.max_iterations) break;
    if (options.deadline && clock::now() >= *options.deadline) {
      log.timed_out = true;
      break;
    }
    const auto t0 = clock::now();
    auto clap = find_shortest_clap(state);
    if (!clap) {
      log.clap_stable = true;
      break;
    }
    ApplyReport r = apply_clap(state, *clap);
    if (options.check_invariants) state.check_invariants();
    log.iterations.push_back({clap->length(), r.delta_before, r.delta_after, r.union_before, r.union_after,
                              std::chrono::duration<double>(clock::now() - t0).count()});
  }
  log.final_union = union_size(state);
  log.final_delta = difference_mass(state);
  log.elapsed_seconds = std::chrono::duration<double>(clock::now() - start).count();
  return log;
}

}  // namespace duplex
