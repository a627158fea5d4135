#include "duplex/meta.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <stdexcept>

namespace duplex {

std::vector<SymDiffComponent> sym_diff_components(const Matching& m, const Matching& comparator, Layer layer) {
  if (m.node_count() != comparator.node_count())
    throw std::invalid_argument("sym_diff_components: node counts differ");
  if (m.size() != comparator.size())
    throw std::invalid_argument("sym_diff_components: matchings differ in size");
  const std::size_t n = m.node_count();

  // Vertex ids: u⁺ -> u, v⁻ -> n + v. Every vertex has at most one edge from
  // each matching, so at most two incident edges.
  std::vector<BipartiteEdge> edges;
  for (NodeId u = 0; u < n; ++u) {
    NodeId a = m.mate_of_plus(u);
    NodeId b = comparator.mate_of_plus(u);
    if (a == b) continue;
    if (a != kNoNode) edges.push_back({u, a});
    if (b != kNoNode) edges.push_back({u, b});
  }
  std::vector<std::array<std::size_t, 2>> inc(2 * n, {SIZE_MAX, SIZE_MAX});
  std::vector<int> deg(2 * n, 0);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t vid : {std::size_t{edges[i].plus}, n + edges[i].minus}) inc[vid][deg[vid]++] = i;
  }
  auto vertex_of = [n](std::size_t vid) {
    return vid < n ? BipartiteVertex{true, static_cast<NodeId>(vid)}
                   : BipartiteVertex{false, static_cast<NodeId>(vid - n)};
  };
  auto other_end = [&](std::size_t e, std::size_t vid) {
    std::size_t p = edges[e].plus;
    std::size_t q = n + edges[e].minus;
    return vid == p ? q : p;
  };

  std::vector<std::uint8_t> edge_used(edges.size(), 0);
  std::vector<SymDiffComponent> out;
  auto walk = [&](std::size_t start, SymDiffComponent::Kind kind) {
    SymDiffComponent c;
    c.layer = layer;
    c.kind = kind;
    std::size_t cur = start;
    c.vertices.push_back(vertex_of(cur));
    while (true) {
      std::size_t next_edge = SIZE_MAX;
      for (int k = 0; k < deg[cur]; ++k)
        if (!edge_used[inc[cur][k]]) {
          next_edge = inc[cur][k];
          break;
        }
      if (next_edge == SIZE_MAX) break;
      edge_used[next_edge] = 1;
      c.edges.push_back(edges[next_edge]);
      cur = other_end(next_edge, cur);
      if (kind == SymDiffComponent::Kind::cycle && cur == start) break;
      c.vertices.push_back(vertex_of(cur));
    }
    if (kind == SymDiffComponent::Kind::path) {
      for (const auto& v : {c.vertices.front(), c.vertices.back()})
        if (!v.plus) c.vminus_endpoints.push_back(v.node);
    }
    out.push_back(std::move(c));
  };
  for (std::size_t vid = 0; vid < 2 * n; ++vid)
    if (deg[vid] == 1 && !edge_used[inc[vid][0]]) walk(vid, SymDiffComponent::Kind::path);
  for (std::size_t vid = 0; vid < 2 * n; ++vid)
    if (deg[vid] == 2 && !edge_used[inc[vid][0]]) walk(vid, SymDiffComponent::Kind::cycle);
  return out;
}

std::size_t MetaGraph::degree(NodeId v) const {
  std::size_t d = 0;
  for (const auto& e : edges) d += (e.u == v) + (e.v == v);
  return d;
}

std::vector<std::size_t> MetaGraph::incident(NodeId v) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (edges[i].u == v || edges[i].v == v) out.push_back(i);
  return out;
}

MetaGraph build_meta_graph(const DuplexState& state, const DuplexState& comparator) {
  if (state.network().fingerprint() != comparator.network().fingerprint() ||
      state.node_count() != comparator.node_count())
    throw std::invalid_argument("build_meta_graph: states live on different networks");
  for (Layer l : kLayers)
    if (state.budget(l) != comparator.budget(l))
      throw std::invalid_argument("build_meta_graph: budgets differ");

  MetaGraph meta;
  for (Layer l : kLayers) {
    for (auto& c : sym_diff_components(state.matching(l), comparator.matching(l), l)) {
      if (c.kind != SymDiffComponent::Kind::path || c.vminus_endpoints.size() != 2) continue;
      const NodeId x = c.vminus_endpoints[0];
      const NodeId y = c.vminus_endpoints[1];
      MetaEdge e{x, y, l, x, y, 0, {}};
      const bool x_driver = state.is_driver(l, x);
      // Layer 1 segments leave a D₁ node; layer 2 segments enter a D₂ node.
      const bool x_is_origin = (l == Layer::first) ? x_driver : !x_driver;
      if (!x_is_origin) std::swap(e.from, e.to);
      e.admissible_directions = static_cast<int>(alt_path(x, y, l, state).has_value()) +
                                static_cast<int>(alt_path(y, x, l, state).has_value());
      // c.vertices starts at x⁻ (x is the first recorded endpoint)
      e.witness = c.edges;
      if (e.from != x) std::reverse(e.witness.begin(), e.witness.end());
      meta.edges.push_back(std::move(e));
    }
  }
  for (const auto& e : meta.edges) {
    meta.nodes.push_back(e.u);
    meta.nodes.push_back(e.v);
  }
  std::sort(meta.nodes.begin(), meta.nodes.end());
  meta.nodes.erase(std::unique(meta.nodes.begin(), meta.nodes.end()), meta.nodes.end());
  return meta;
}

NodeSignature signature(NodeId v, const DuplexState& state, const DuplexState& comparator) {
  auto bit = [v](const DuplexState& s, Layer l) { return s.is_driver(l, v) ? 1 : 0; };
  return {bit(comparator, Layer::first) - bit(state, Layer::first),
          bit(comparator, Layer::second) - bit(state, Layer::second)};
}

SignatureClass classify(NodeSignature s) {
  static const std::map<std::pair<int, int>, SignatureClass> table{
      {{-1, 0}, SignatureClass::L},      {{0, -1}, SignatureClass::R},       {{1, 0}, SignatureClass::N1},
      {{0, 1}, SignatureClass::N2},      {{1, 1}, SignatureClass::Cplus},    {{-1, -1}, SignatureClass::Cminus},
      {{-1, 1}, SignatureClass::Xplus},  {{1, -1}, SignatureClass::Xminus},  {{0, 0}, SignatureClass::Z}};
  return table.at({s.delta1, s.delta2});
}

std::string_view to_string(SignatureClass c) {
  switch (c) {
    case SignatureClass::L: return "L";
    case SignatureClass::R: return "R";
    case SignatureClass::N1: return "N1";
    case SignatureClass::N2: return "N2";
    case SignatureClass::Cplus: return "C+";
    case SignatureClass::Cminus: return "C-";
    case SignatureClass::Xplus: return "X+";
    case SignatureClass::Xminus: return "X-";
    case SignatureClass::Z: return "Z";
  }
  return "?";
}

std::vector<MetaComponent> meta_components(const MetaGraph& meta) {
  std::map<NodeId, std::vector<std::size_t>> inc;
  for (std::size_t i = 0; i < meta.edges.size(); ++i) {
    inc[meta.edges[i].u].push_back(i);
    inc[meta.edges[i].v].push_back(i);
  }
  std::vector<std::uint8_t> used(meta.edges.size(), 0);
  std::map<NodeId, bool> placed;
  std::vector<MetaComponent> out;

  auto walk = [&](NodeId start, MetaComponent::Kind kind) {
    MetaComponent c;
    c.kind = kind;
    NodeId cur = start;
    c.nodes.push_back(cur);
    placed[cur] = true;
    while (true) {
      std::size_t next = SIZE_MAX;
      for (std::size_t e : inc[cur])
        if (!used[e]) {
          next = e;
          break;
        }
      if (next == SIZE_MAX) break;
      used[next] = 1;
      if (!c.edges.empty() && meta.edges[c.edges.back()].label == meta.edges[next].label)
        c.labels_alternate = false;
      c.edges.push_back(next);
      cur = meta.edges[next].u == cur ? meta.edges[next].v : meta.edges[next].u;
      if (kind == MetaComponent::Kind::cycle && cur == start) {
        if (c.edges.size() > 1 && meta.edges[c.edges.front()].label == meta.edges[c.edges.back()].label)
          c.labels_alternate = false;
        break;
      }
      c.nodes.push_back(cur);
      placed[cur] = true;
    }
    out.push_back(std::move(c));
  };
  for (NodeId v : meta.nodes)
    if (inc[v].size() == 1 && !placed[v]) walk(v, MetaComponent::Kind::path);
  for (NodeId v : meta.nodes)
    if (!placed[v]) walk(v, MetaComponent::Kind::cycle);
  std::sort(out.begin(), out.end(), [](const MetaComponent& a, const MetaComponent& b) {
    return *std::min_element(a.nodes.begin(), a.nodes.end()) < *std::min_element(b.nodes.begin(), b.nodes.end());
  });
  return out;
}

std::vector<ComponentContribution> component_delta_contributions(const MetaGraph& meta, const DuplexState& state,
                                                                 const DuplexState& comparator) {
  auto in_difference = [](const DuplexState& s, NodeId v) {
    auto c = s.node_class(v);
    return (c == NodeClass::dd1 || c == NodeClass::dd2) ? 1L : 0L;
  };
  std::vector<ComponentContribution> out;
  for (auto& comp : meta_components(meta)) {
    ComponentContribution cc;
    for (NodeId v : comp.nodes) cc.contribution += in_difference(state, v) - in_difference(comparator, v);
    if (comp.kind == MetaComponent::Kind::path) {
      cc.endpoint_classes.push_back(classify(signature(comp.nodes.front(), state, comparator)));
      cc.endpoint_classes.push_back(classify(signature(comp.nodes.back(), state, comparator)));
    }
    cc.component = std::move(comp);
    out.push_back(std::move(cc));
  }
  return out;
}

namespace {

std::optional<ClapPath> improving_path(const MetaGraph& meta, const DuplexState& state) {
  std::map<NodeId, std::vector<std::size_t>> out_edges;
  for (std::size_t i = 0; i < meta.edges.size(); ++i) out_edges[meta.edges[i].from].push_back(i);

  // BFS over (node, layer of the edge used to arrive); predecessor is the edge.
  struct Item {
    NodeId node;
    int arrived_by;  // 0 none, 1 or 2
  };
  std::map<std::pair<NodeId, int>, std::pair<std::pair<NodeId, int>, std::size_t>> pred;
  std::deque<Item> queue;
  for (NodeId v : meta.nodes)
    if (state.node_class(v) == NodeClass::dd1) {
      queue.push_back({v, 0});
      pred[{v, 0}] = {{kNoNode, -1}, SIZE_MAX};
    }
  while (!queue.empty()) {
    Item cur = queue.front();
    queue.pop_front();
    for (std::size_t ei : out_edges[cur.node]) {
      const auto& e = meta.edges[ei];
      if (number_of(e.label) == cur.arrived_by) continue;
      std::pair<NodeId, int> key{e.to, number_of(e.label)};
      if (pred.count(key)) continue;
      pred[key] = {{cur.node, cur.arrived_by}, ei};
      if (state.node_class(e.to) == NodeClass::dd2) {
        ClapPath clap;
        auto k = key;
        while (pred[k].second != SIZE_MAX) {
          const auto& me = meta.edges[pred[k].second];
          clap.segments.push_back({me.from, me.to, me.label, me.witness});
          k = pred[k].first;
        }
        std::reverse(clap.segments.begin(), clap.segments.end());
        return clap;
      }
      queue.push_back({e.to, number_of(e.label)});
    }
  }
  return std::nullopt;
}

}  // namespace

CertificateReport certify_optimal_or_find_witness(const DuplexState& state,
                                                  const std::vector<DuplexState>& oracle_states) {
  CertificateReport report;
  report.state_delta = difference_mass(state);
  report.best_delta = report.state_delta;
  for (std::size_t i = 0; i < oracle_states.size(); ++i) {
    std::size_t d = difference_mass(oracle_states[i]);
    if (d < report.best_delta) {
      report.best_delta = d;
      report.best_comparator = i;
    }
  }
  if (!report.best_comparator) return report;
  report.optimal = false;
  MetaGraph meta = build_meta_graph(state, oracle_states[*report.best_comparator]);
  report.witness = improving_path(meta, state);
  report.witness_verified = report.witness && verify_clap(*report.witness, state);
  return report;
}

}  // namespace duplex
