#include "duplex/baselines.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <stdexcept>

#include "duplex/clap.hpp"
#include "duplex/rng.hpp"
#include "flood.hpp"

namespace duplex {

namespace {

using Clock = std::chrono::steady_clock;
using Deadline = std::optional<Clock::time_point>;

bool expired(const Deadline& d) { return d && Clock::now() >= *d; }

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

using Bits = std::vector<std::uint64_t>;

Bits driver_bits(const Matching& m) {
  const std::size_t n = m.node_count();
  Bits bits((n + 63) / 64, 0);
  for (NodeId v = 0; v < n; ++v)
    if (!m.minus_matched(v)) bits[v / 64] |= std::uint64_t{1} << (v % 64);
  return bits;
}

std::size_t union_count(const Bits& a, const Bits& b) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < a.size(); ++i) c += static_cast<std::size_t>(std::popcount(a[i] | b[i]));
  return c;
}

// Binary-partition enumeration of maximum matchings. Every leaf of the
// recursion is a distinct maximum matching: at each node an edge e of the
// current matching M is fixed in one branch and deleted in the other, and a
// maximum matching M' avoiding e is carried into the second branch.
class MatchingEnumerator {
 public:
  MatchingEnumerator(const BipartiteRep& b, std::size_t cap, Deadline deadline)
      : b_(b), n_(b.node_count()), cap_(cap), deadline_(deadline), edges_(b.edges()) {
    std::sort(edges_.begin(), edges_.end());
  }

  std::optional<std::vector<Matching>> run() {
    std::vector<std::uint8_t> allowed(edges_.size(), 1);
    recurse(allowed, max_matching(b_));
    if (overflow_) return std::nullopt;
    return std::move(out_);
  }

 private:
  std::size_t index(BipartiteEdge e) const {
    return static_cast<std::size_t>(std::lower_bound(edges_.begin(), edges_.end(), e) - edges_.begin());
  }

  // Another maximum matching of the allowed subgraph and an edge of m that it
  // does not contain, if one exists.
  std::optional<std::pair<Matching, BipartiteEdge>> alternative(const std::vector<std::uint8_t>& allowed,
                                                                const Matching& m) const {
    // Even alternating path starting at a free vertex.
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      if (!allowed[i]) continue;
      const auto e = edges_[i];
      if (m.contains(e)) continue;
      if (!m.minus_matched(e.minus)) {
        // e.plus is matched, otherwise m would not be maximum.
        BipartiteEdge old{e.plus, m.mate_of_plus(e.plus)};
        Matching alt = m;
        alt.remove(old);
        alt.add(e);
        return std::make_pair(std::move(alt), old);
      }
      if (!m.plus_matched(e.plus)) {
        BipartiteEdge old{m.mate_of_minus(e.minus), e.minus};
        Matching alt = m;
        alt.remove(old);
        alt.add(e);
        return std::make_pair(std::move(alt), old);
      }
    }
    // Alternating cycle. Arcs: u⁺ → v⁻ for unmatched allowed edges,
    // v⁻ → mate⁺ for matched ones. Vertex ids: plus u → u, minus v → n+v.
    const std::size_t total = 2 * n_;
    std::vector<std::vector<std::size_t>> out(total);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      if (!allowed[i]) continue;
      const auto e = edges_[i];
      if (m.contains(e))
        out[n_ + e.minus].push_back(e.plus);
      else
        out[e.plus].push_back(n_ + e.minus);
    }
    std::vector<std::uint8_t> color(total, 0);
    std::vector<std::size_t> parent(total, total);
    for (std::size_t root = 0; root < total; ++root) {
      if (color[root]) continue;
      std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
      color[root] = 1;
      while (!stack.empty()) {
        auto& [v, next] = stack.back();
        if (next == out[v].size()) {
          color[v] = 2;
          stack.pop_back();
          continue;
        }
        std::size_t w = out[v][next++];
        if (color[w] == 0) {
          color[w] = 1;
          parent[w] = v;
          stack.emplace_back(w, 0);
        } else if (color[w] == 1) {
          // Cycle w -> ... -> v -> w.
          std::vector<std::size_t> cyc{v};
          for (std::size_t x = v; x != w;) {
            x = parent[x];
            cyc.push_back(x);
          }
          std::reverse(cyc.begin(), cyc.end());  // w ... v
          Matching alt = m;
          std::vector<BipartiteEdge> incoming;
          std::optional<BipartiteEdge> dropped;
          for (std::size_t k = 0; k < cyc.size(); ++k) {
            std::size_t a = cyc[k];
            std::size_t c = cyc[(k + 1) % cyc.size()];
            if (a < n_) {
              incoming.push_back({static_cast<NodeId>(a), static_cast<NodeId>(c - n_)});
            } else {
              BipartiteEdge old{static_cast<NodeId>(c), static_cast<NodeId>(a - n_)};
              alt.remove(old);
              if (!dropped) dropped = old;
            }
          }
          for (const auto& e : incoming) alt.add(e);
          return std::make_pair(std::move(alt), *dropped);
        }
      }
    }
    return std::nullopt;
  }

  void recurse(const std::vector<std::uint8_t>& allowed, const Matching& m) {
    if (overflow_) return;
    if (expired(deadline_)) {
      overflow_ = true;
      return;
    }
    auto alt = alternative(allowed, m);
    if (!alt) {
      if (out_.size() >= cap_) {
        overflow_ = true;
        return;
      }
      out_.push_back(m);
      return;
    }
    const BipartiteEdge e = alt->second;
    std::vector<std::uint8_t> with_e = allowed;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const auto f = edges_[i];
      if (f != e && (f.plus == e.plus || f.minus == e.minus)) with_e[i] = 0;
    }
    recurse(with_e, m);
    std::vector<std::uint8_t> without_e = allowed;
    without_e[index(e)] = 0;
    recurse(without_e, alt->first);
  }

  const BipartiteRep& b_;
  std::size_t n_;
  std::size_t cap_;
  Deadline deadline_;
  std::vector<BipartiteEdge> edges_;
  std::vector<Matching> out_;
  bool overflow_ = false;
};

// One representative matching per distinct driver set, in first-seen order.
std::vector<std::pair<Matching, Bits>> distinct_driver_sets(std::vector<Matching> ms) {
  std::vector<std::pair<Matching, Bits>> reps;
  std::set<Bits> seen;
  for (auto& m : ms) {
    Bits bits = driver_bits(m);
    if (seen.insert(bits).second) reps.emplace_back(std::move(m), std::move(bits));
  }
  return reps;
}

}  // namespace

BaselineResult rsu(const DuplexNetwork& net, const RsuConfig& cfg, Deadline deadline) {
  if (cfg.samples_per_layer == 0) throw std::invalid_argument("rsu: samples_per_layer must be at least 1");
  const auto t0 = Clock::now();
  BaselineResult res;

  std::array<std::vector<Matching>, 2> samples;
  std::array<std::vector<Bits>, 2> bits;
  for (Layer l : kLayers) {
    const auto& b = net.bipartite(l);
    for (std::size_t i = 0; i < cfg.samples_per_layer; ++i) {
      if (i > 0 && expired(deadline)) {
        res.timed_out = true;
        break;
      }
      auto m = i == 0 ? max_matching(b)
                      : max_matching(b, derive_seed(cfg.seed, {static_cast<std::uint64_t>(number_of(l)), i}));
      bits[index_of(l)].push_back(driver_bits(m));
      samples[index_of(l)].push_back(std::move(m));
      ++res.work;
    }
  }

  const std::size_t n = net.node_count();
  const std::size_t bound = n - std::min(samples[0][0].size(), samples[1][0].size());  // max(k1, k2)
  std::size_t best = n + 1;
  std::size_t bi = 0;
  std::size_t bj = 0;
  for (std::size_t i = 0; i < bits[0].size() && best > bound; ++i) {
    for (std::size_t j = 0; j < bits[1].size(); ++j) {
      std::size_t u = union_count(bits[0][i], bits[1][j]);
      if (u < best) {
        best = u;
        bi = i;
        bj = j;
        if (best == bound) break;
      }
    }
  }
  res.final_union = best;
  res.d1 = driver_set(samples[0][bi], n);
  res.d2 = driver_set(samples[1][bj], n);
  res.elapsed_seconds = seconds_since(t0);
  return res;
}

BaselineResult clap_g(DuplexState& state, Deadline deadline) {
  const auto t0 = Clock::now();
  BaselineResult res;
  detail::IncrementalFlood flood;
  const std::size_t n = state.node_count();
  while (true) {
    if (expired(deadline)) {
      res.timed_out = true;
      break;
    }
    // An improving single segment must run DD₁ → DD₂ in one layer; scanning
    // from the DD₁ side covers every such move.
    flood.reset(n);
    std::optional<Segment> move;
    for (NodeId s : state.members_of(NodeClass::dd1)) {
      for (Layer l : kLayers) {
        for (NodeId t : flood.flood(state, l, s)) {
          if (state.node_class(t) != NodeClass::dd2) continue;
          auto w = alt_path(s, t, l, state);
          if (!w) throw std::logic_error("clap_g: segment lost its witness");
          move = Segment{s, t, l, std::move(*w)};
          break;
        }
        if (move) break;
      }
      if (move) break;
    }
    if (!move) break;
    ClapPath clap;
    clap.segments.push_back(std::move(*move));
    apply_clap(state, clap);
    ++res.work;
  }
  res.final_union = union_size(state);
  res.d1 = state.drivers(Layer::first);
  res.d2 = state.drivers(Layer::second);
  res.elapsed_seconds = seconds_since(t0);
  return res;
}

std::optional<std::vector<Matching>> enumerate_maximum_matchings(const BipartiteRep& b, std::size_t cap) {
  return MatchingEnumerator(b, cap, std::nullopt).run();
}

ExactResult exact_min_union(const DuplexNetwork& net, const EnumerationLimits& limits) {
  const auto t0 = Clock::now();
  ExactResult out;
  std::array<std::vector<std::pair<Matching, Bits>>, 2> reps;
  for (Layer l : kLayers) {
    auto all = MatchingEnumerator(net.bipartite(l), limits.max_pairs, limits.deadline).run();
    if (!all) {
      out.result.timed_out = expired(limits.deadline);
      out.result.elapsed_seconds = seconds_since(t0);
      return out;
    }
    (l == Layer::first ? out.matchings_layer1 : out.matchings_layer2) = all->size();
    reps[index_of(l)] = distinct_driver_sets(std::move(*all));
  }
  if (reps[0].size() * reps[1].size() > limits.max_pairs) {
    out.result.elapsed_seconds = seconds_since(t0);
    return out;
  }

  const std::size_t n = net.node_count();
  const std::size_t bound = n - std::min(reps[0][0].first.size(), reps[1][0].first.size());
  std::size_t best = n + 1;
  std::size_t bi = 0;
  std::size_t bj = 0;
  for (std::size_t i = 0; i < reps[0].size() && best > bound; ++i) {
    for (std::size_t j = 0; j < reps[1].size(); ++j) {
      ++out.result.work;
      std::size_t u = union_count(reps[0][i].second, reps[1][j].second);
      if (u < best) {
        best = u;
        bi = i;
        bj = j;
        if (best == bound) break;
      }
    }
  }
  out.feasible = true;
  out.result.final_union = best;
  out.result.d1 = driver_set(reps[0][bi].first, n);
  out.result.d2 = driver_set(reps[1][bj].first, n);
  out.witness = std::make_pair(reps[0][bi].first, reps[1][bj].first);
  out.result.elapsed_seconds = seconds_since(t0);
  return out;
}

std::optional<std::vector<DuplexState>> enumerate_feasible_states(std::shared_ptr<const DuplexNetwork> net,
                                                                  std::size_t cap) {
  std::array<std::vector<std::pair<Matching, Bits>>, 2> reps;
  for (Layer l : kLayers) {
    auto all = enumerate_maximum_matchings(net->bipartite(l), cap);
    if (!all) return std::nullopt;
    reps[index_of(l)] = distinct_driver_sets(std::move(*all));
  }
  if (reps[0].size() * reps[1].size() > cap) return std::nullopt;
  std::vector<DuplexState> states;
  states.reserve(reps[0].size() * reps[1].size());
  for (const auto& a : reps[0])
    for (const auto& b : reps[1]) states.emplace_back(net, a.first, b.first);
  return states;
}

}  // namespace duplex
