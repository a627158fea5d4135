#include "duplex/netgen.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "duplex/rng.hpp"

namespace duplex {

namespace {

std::uint64_t key(Edge e) { return (std::uint64_t{e.source} << 32) | e.target; }

Edge pair_at(std::uint64_t idx, std::size_t n) {
  auto u = static_cast<NodeId>(idx / (n - 1));
  auto r = static_cast<NodeId>(idx % (n - 1));
  return {u, r < u ? r : r + 1};
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// Fresh ordered pairs u != v, avoiding `taken`, drawn uniformly.
std::vector<Edge> draw_er_pairs(std::size_t n, std::size_t count, std::unordered_set<std::uint64_t>& taken,
                                std::mt19937_64& rng) {
  std::vector<Edge> out;
  if (n < 2) return out;
  const std::uint64_t space = std::uint64_t{n} * (n - 1);
  const std::uint64_t free = space - std::min<std::uint64_t>(space, taken.size());
  count = static_cast<std::size_t>(std::min<std::uint64_t>(count, free));
  if (count == 0) return out;
  if (4 * (taken.size() + count) > space) {
    std::vector<Edge> pool;
    for (std::uint64_t i = 0; i < space; ++i) {
      Edge e = pair_at(i, n);
      if (!taken.count(key(e))) pool.push_back(e);
    }
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(count);
    for (auto e : pool) taken.insert(key(e));
    return pool;
  }
  std::uniform_int_distribution<std::uint64_t> pick(0, space - 1);
  while (out.size() < count) {
    Edge e = pair_at(pick(rng), n);
    if (taken.insert(key(e)).second) out.push_back(e);
  }
  return out;
}

std::size_t attach_count(double avg_degree) {
  require(std::isfinite(avg_degree) && avg_degree >= 0, "gen_ba: average degree must be non-negative");
  return static_cast<std::size_t>(std::llround(avg_degree / 2));
}

}  // namespace

std::string_view to_string(ModelPair p) {
  switch (p) {
    case ModelPair::er_er: return "ER-ER";
    case ModelPair::ba_ba: return "BA-BA";
    case ModelPair::er_ba: return "ER-BA";
  }
  return "?";
}

ModelPair parse_model_pair(std::string_view s) {
  std::string up(s);
  for (auto& c : up) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (up == "ER-ER") return ModelPair::er_er;
  if (up == "BA-BA") return ModelPair::ba_ba;
  if (up == "ER-BA") return ModelPair::er_ba;
  throw std::invalid_argument("unknown model pair '" + std::string(s) + "' (expected ER-ER, BA-BA or ER-BA)");
}

DirectedLayer gen_er(std::size_t n, double avg_degree, std::uint64_t seed) {
  require(n >= 1, "gen_er: n must be at least 1");
  require(std::isfinite(avg_degree) && avg_degree >= 0, "gen_er: average degree must be non-negative");
  require(avg_degree <= static_cast<double>(n - 1), "gen_er: average degree exceeds n-1");
  const auto m = static_cast<std::size_t>(std::llround(static_cast<double>(n) * avg_degree / 2));
  std::mt19937_64 rng(seed);
  std::unordered_set<std::uint64_t> taken;
  return DirectedLayer(n, draw_er_pairs(n, m, taken, rng));
}

DirectedLayer gen_ba(std::size_t n, double avg_degree, std::uint64_t seed) {
  const std::size_t m = attach_count(avg_degree);
  require(m >= 1, "gen_ba: attachment parameter round(k/2) must be at least 1");
  require(n >= m + 1, "gen_ba: n must be at least m+1");
  std::mt19937_64 rng(seed);
  std::vector<std::pair<NodeId, NodeId>> undirected;
  std::vector<NodeId> repeated;
  for (NodeId i = 1; i <= m; ++i) {
    undirected.emplace_back(0, i);
    repeated.push_back(0);
    repeated.push_back(i);
  }
  std::vector<NodeId> targets;
  for (auto v = static_cast<NodeId>(m + 1); v < n; ++v) {
    targets.clear();
    std::uniform_int_distribution<std::size_t> pick(0, repeated.size() - 1);
    while (targets.size() < m) {
      NodeId t = repeated[pick(rng)];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    for (NodeId t : targets) {
      undirected.emplace_back(t, v);
      repeated.push_back(t);
      repeated.push_back(v);
    }
  }
  std::bernoulli_distribution flip(0.5);
  std::vector<Edge> edges;
  edges.reserve(undirected.size());
  for (auto [a, b] : undirected) edges.push_back(flip(rng) ? Edge{a, b} : Edge{b, a});
  return DirectedLayer(n, std::move(edges));
}

double jaccard(const DirectedLayer& a, const DirectedLayer& b) {
  const auto& ea = a.edges();
  const auto& eb = b.edges();
  std::size_t common = 0;
  for (std::size_t i = 0, j = 0; i < ea.size() && j < eb.size();) {
    if (ea[i] == eb[j]) {
      ++common;
      ++i;
      ++j;
    } else if (ea[i] < eb[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  const std::size_t uni = ea.size() + eb.size() - common;
  return uni == 0 ? 1.0 : static_cast<double>(common) / static_cast<double>(uni);
}

OverlapResult gen_overlapped_layer(const DirectedLayer& base, double rho, LayerModel model, std::uint64_t seed) {
  require(rho >= 0.0 && rho <= 1.0, "gen_overlapped_layer: rho must lie in [0, 1]");
  const std::size_t n = base.node_count();
  const std::size_t m = base.edge_count();
  std::mt19937_64 rng(seed);

  // Keeping r of m edges and adding m-r new ones gives J = r / (2m - r).
  std::size_t r = m;
  if (m > 0) {
    double best = 2.0;
    auto guess = static_cast<long long>(std::llround(2.0 * static_cast<double>(m) * rho / (1.0 + rho)));
    for (long long c = guess - 1; c <= guess + 1; ++c) {
      if (c < 0 || c > static_cast<long long>(m)) continue;
      double j = static_cast<double>(c) / static_cast<double>(2 * m - static_cast<std::size_t>(c));
      if (std::abs(j - rho) < best) {
        best = std::abs(j - rho);
        r = static_cast<std::size_t>(c);
      }
    }
  }

  std::vector<Edge> kept = base.edges();
  std::shuffle(kept.begin(), kept.end(), rng);
  kept.resize(r);

  std::unordered_set<std::uint64_t> taken;
  for (auto e : base.edges()) taken.insert(key(e));
  const std::size_t need = m - r;
  std::vector<Edge> fresh;
  if (model == LayerModel::ba && need > 0 && n >= 2) {
    const double k = n > 0 ? 2.0 * static_cast<double>(m) / static_cast<double>(n) : 0.0;
    const std::size_t ma = std::max<std::size_t>(1, attach_count(k));
    for (std::uint64_t round = 0; round < 64 && fresh.size() < need && n >= ma + 1; ++round) {
      auto draw = gen_ba(n, 2.0 * static_cast<double>(ma), derive_seed(seed, {round}));
      std::vector<Edge> cand = draw.edges();
      std::shuffle(cand.begin(), cand.end(), rng);
      for (auto e : cand) {
        if (fresh.size() == need) break;
        if (taken.insert(key(e)).second) fresh.push_back(e);
      }
    }
  }
  if (fresh.size() < need) {
    auto extra = draw_er_pairs(n, need - fresh.size(), taken, rng);
    fresh.insert(fresh.end(), extra.begin(), extra.end());
  }
  kept.insert(kept.end(), fresh.begin(), fresh.end());

  OverlapResult out{DirectedLayer(n, std::move(kept)), 0.0, false};
  out.jaccard = jaccard(base, out.layer);
  out.within_tolerance = std::abs(out.jaccard - rho) <= 0.01;
  return out;
}

GeneratedDuplex generate_duplex(const GenSpec& spec) {
  const LayerModel first = spec.models == ModelPair::ba_ba ? LayerModel::ba : LayerModel::er;
  const LayerModel second = spec.models == ModelPair::er_er ? LayerModel::er : LayerModel::ba;
  auto make = [&](LayerModel model, std::uint64_t s) {
    return model == LayerModel::er ? gen_er(spec.n, spec.avg_degree, s) : gen_ba(spec.n, spec.avg_degree, s);
  };
  DirectedLayer l1 = make(first, derive_seed(spec.seed, {1}));
  DirectedLayer l2;
  bool ok = true;
  if (spec.overlap) {
    auto o = gen_overlapped_layer(l1, *spec.overlap, second, derive_seed(spec.seed, {2}));
    l2 = std::move(o.layer);
    ok = o.within_tolerance;
  } else {
    l2 = make(second, derive_seed(spec.seed, {2}));
  }
  double j = jaccard(l1, l2);
  return GeneratedDuplex{DuplexNetwork(std::move(l1), std::move(l2)), j, ok};
}

}  // namespace duplex
