#include <algorithm>
#include <stdexcept>

#include "duplex/workbench.hpp"

namespace duplex {

namespace {

using Clock = std::chrono::steady_clock;

LayerDegreeStats degree_stats(const DirectedLayer& layer) {
  LayerDegreeStats s;
  const std::size_t n = layer.node_count();
  s.edges = layer.edge_count();
  for (NodeId v = 0; v < n; ++v)
    if (!layer.out_neighbors(v).empty() || !layer.in_neighbors(v).empty()) ++s.present_nodes;
  const double twice = 2.0 * static_cast<double>(s.edges);
  s.avg_degree_present = s.present_nodes ? twice / static_cast<double>(s.present_nodes) : 0.0;
  s.avg_degree_union = n ? twice / static_cast<double>(n) : 0.0;
  return s;
}

nlohmann::json members_json(const DriverSet& d) { return d.members; }

}  // namespace

MetricsReport compute_metrics(const std::vector<AlgorithmRun>& runs, const DuplexState& initial) {
  const auto& net = initial.network();
  MetricsReport r;
  r.n = initial.node_count();
  r.k1 = initial.budget(Layer::first);
  r.k2 = initial.budget(Layer::second);
  r.initial_union = union_size(initial);
  r.initial_delta = difference_mass(initial);
  if (2 * r.initial_union != r.k1 + r.k2 + r.initial_delta)
    throw std::logic_error("compute_metrics: union identity fails on the initial state");
  for (Layer l : kLayers) r.degrees[index_of(l)] = degree_stats(net.layer(l));

  for (const auto& run : runs) {
    if (run.network_fingerprint != net.fingerprint())
      throw std::invalid_argument("compute_metrics: run '" + run.name + "' comes from a different network");
    r.seconds[run.name] = run.seconds;
    if (!run.has_answer) continue;
    r.final_union[run.name] = run.final_union;
    r.delta_nd[run.name] = static_cast<long>(r.initial_union) - static_cast<long>(run.final_union);
  }
  auto claps = r.final_union.find("clap-s");
  auto rsu_it = r.final_union.find("rsu");
  if (claps != r.final_union.end() && rsu_it != r.final_union.end()) {
    r.delta_nd_opt = static_cast<long>(rsu_it->second) - static_cast<long>(claps->second);
    if (rsu_it->second == 0)
      r.r_opt_undefined = true;
    else
      r.r_opt = 100.0 * static_cast<double>(*r.delta_nd_opt) / static_cast<double>(rsu_it->second);
  }
  return r;
}

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::clap_s: return "clap-s";
    case Algorithm::clap_g: return "clap-g";
    case Algorithm::rsu: return "rsu";
    case Algorithm::exact: return "exact";
  }
  return "?";
}

Algorithm parse_algorithm(const std::string& name) {
  for (Algorithm a : {Algorithm::clap_s, Algorithm::clap_g, Algorithm::rsu, Algorithm::exact})
    if (algorithm_name(a) == name) return a;
  throw std::invalid_argument("unknown algorithm '" + name + "' (expected clap-s, clap-g, rsu or exact)");
}

AnalysisResult analyze(std::shared_ptr<const DuplexNetwork> net, const AnalyzeOptions& options) {
  const DuplexState initial = init_state(net);
  const auto limit = std::chrono::duration_cast<Clock::duration>(
      std::chrono::duration<double>(options.time_limit_seconds));
  const std::uint64_t fp = net->fingerprint();
  AnalysisResult out;
  std::vector<AlgorithmRun> runs;

  for (Algorithm a : options.algorithms) {
    const auto deadline = Clock::now() + limit;
    AlgorithmRun run{algorithm_name(a), fp};
    switch (a) {
      case Algorithm::clap_s: {
        DuplexState s = initial;
        ClapOptions co;
        co.deadline = deadline;
        co.max_iterations = options.max_iterations;
        RunLog log = clap_s(s, co);
        run.final_union = log.final_union;
        run.seconds = log.elapsed_seconds;
        run.timed_out = log.timed_out;
        out.clap_s_d1 = s.drivers(Layer::first);
        out.clap_s_d2 = s.drivers(Layer::second);
        out.clap_s = std::move(log);
        break;
      }
      case Algorithm::clap_g: {
        DuplexState s = initial;
        BaselineResult r = clap_g(s, deadline);
        run.final_union = r.final_union;
        run.seconds = r.elapsed_seconds;
        run.timed_out = r.timed_out;
        out.clap_g = std::move(r);
        break;
      }
      case Algorithm::rsu: {
        BaselineResult r = duplex::rsu(*net, RsuConfig{options.rsu_k, options.seed}, deadline);
        run.final_union = r.final_union;
        run.seconds = r.elapsed_seconds;
        run.timed_out = r.timed_out;
        out.rsu = std::move(r);
        break;
      }
      case Algorithm::exact: {
        ExactResult r = exact_min_union(*net, EnumerationLimits{options.oracle_cap, deadline});
        run.final_union = r.result.final_union;
        run.seconds = r.result.elapsed_seconds;
        run.timed_out = r.result.timed_out;
        run.has_answer = r.feasible;
        out.exact = std::move(r);
        break;
      }
    }
    runs.push_back(std::move(run));
  }
  out.metrics = compute_metrics(runs, initial);
  return out;
}

nlohmann::json to_json(const AnalysisResult& r, bool include_members) {
  using nlohmann::json;
  const auto& m = r.metrics;
  json j;
  j["n"] = m.n;
  j["k1"] = m.k1;
  j["k2"] = m.k2;
  j["initial_union"] = m.initial_union;
  j["initial_delta"] = m.initial_delta;
  j["final_union"] = m.final_union;
  j["seconds"] = m.seconds;
  j["delta_nd"] = m.delta_nd;
  j["delta_nd_opt"] = m.delta_nd_opt ? json(*m.delta_nd_opt) : json(nullptr);
  j["r_opt_percent"] = m.r_opt ? json(*m.r_opt) : json(nullptr);
  j["r_opt_undefined"] = m.r_opt_undefined;
  for (Layer l : kLayers) {
    const auto& d = m.degrees[index_of(l)];
    j["layers"].push_back({{"layer", number_of(l)},
                           {"edges", d.edges},
                           {"present_nodes", d.present_nodes},
                           {"avg_degree_present", d.avg_degree_present},
                           {"avg_degree_union", d.avg_degree_union}});
  }

  if (r.clap_s) {
    const auto& log = *r.clap_s;
    json c{{"final_union", log.final_union},
           {"final_delta", log.final_delta},
           {"clap_stable", log.clap_stable},
           {"timed_out", log.timed_out},
           {"mean_clap_length", log.mean_clap_length()},
           {"seconds", log.elapsed_seconds},
           {"iterations", json::array()}};
    for (const auto& it : log.iterations)
      c["iterations"].push_back({{"length", it.clap_length},
                                 {"delta_before", it.delta_before},
                                 {"delta_after", it.delta_after},
                                 {"union_before", it.union_before},
                                 {"union_after", it.union_after},
                                 {"seconds", it.elapsed_seconds}});
    if (include_members) {
      c["d1"] = members_json(*r.clap_s_d1);
      c["d2"] = members_json(*r.clap_s_d2);
    }
    j["clap-s"] = std::move(c);
  }
  auto baseline = [&](const BaselineResult& b, const char* work_name) {
    json o{{"final_union", b.final_union}, {"seconds", b.elapsed_seconds}, {"timed_out", b.timed_out},
           {work_name, b.work}};
    if (include_members) {
      o["d1"] = members_json(b.d1);
      o["d2"] = members_json(b.d2);
    }
    return o;
  };
  if (r.clap_g) j["clap-g"] = baseline(*r.clap_g, "moves");
  if (r.rsu) j["rsu"] = baseline(*r.rsu, "samples");
  if (r.exact) {
    if (r.exact->feasible) {
      j["exact"] = baseline(r.exact->result, "pairs_scored");
      j["exact"]["matchings_layer1"] = r.exact->matchings_layer1;
      j["exact"]["matchings_layer2"] = r.exact->matchings_layer2;
    } else {
      j["exact"] = {{"feasible", false}, {"message", "oracle infeasible at this size"}};
    }
  }
  return j;
}

}  // namespace duplex
