#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <set>
#include <thread>

#include "duplex/rng.hpp"
#include "duplex/workbench.hpp"

namespace duplex {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

template <typename T>
std::vector<T> scalar_or_array(const nlohmann::json& v, const std::function<T(const nlohmann::json&)>& conv) {
  std::vector<T> out;
  if (v.is_array()) {
    for (const auto& x : v) out.push_back(conv(x));
  } else {
    out.push_back(conv(v));
  }
  return out;
}

struct Cell {
  ModelPair models;
  double avg_degree;
  std::optional<double> overlap;
};

std::vector<Cell> cells_of(const ExperimentConfig& c) {
  std::vector<Cell> cells;
  for (auto m : c.models)
    for (double k : c.avg_degrees)
      for (const auto& o : c.overlaps) cells.push_back({m, k, o});
  return cells;
}

// Columns of one CSV row; timing columns are prefixed "t_".
const std::vector<std::string> kColumns{
    "config_hash",  "models",        "n",           "avg_degree",        "overlap",           "rep",
    "seed",         "jaccard",       "overlap_ok",  "k1",                "k2",                "initial_union",
    "initial_dd",   "clap_s_union",  "clap_s_iterations", "clap_s_mean_length", "clap_s_stable", "clap_g_union",
    "rsu_union",    "exact_union",   "delta_nd_clap_s",   "delta_nd_opt",      "r_opt",            "t_clap_s",
    "t_clap_g",     "t_rsu",         "t_exact",     "status"};

using Values = std::map<std::string, std::optional<double>>;

Values numeric_values(const ExperimentRow& row) {
  Values v;
  v["jaccard"] = row.jaccard;
  if (!row.analysis) return v;
  const auto& a = *row.analysis;
  const auto& m = a.metrics;
  v["k1"] = static_cast<double>(m.k1);
  v["k2"] = static_cast<double>(m.k2);
  v["initial_union"] = static_cast<double>(m.initial_union);
  v["initial_dd"] = static_cast<double>(m.initial_delta);
  auto put_union = [&](const char* col, const char* alg) {
    auto it = m.final_union.find(alg);
    if (it != m.final_union.end()) v[col] = static_cast<double>(it->second);
  };
  put_union("clap_s_union", "clap-s");
  put_union("clap_g_union", "clap-g");
  put_union("rsu_union", "rsu");
  put_union("exact_union", "exact");
  if (a.clap_s) {
    v["clap_s_iterations"] = static_cast<double>(a.clap_s->iterations.size());
    v["clap_s_mean_length"] = a.clap_s->mean_clap_length();
    v["clap_s_stable"] = a.clap_s->clap_stable ? 1.0 : 0.0;
  }
  if (auto it = m.delta_nd.find("clap-s"); it != m.delta_nd.end())
    v["delta_nd_clap_s"] = static_cast<double>(it->second);
  if (m.delta_nd_opt) v["delta_nd_opt"] = static_cast<double>(*m.delta_nd_opt);
  if (m.r_opt) v["r_opt"] = *m.r_opt;
  auto put_time = [&](const char* col, const char* alg) {
    auto it = m.seconds.find(alg);
    if (it != m.seconds.end()) v[col] = it->second;
  };
  put_time("t_clap_s", "clap-s");
  put_time("t_clap_g", "clap-g");
  put_time("t_rsu", "rsu");
  put_time("t_exact", "exact");
  return v;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

ExperimentConfig parse_experiment_config(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("experiment config must be a JSON object");
  static const std::set<std::string> known{"models",     "n",          "avg_degree", "overlap",
                                           "repetitions", "master_seed", "algorithms", "rsu_k",
                                           "oracle_cap", "time_limit", "max_iterations", "workers"};
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) throw std::invalid_argument("unknown config key '" + k + "'");

  ExperimentConfig c;
  try {
    if (j.contains("models"))
      c.models = scalar_or_array<ModelPair>(
          j["models"], [](const nlohmann::json& x) { return parse_model_pair(x.get<std::string>()); });
    if (j.contains("n")) c.n = j["n"].get<std::size_t>();
    if (j.contains("avg_degree"))
      c.avg_degrees = scalar_or_array<double>(j["avg_degree"], [](const nlohmann::json& x) { return x.get<double>(); });
    if (j.contains("overlap")) {
      c.overlaps = scalar_or_array<std::optional<double>>(j["overlap"], [](const nlohmann::json& x) {
        return x.is_null() ? std::optional<double>{} : std::optional<double>{x.get<double>()};
      });
    }
    if (j.contains("repetitions")) c.repetitions = j["repetitions"].get<std::size_t>();
    if (j.contains("master_seed")) c.master_seed = j["master_seed"].get<std::uint64_t>();
    if (j.contains("algorithms")) {
      c.analyze.algorithms.clear();
      for (const auto& a : j["algorithms"]) c.analyze.algorithms.push_back(parse_algorithm(a.get<std::string>()));
    }
    if (j.contains("rsu_k")) c.analyze.rsu_k = j["rsu_k"].get<std::size_t>();
    if (j.contains("oracle_cap")) c.analyze.oracle_cap = j["oracle_cap"].get<std::size_t>();
    if (j.contains("time_limit")) c.analyze.time_limit_seconds = j["time_limit"].get<double>();
    if (j.contains("max_iterations") && !j["max_iterations"].is_null())
      c.analyze.max_iterations = j["max_iterations"].get<std::size_t>();
    if (j.contains("workers")) c.workers = j["workers"].get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad config value: ") + e.what());
  }
  if (c.n < 1) throw std::invalid_argument("config: n must be at least 1");
  if (c.analyze.rsu_k < 1) throw std::invalid_argument("config: rsu_k must be at least 1");
  for (const auto& o : c.overlaps)
    if (o && (*o < 0 || *o > 1)) throw std::invalid_argument("config: overlap must lie in [0, 1]");
  return c;
}

nlohmann::json to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  for (auto m : c.models) j["models"].push_back(std::string(to_string(m)));
  j["n"] = c.n;
  j["avg_degree"] = c.avg_degrees;
  for (const auto& o : c.overlaps) j["overlap"].push_back(o ? nlohmann::json(*o) : nlohmann::json(nullptr));
  j["repetitions"] = c.repetitions;
  j["master_seed"] = c.master_seed;
  for (auto a : c.analyze.algorithms) j["algorithms"].push_back(algorithm_name(a));
  j["rsu_k"] = c.analyze.rsu_k;
  j["oracle_cap"] = c.analyze.oracle_cap;
  j["time_limit"] = c.analyze.time_limit_seconds;
  j["max_iterations"] = c.analyze.max_iterations ? nlohmann::json(*c.analyze.max_iterations) : nlohmann::json(nullptr);
  return j;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  ExperimentReport report;
  report.config_hash = hex64(fnv1a(to_json(config).dump()));
  const auto cells = cells_of(config);
  const std::size_t jobs = cells.size() * config.repetitions;
  report.rows.resize(jobs);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs;) {
      const std::size_t ci = i / config.repetitions;
      const std::size_t rep = i % config.repetitions;
      const Cell& cell = cells[ci];
      ExperimentRow& row = report.rows[i];
      row.models = cell.models;
      row.avg_degree = cell.avg_degree;
      row.overlap = cell.overlap;
      row.repetition = rep;
      row.seed = derive_seed(config.master_seed, {ci, rep});
      try {
        auto gen = generate_duplex(GenSpec{cell.models, config.n, cell.avg_degree, cell.overlap, row.seed});
        row.jaccard = gen.jaccard;
        row.overlap_within_tolerance = gen.within_tolerance;
        auto net = std::make_shared<const DuplexNetwork>(std::move(gen.net));
        AnalyzeOptions opts = config.analyze;
        opts.seed = derive_seed(row.seed, {0x5253});
        row.analysis = analyze(net, opts);
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    }
  };
  std::size_t workers = config.workers ? config.workers : std::max(1U, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(1, jobs));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& r : report.rows)
    if (!r.error.empty()) ++report.failures;
  return report;
}

void write_experiment_csv(std::ostream& out, const ExperimentReport& report) {
  for (std::size_t i = 0; i < kColumns.size(); ++i) out << (i ? "," : "") << kColumns[i];
  out << "\n";

  auto emit = [&](const std::map<std::string, std::string>& cols) {
    for (std::size_t i = 0; i < kColumns.size(); ++i) {
      auto it = cols.find(kColumns[i]);
      out << (i ? "," : "") << (it == cols.end() ? "" : csv_escape(it->second));
    }
    out << "\n";
  };

  std::size_t i = 0;
  while (i < report.rows.size()) {
    // Rows of one cell are contiguous.
    std::size_t j = i;
    const auto& head = report.rows[i];
    while (j < report.rows.size() && report.rows[j].models == head.models &&
           report.rows[j].avg_degree == head.avg_degree && report.rows[j].overlap == head.overlap &&
           (j == i || report.rows[j].repetition > report.rows[j - 1].repetition))
      ++j;

    std::map<std::string, std::string> common{{"config_hash", report.config_hash},
                                              {"models", std::string(to_string(head.models))},
                                              {"avg_degree", fmt(head.avg_degree)},
                                              {"overlap", head.overlap ? fmt(*head.overlap) : ""}};
    std::map<std::string, std::vector<double>> samples;
    for (std::size_t r = i; r < j; ++r) {
      const auto& row = report.rows[r];
      auto cols = common;
      cols["rep"] = std::to_string(row.repetition);
      cols["seed"] = std::to_string(row.seed);
      cols["overlap_ok"] = row.overlap_within_tolerance ? "1" : "0";
      if (row.analysis) cols["n"] = std::to_string(row.analysis->metrics.n);
      for (const auto& [k, v] : numeric_values(row)) {
        if (!v) continue;
        cols[k] = (k == "k1" || k == "k2" || k.find("union") != std::string::npos || k == "initial_dd" ||
                   k == "clap_s_iterations" || k == "clap_s_stable" || k.rfind("delta_nd", 0) == 0)
                      ? std::to_string(static_cast<long long>(*v))
                      : fmt(*v);
        if (row.error.empty()) samples[k].push_back(*v);
      }
      cols["status"] = row.error.empty() ? "ok" : "error: " + row.error;
      emit(cols);
    }

    std::map<std::string, std::string> mean = common, sd = common;
    mean["rep"] = "mean";
    sd["rep"] = "std";
    for (const auto& [k, xs] : samples) {
      double mu = 0;
      for (double x : xs) mu += x;
      mu /= static_cast<double>(xs.size());
      double var = 0;
      for (double x : xs) var += (x - mu) * (x - mu);
      var = xs.size() > 1 ? var / static_cast<double>(xs.size() - 1) : 0.0;
      mean[k] = fmt(mu);
      sd[k] = fmt(std::sqrt(var));
    }
    std::size_t ok = 0;
    for (std::size_t r = i; r < j; ++r) ok += report.rows[r].error.empty();
    mean["status"] = sd["status"] = "n=" + std::to_string(ok);
    emit(mean);
    emit(sd);
    i = j;
  }
}

}  // namespace duplex
