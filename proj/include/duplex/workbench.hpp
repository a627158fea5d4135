#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "duplex/baselines.hpp"
#include "duplex/clap.hpp"
#include "duplex/duplex_state.hpp"
#include "duplex/meta.hpp"
#include "duplex/netgen.hpp"

namespace duplex {

// ---- ingestion -------------------------------------------------------------

/// Error while reading a dataset; `line` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct MultiplexDataset {
  std::shared_ptr<const DuplexNetwork> net;
  /// External label of each dense id.
  std::vector<std::string> labels;
  std::string layer_a;
  std::string layer_b;
  std::size_t duplicates_collapsed = 0;
};

/// Reads `layer src tgt [weight]` lines and keeps the two selected layers on
/// the union of their node sets. Labels get ids in first-seen order; a
/// `#@node <label>` line registers a label without an edge. Other `#` lines
/// are comments.
MultiplexDataset ingest_multiplex(const std::string& path, const std::string& layer_a, const std::string& layer_b);
MultiplexDataset ingest_multiplex(std::istream& in, const std::string& layer_a, const std::string& layer_b,
                                  const std::string& source_name = "<stream>");

/// Canonical text form: every node as a `#@node` line in id order, then the
/// edges of layer 1 and layer 2. Re-ingesting it with layers "1" and "2"
/// reproduces the same duplex. Labels default to the decimal ids.
void write_canonical(std::ostream& out, const DuplexNetwork& net, const std::vector<std::string>& labels = {});

// ---- metrics ---------------------------------------------------------------

struct AlgorithmRun {
  std::string name;  // "clap-s", "clap-g", "rsu", "exact"
  std::uint64_t network_fingerprint = 0;
  std::size_t final_union = 0;
  double seconds = 0.0;
  bool timed_out = false;
  /// False for an exact run that hit its cap; the run has no answer then.
  bool has_answer = true;
};

struct LayerDegreeStats {
  std::size_t edges = 0;
  /// Nodes with at least one edge in this layer.
  std::size_t present_nodes = 0;
  /// 2|E| / present_nodes.
  double avg_degree_present = 0.0;
  /// 2|E| / n over the union node set.
  double avg_degree_union = 0.0;
};

struct MetricsReport {
  std::size_t n = 0;
  std::size_t k1 = 0;
  std::size_t k2 = 0;
  std::size_t initial_union = 0;
  std::size_t initial_delta = 0;
  std::map<std::string, std::size_t> final_union;
  std::map<std::string, double> seconds;
  /// |U|₀ − |U|_alg.
  std::map<std::string, long> delta_nd;
  /// |U|_RSU − |U|_CLAP-S, when both ran.
  std::optional<long> delta_nd_opt;
  /// 100·ΔN_D^opt / |U|_RSU; empty when undefined or not computable.
  std::optional<double> r_opt;
  bool r_opt_undefined = false;
  std::array<LayerDegreeStats, 2> degrees;
};

/// Throws std::invalid_argument if a run belongs to another network.
MetricsReport compute_metrics(const std::vector<AlgorithmRun>& runs, const DuplexState& initial);

// ---- single-instance analysis ------------------------------------------------

enum class Algorithm { clap_s, clap_g, rsu, exact };

std::string algorithm_name(Algorithm a);
/// Throws std::invalid_argument on an unknown name.
Algorithm parse_algorithm(const std::string& name);

struct AnalyzeOptions {
  std::vector<Algorithm> algorithms{Algorithm::clap_s, Algorithm::clap_g, Algorithm::rsu};
  std::size_t rsu_k = 20;
  std::uint64_t seed = 0;
  std::size_t oracle_cap = 1'000'000;
  /// Wall-clock cap per algorithm.
  double time_limit_seconds = 500.0;
  std::optional<std::size_t> max_iterations;
};

struct AnalysisResult {
  MetricsReport metrics;
  std::optional<RunLog> clap_s;
  std::optional<DriverSet> clap_s_d1;
  std::optional<DriverSet> clap_s_d2;
  std::optional<BaselineResult> clap_g;
  std::optional<BaselineResult> rsu;
  std::optional<ExactResult> exact;
};

/// Runs each requested algorithm from the deterministic initial state.
AnalysisResult analyze(std::shared_ptr<const DuplexNetwork> net, const AnalyzeOptions& options);

nlohmann::json to_json(const AnalysisResult& r, bool include_members);

// ---- experiments -------------------------------------------------------------

struct ExperimentConfig {
  std::vector<ModelPair> models{ModelPair::er_er};
  std::size_t n = 1000;
  std::vector<double> avg_degrees{4.0};
  /// Empty entry means "no overlap control".
  std::vector<std::optional<double>> overlaps{std::nullopt};
  std::size_t repetitions = 10;
  std::uint64_t master_seed = 0;
  AnalyzeOptions analyze;
  /// 0 picks the hardware concurrency.
  std::size_t workers = 0;
};

/// Throws std::invalid_argument on unknown keys or bad values.
ExperimentConfig parse_experiment_config(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& c);

struct ExperimentRow {
  ModelPair models = ModelPair::er_er;
  double avg_degree = 0.0;
  std::optional<double> overlap;
  std::size_t repetition = 0;
  std::uint64_t seed = 0;
  double jaccard = 0.0;
  bool overlap_within_tolerance = true;
  std::optional<AnalysisResult> analysis;
  /// Empty on success.
  std::string error;
};

struct ExperimentReport {
  std::string config_hash;
  std::vector<ExperimentRow> rows;
  std::size_t failures = 0;
};

ExperimentReport run_experiment(const ExperimentConfig& config);

/// One row per cell and repetition, then a mean and a std row per cell.
void write_experiment_csv(std::ostream& out, const ExperimentReport& report);

// ---- verification ------------------------------------------------------------

struct VerifyOptions {
  std::optional<std::size_t> max_iterations;
  std::size_t oracle_cap = 1'000'000;
};

struct VerifyReport {
  std::size_t iterations = 0;
  bool clap_stable = false;
  std::size_t union_size = 0;
  std::optional<std::size_t> witness_length;
  bool oracle_feasible = false;
  std::optional<std::size_t> oracle_optimum;
  bool agree = false;
  /// Meta-graph certificate against every feasible state, when enumerable.
  std::optional<CertificateReport> certificate;
};

VerifyReport verify_instance(std::shared_ptr<const DuplexNetwork> net, const VerifyOptions& options);
void print_verify_report(std::ostream& out, const VerifyReport& r);

}  // namespace duplex
