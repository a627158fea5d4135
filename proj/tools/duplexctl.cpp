// duplexctl: generate, analyze, bench and verify duplex networks.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "duplex/workbench.hpp"

using namespace duplex;

namespace {

std::vector<Algorithm> parse_algorithms(const std::string& list) {
  std::vector<Algorithm> out;
  std::stringstream ss(list);
  std::string name;
  while (std::getline(ss, name, ','))
    if (!name.empty()) out.push_back(parse_algorithm(name));
  if (out.empty()) throw std::invalid_argument("--algorithms is empty");
  return out;
}

struct GenArgs {
  std::string model = "ER-ER";
  std::size_t n = 100;
  double k = 4.0;
  std::optional<double> overlap;
  std::uint64_t seed = 0;
};

void add_gen_options(CLI::App* app, GenArgs& g, bool required) {
  app->add_option("--model", g.model, "Layer models: ER-ER, BA-BA or ER-BA")->capture_default_str();
  auto* n = app->add_option("--n", g.n, "Number of nodes")->capture_default_str();
  app->add_option("--k", g.k, "Average total degree 2|E|/n")->capture_default_str();
  app->add_option("--overlap", g.overlap, "Target Jaccard similarity of the two edge sets");
  app->add_option("--seed", g.seed, "Generator seed")->capture_default_str();
  if (required) n->required();
}

GeneratedDuplex generate(const GenArgs& g) {
  return generate_duplex(GenSpec{parse_model_pair(g.model), g.n, g.k, g.overlap, g.seed});
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot write " + path);
  return file;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum-union driver sets for duplex networks"};
  app.require_subcommand(1);

  // generate
  GenArgs gen;
  std::string gen_out;
  auto* cmd_gen = app.add_subcommand("generate", "Write a synthetic duplex in canonical form");
  add_gen_options(cmd_gen, gen, true);
  cmd_gen->add_option("-o,--output", gen_out, "Output file (default stdout)");

  // analyze
  std::string an_file;
  std::vector<std::string> an_layers{"1", "2"};
  std::string an_algs = "clap-s,clap-g,rsu";
  AnalyzeOptions an_opts;
  std::optional<std::size_t> an_max_iter;
  bool an_members = false;
  std::string an_out;
  auto* cmd_an = app.add_subcommand("analyze", "Run the algorithms on a duplex file and print a JSON report");
  cmd_an->add_option("file", an_file, "Multiplex edge list")->required()->check(CLI::ExistingFile);
  cmd_an->add_option("--layers", an_layers, "The two layer ids to use")->expected(2)->capture_default_str();
  cmd_an->add_option("--algorithms", an_algs, "Comma list of clap-s, clap-g, rsu, exact")->capture_default_str();
  cmd_an->add_option("--seed", an_opts.seed, "RSU seed")->capture_default_str();
  cmd_an->add_option("--rsu-k", an_opts.rsu_k, "RSU samples per layer")->capture_default_str()->check(CLI::PositiveNumber);
  cmd_an->add_option("--oracle-cap", an_opts.oracle_cap, "Enumeration cap of the exact oracle")->capture_default_str();
  cmd_an->add_option("--time-limit", an_opts.time_limit_seconds, "Seconds per algorithm")->capture_default_str();
  cmd_an->add_option("--max-iterations", an_max_iter, "Stop CLAP-S after this many iterations");
  cmd_an->add_flag("--members", an_members, "Include driver-set members");
  cmd_an->add_option("-o,--output", an_out, "Output file (default stdout)");

  // bench
  std::string bench_config;
  std::string bench_out;
  bool keep_going = false;
  std::optional<std::size_t> bench_workers;
  auto* cmd_bench = app.add_subcommand("bench", "Run a parameter sweep and write CSV");
  cmd_bench->add_option("--config", bench_config, "JSON sweep config")->required()->check(CLI::ExistingFile);
  cmd_bench->add_option("-o,--output", bench_out, "CSV file (default stdout)");
  cmd_bench->add_flag("--keep-going", keep_going, "Exit 0 even if some cells failed");
  cmd_bench->add_option("--workers", bench_workers, "Worker threads (overrides the config)");

  // verify
  std::string ver_file;
  std::vector<std::string> ver_layers{"1", "2"};
  GenArgs ver_gen;
  ver_gen.n = 8;
  ver_gen.k = 2.0;
  VerifyOptions ver_opts;
  auto* cmd_ver = app.add_subcommand("verify", "Check CLAP-S against the exact oracle on a small instance");
  cmd_ver->add_option("file", ver_file, "Multiplex edge list; omit to generate one")->check(CLI::ExistingFile);
  cmd_ver->add_option("--layers", ver_layers, "The two layer ids to use")->expected(2);
  add_gen_options(cmd_ver, ver_gen, false);
  cmd_ver->add_option("--max-iterations", ver_opts.max_iterations, "Truncate the CLAP-S run");
  cmd_ver->add_option("--oracle-cap", ver_opts.oracle_cap, "Enumeration cap of the exact oracle")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_gen) {
      auto g = generate(gen);
      std::ofstream f;
      write_canonical(open_output(gen_out, f), g.net);
      std::cerr << "n=" << g.net.node_count() << " m1=" << g.net.layer(Layer::first).edge_count()
                << " m2=" << g.net.layer(Layer::second).edge_count() << " jaccard=" << g.jaccard
                << (g.within_tolerance ? "" : " (overlap target missed)") << "\n";
      return 0;
    }
    if (*cmd_an) {
      an_opts.algorithms = parse_algorithms(an_algs);
      an_opts.max_iterations = an_max_iter;
      auto ds = ingest_multiplex(an_file, an_layers[0], an_layers[1]);
      auto result = analyze(ds.net, an_opts);
      auto j = to_json(result, an_members);
      j["input"] = {{"file", an_file},
                    {"layers", an_layers},
                    {"duplicates_collapsed", ds.duplicates_collapsed},
                    {"seed", an_opts.seed},
                    {"rsu_k", an_opts.rsu_k}};
      if (an_members) j["labels"] = ds.labels;
      std::ofstream f;
      open_output(an_out, f) << j.dump(2) << "\n";
      return 0;
    }
    if (*cmd_bench) {
      std::ifstream in(bench_config);
      auto config = parse_experiment_config(nlohmann::json::parse(in));
      if (bench_workers) config.workers = *bench_workers;
      auto report = run_experiment(config);
      std::ofstream f;
      write_experiment_csv(open_output(bench_out, f), report);
      for (const auto& row : report.rows)
        if (!row.error.empty())
          std::cerr << "cell " << to_string(row.models) << " k=" << row.avg_degree << " rep=" << row.repetition
                    << " failed: " << row.error << "\n";
      return report.failures && !keep_going ? 1 : 0;
    }
    if (*cmd_ver) {
      std::shared_ptr<const DuplexNetwork> net;
      if (!ver_file.empty()) {
        net = ingest_multiplex(ver_file, ver_layers[0], ver_layers[1]).net;
      } else {
        net = std::make_shared<const DuplexNetwork>(generate(ver_gen).net);
      }
      auto r = verify_instance(net, ver_opts);
      print_verify_report(std::cout, r);
      return r.oracle_feasible && !r.agree ? 1 : 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
