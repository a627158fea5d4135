#include <ostream>

#include "duplex/workbench.hpp"

namespace duplex {

VerifyReport verify_instance(std::shared_ptr<const DuplexNetwork> net, const VerifyOptions& options) {
  VerifyReport r;
  DuplexState state = init_state(net);
  ClapOptions co;
  co.max_iterations = options.max_iterations;
  RunLog log = clap_s(state, co);
  r.iterations = log.iterations.size();
  r.union_size = log.final_union;
  auto clap = find_shortest_clap(state);
  r.clap_stable = !clap;
  if (clap) r.witness_length = clap->length();

  ExactResult ex = exact_min_union(*net, EnumerationLimits{options.oracle_cap, std::nullopt});
  r.oracle_feasible = ex.feasible;
  if (ex.feasible) {
    r.oracle_optimum = ex.result.final_union;
    r.agree = r.clap_stable == (r.union_size == *r.oracle_optimum);
    if (auto states = enumerate_feasible_states(net, options.oracle_cap))
      r.certificate = certify_optimal_or_find_witness(state, *states);
  }
  return r;
}

void print_verify_report(std::ostream& out, const VerifyReport& r) {
  out << "CLAP iterations: " << r.iterations << "\n";
  if (r.clap_stable) {
    out << "stable";
    if (r.oracle_optimum && *r.oracle_optimum == r.union_size) out << ", optimal";
    out << ", |U| = " << r.union_size << "\n";
  } else {
    out << "not stable, witness CLAP exists (length " << *r.witness_length << "), |U| = " << r.union_size << "\n";
  }
  if (!r.oracle_feasible) {
    out << "oracle infeasible at this size\n";
    return;
  }
  out << "oracle optimum: " << *r.oracle_optimum << "\n";
  out << (r.agree ? "AGREE" : "DISAGREE") << "\n";
  if (r.certificate) {
    const auto& c = *r.certificate;
    if (c.optimal) {
      out << "meta-graph certificate: optimal against every feasible state\n";
    } else {
      out << "meta-graph certificate: improvable (delta " << c.state_delta << " vs " << c.best_delta << ")";
      if (c.witness) out << ", witness CLAP of length " << c.witness->length() << (c.witness_verified ? " verified" : " REJECTED");
      out << "\n";
    }
  }
}

}  // namespace duplex
