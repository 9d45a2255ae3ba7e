#ifndef LPDEC_RPC_HPP
#define LPDEC_RPC_HPP

#include <chrono>
#include <optional>
#include <vector>

#include "lpdec/cuts.hpp"
#include "lpdec/decoder.hpp"
#include "lpdec/rng.hpp"

namespace lpdec {

struct SubgraphCluster {
    std::vector<int> vars;
    std::vector<int> checks;
    int edge_count = 0;
};

// Fractional variables, the checks adjacent to them, and the edges between
// the two, decomposed into connected components. A connected component
// contains a cycle exactly when it has at least as many edges as nodes.
struct FractionalSubgraph {
    std::vector<int> phi;     // fractional variable indices, ascending
    std::vector<int> checks;  // adjacent check indices, ascending
    std::vector<std::vector<int>> var_adj;    // per phi position: check positions
    std::vector<std::vector<int>> check_adj;  // per check position: phi positions
    int edge_count = 0;
    std::vector<SubgraphCluster> clusters;

    bool empty() const { return phi.empty(); }
};

inline bool cluster_has_cycle(const SubgraphCluster& c) {
    return c.edge_count >= static_cast<int>(c.vars.size() + c.checks.size());
}

struct RpcBudget {
    int c_max = 100;            // cycle-search trials per cut attempt
    int lp_resolve_cap = 500;   // LP resolves across the whole RPC phase
    std::optional<std::chrono::milliseconds> t_max;  // optional wall-clock cap
    int cuts_per_attempt = 1;   // distinct cuts gathered before resolving
};

FractionalSubgraph fractional_subgraph(const ParityCheckCode& code, const std::vector<double>& x,
                                       double epsilon_int = 1e-6);

// Random walk through the subgraph, never stepping straight back; when a
// node on the current path is revisited, the enclosed loop's checks are
// returned (ascending). Dead ends and an exhausted step cap give nullopt.
std::optional<std::vector<int>> random_cycle_search(const FractionalSubgraph& f, Rng& rng);

// XORs the given rows and runs the single-check cut search on the combined
// support. Empty combination or no violation gives nullopt.
std::optional<Cut> try_rpc_cut(const ParityCheckCode& code, const std::vector<double>& x,
                               const std::vector<int>& checks, double eps_cut = kEpsCut);

// Adaptive decoding followed by budgeted redundant-row cut generation: while
// the fixed point stays fractional, up to c_max cycle searches look for a
// violated combined row; found rows are added and the adaptive loop re-runs.
DecodeOutcome decode_with_rpc(const ParityCheckCode& code, const LlrVector& gamma,
                              const DecodeOptions& opts, const RpcBudget& budget, Rng& rng);

}  // namespace lpdec

#endif
