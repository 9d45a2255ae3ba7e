#include "lpdec/rpc.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <utility>

namespace lpdec {

namespace {

bool point_is_integral(const std::vector<double>& x, double eps) {
    for (double v : x)
        if (std::fabs(v - std::round(v)) > eps) return false;
    return true;
}

}  // namespace

FractionalSubgraph fractional_subgraph(const ParityCheckCode& code, const std::vector<double>& x,
                                       double epsilon_int) {
    if (static_cast<int>(x.size()) != code.n)
        throw std::invalid_argument("rpc: point size does not match code length");
    FractionalSubgraph f;
    std::vector<int> var_pos(code.n, -1);
    for (int i = 0; i < code.n; ++i) {
        if (std::fabs(x[i] - std::round(x[i])) > epsilon_int) {
            var_pos[i] = static_cast<int>(f.phi.size());
            f.phi.push_back(i);
        }
    }
    if (f.phi.empty()) return f;
    f.var_adj.resize(f.phi.size());
    for (int j = 0; j < code.m; ++j) {
        bool touches = false;
        for (int v : code.rows[j]) {
            if (var_pos[v] >= 0) {
                touches = true;
                break;
            }
        }
        if (touches) f.checks.push_back(j);
    }
    f.check_adj.resize(f.checks.size());
    for (std::size_t cj = 0; cj < f.checks.size(); ++cj) {
        for (int v : code.rows[f.checks[cj]]) {
            int vp = var_pos[v];
            if (vp < 0) continue;
            f.check_adj[cj].push_back(vp);
            f.var_adj[vp].push_back(static_cast<int>(cj));
            ++f.edge_count;
        }
    }

    int nc = static_cast<int>(f.checks.size());
    int nv = static_cast<int>(f.phi.size());
    std::vector<std::uint8_t> seen(nc + nv, 0);
    for (int s = 0; s < nc + nv; ++s) {
        if (seen[s]) continue;
        SubgraphCluster cl;
        std::vector<int> queue = {s};
        seen[s] = 1;
        while (!queue.empty()) {
            int node = queue.back();
            queue.pop_back();
            if (node < nc) {
                cl.checks.push_back(f.checks[node]);
                cl.edge_count += static_cast<int>(f.check_adj[node].size());
                for (int vp : f.check_adj[node]) {
                    if (!seen[nc + vp]) {
                        seen[nc + vp] = 1;
                        queue.push_back(nc + vp);
                    }
                }
            } else {
                int vp = node - nc;
                cl.vars.push_back(f.phi[vp]);
                for (int cp : f.var_adj[vp]) {
                    if (!seen[cp]) {
                        seen[cp] = 1;
                        queue.push_back(cp);
                    }
                }
            }
        }
        std::sort(cl.vars.begin(), cl.vars.end());
        std::sort(cl.checks.begin(), cl.checks.end());
        f.clusters.push_back(std::move(cl));
    }
    return f;
}

std::optional<std::vector<int>> random_cycle_search(const FractionalSubgraph& f, Rng& rng) {
    int nc = static_cast<int>(f.checks.size());
    int nv = static_cast<int>(f.phi.size());
    if (nc == 0 || f.edge_count == 0) return std::nullopt;
    int cap = std::max(16, 4 * f.edge_count);
    std::vector<int> pos_in_path(nc + nv, -1);
    std::vector<int> path;
    int current = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(nc)));
    int prev = -1;
    path.push_back(current);
    pos_in_path[current] = 0;
    std::vector<int> candidates;
    for (int step = 0; step < cap; ++step) {
        candidates.clear();
        if (current < nc) {
            for (int vp : f.check_adj[current]) {
                int node = nc + vp;
                if (node != prev) candidates.push_back(node);
            }
        } else {
            for (int cp : f.var_adj[current - nc]) {
                if (cp != prev) candidates.push_back(cp);
            }
        }
        if (candidates.empty()) return std::nullopt;  // dead end
        int next = candidates[rng.next_below(static_cast<std::uint64_t>(candidates.size()))];
        if (pos_in_path[next] >= 0) {
            std::vector<int> cycle_checks;
            for (std::size_t i = pos_in_path[next]; i < path.size(); ++i)
                if (path[i] < nc) cycle_checks.push_back(f.checks[path[i]]);
            std::sort(cycle_checks.begin(), cycle_checks.end());
            return cycle_checks;
        }
        path.push_back(next);
        pos_in_path[next] = static_cast<int>(path.size()) - 1;
        prev = current;
        current = next;
    }
    return std::nullopt;
}

std::optional<Cut> try_rpc_cut(const ParityCheckCode& code, const std::vector<double>& x,
                               const std::vector<int>& checks, double eps_cut) {
    if (checks.empty()) return std::nullopt;
    CheckRow combined = combine_rows(code, checks);
    if (combined.support.empty()) return std::nullopt;
    return find_cut_for_check(x, combined.support, eps_cut);
}

DecodeOutcome decode_with_rpc(const ParityCheckCode& code, const LlrVector& gamma,
                              const DecodeOptions& opts, const RpcBudget& budget, Rng& rng) {
    if (budget.c_max < 1) throw std::invalid_argument("rpc: c_max must be >= 1");
    if (budget.cuts_per_attempt < 1)
        throw std::invalid_argument("rpc: cuts_per_attempt must be >= 1");
    auto t0 = std::chrono::steady_clock::now();
    detail::AdaptiveCore core(code, gamma, opts);
    int cap = opts.max_iterations > 0 ? opts.max_iterations : code.n;
    bool hit_limit = !core.run(cap);

    int rpc_rows = 0;
    int repeats = 0;
    if (!hit_limit) {
        std::set<std::vector<int>> tried;
        std::set<std::pair<std::vector<int>, std::vector<int>>> added;
        int resolves = 0;
        while (true) {
            const std::vector<double>& x = core.last().x;
            if (point_is_integral(x, opts.epsilon_int)) break;
            if (budget.t_max &&
                std::chrono::steady_clock::now() - t0 > *budget.t_max) {
                hit_limit = true;
                break;
            }
            FractionalSubgraph f = fractional_subgraph(code, x, opts.epsilon_int);
            if (f.empty()) break;
            std::vector<LinearConstraint> rows;
            for (int trial = 0;
                 trial < budget.c_max && static_cast<int>(rows.size()) < budget.cuts_per_attempt;
                 ++trial) {
                auto cyc = random_cycle_search(f, rng);
                if (!cyc) continue;
                if (!tried.insert(*cyc).second) {
                    ++repeats;
                    continue;
                }
                auto cut = try_rpc_cut(code, x, *cyc, opts.eps_cut);
                if (!cut) continue;
                if (!added.insert({cut->support, cut->subset_v}).second) continue;
                rows.push_back(to_constraint(*cut));
            }
            if (rows.empty()) break;  // no cut within budget: pseudocodeword stands
            core.add_rows(rows);
            rpc_rows += static_cast<int>(rows.size());
            int remaining = budget.lp_resolve_cap - resolves;
            if (remaining <= 0) {
                hit_limit = true;
                break;
            }
            int before = core.iterations();
            bool fixed_point = core.run(remaining);
            resolves += core.iterations() - before;
            if (!fixed_point) {
                hit_limit = true;
                break;
            }
        }
    }
    auto elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(
        std::chrono::steady_clock::now() - t0);
    DecodeOutcome out = detail::package_outcome(core, code, opts, hit_limit, elapsed);
    out.rpc_cuts_added = rpc_rows;
    out.rpc_repeated_cycles = repeats;
    return out;
}

}  // namespace lpdec
