#include "lpdec/cuts.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <stdexcept>

namespace lpdec {

namespace {
std::atomic<std::uint64_t> g_clamped{0};
}

std::uint64_t clamped_input_count() { return g_clamped.load(std::memory_order_relaxed); }
void reset_clamped_input_count() { g_clamped.store(0, std::memory_order_relaxed); }

LinearConstraint constraint_from_subset(const std::vector<int>& neighborhood,
                                        const std::vector<int>& subset_v) {
    if (subset_v.size() % 2 == 0) throw std::invalid_argument("cuts: subset size must be odd");
    std::vector<int> inside(subset_v);
    std::sort(inside.begin(), inside.end());
    LinearConstraint c;
    c.terms.reserve(neighborhood.size());
    std::size_t matched = 0;
    for (int v : neighborhood) {
        bool in_v = std::binary_search(inside.begin(), inside.end(), v);
        if (in_v) ++matched;
        c.terms.push_back({v, in_v ? 1.0 : -1.0});
    }
    if (matched != inside.size())
        throw std::invalid_argument("cuts: subset is not contained in the neighborhood");
    c.rhs = static_cast<double>(subset_v.size()) - 1.0;
    return c;
}

LinearConstraint to_constraint(const Cut& cut) {
    LinearConstraint c = constraint_from_subset(cut.support, cut.subset_v);
    ConstraintProvenance p;
    p.check = cut.check;
    if (cut.check < 0) p.rpc_support = cut.support;
    p.subset_v = cut.subset_v;
    c.provenance = std::move(p);
    return c;
}

std::optional<Cut> find_cut_for_check(const std::vector<double>& x,
                                      const std::vector<int>& neighborhood,
                                      double eps_cut) {
    int d = static_cast<int>(neighborhood.size());
    if (d == 0) return std::nullopt;
    std::vector<double> vals(d);
    double total = 0.0;
    for (int i = 0; i < d; ++i) {
        double v = x[neighborhood[i]];
        if (v < 0.0 || v > 1.0) {
            g_clamped.fetch_add(1, std::memory_order_relaxed);
            v = std::min(1.0, std::max(0.0, v));
        }
        vals[i] = v;
        total += v;
    }
    std::vector<int> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (vals[a] != vals[b]) return vals[a] > vals[b];
        return neighborhood[a] < neighborhood[b];
    });
    double prefix = 0.0;
    for (int s = 1; s <= d; s += 2) {
        prefix += vals[order[s - 1]];
        if (s > 1) prefix += vals[order[s - 2]];
        double violation = 2.0 * prefix - total - static_cast<double>(s - 1);
        if (violation > eps_cut) {
            Cut cut;
            cut.check = -1;
            cut.support = neighborhood;
            cut.subset_v.reserve(s);
            for (int i = 0; i < s; ++i) cut.subset_v.push_back(neighborhood[order[i]]);
            std::sort(cut.subset_v.begin(), cut.subset_v.end());
            cut.violation = violation;
            return cut;
        }
        // once the prefix sum drops to |V| - 1 no larger subset can violate
        if (prefix <= static_cast<double>(s - 1)) return std::nullopt;
    }
    return std::nullopt;
}

std::vector<Cut> find_all_cuts(const ParityCheckCode& code, const std::vector<double>& x,
                               double eps_cut) {
    if (static_cast<int>(x.size()) != code.n)
        throw std::invalid_argument("cuts: point size does not match code length");
    std::vector<Cut> cuts;
    for (int j = 0; j < code.m; ++j) {
        auto cut = find_cut_for_check(x, code.rows[j], eps_cut);
        if (cut) {
            cut->check = j;
            cuts.push_back(std::move(*cut));
        }
    }
    return cuts;
}

}  // namespace lpdec
