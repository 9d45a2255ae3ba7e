#include "lpdec/bp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lpdec {

namespace {

double clip(double v, double lim) { return std::min(lim, std::max(-lim, v)); }

}  // namespace

BpResult sum_product_decode(const ParityCheckCode& code, const LlrVector& gamma,
                            const BpConfig& cfg) {
    if (static_cast<int>(gamma.size()) != code.n)
        throw std::invalid_argument("bp: gamma size does not match code length");
    if (cfg.max_iterations < 1) throw std::invalid_argument("bp: max_iterations must be >= 1");

    std::vector<int> offset(code.m + 1, 0);
    for (int j = 0; j < code.m; ++j)
        offset[j + 1] = offset[j] + static_cast<int>(code.rows[j].size());
    int edges = offset[code.m];
    std::vector<int> var_of(edges);
    for (int j = 0; j < code.m; ++j)
        for (std::size_t i = 0; i < code.rows[j].size(); ++i)
            var_of[offset[j] + static_cast<int>(i)] = code.rows[j][i];

    std::vector<double> v2c(edges), c2v(edges, 0.0);
    for (int e = 0; e < edges; ++e) v2c[e] = clip(gamma[var_of[e]], cfg.l_max);

    std::vector<double> totals(code.n);
    BitVector hard(code.n, 0);
    std::vector<double> t, pre, suf;
    for (int iter = 1; iter <= cfg.max_iterations; ++iter) {
        for (int j = 0; j < code.m; ++j) {
            int d = offset[j + 1] - offset[j];
            t.assign(d, 0.0);
            for (int i = 0; i < d; ++i) t[i] = std::tanh(0.5 * v2c[offset[j] + i]);
            pre.assign(d + 1, 1.0);
            suf.assign(d + 1, 1.0);
            for (int i = 0; i < d; ++i) pre[i + 1] = pre[i] * t[i];
            for (int i = d - 1; i >= 0; --i) suf[i] = suf[i + 1] * t[i];
            for (int i = 0; i < d; ++i) {
                double p = clip(pre[i] * suf[i + 1], 1.0 - 1e-15);
                c2v[offset[j] + i] = clip(2.0 * std::atanh(p), cfg.l_max);
            }
        }
        std::copy(gamma.begin(), gamma.end(), totals.begin());
        for (int e = 0; e < edges; ++e) totals[var_of[e]] += c2v[e];
        for (int v = 0; v < code.n; ++v) hard[v] = totals[v] < 0.0 ? 1 : 0;
        if (code.is_codeword(hard)) return {hard, true, iter};
        for (int e = 0; e < edges; ++e) v2c[e] = clip(totals[var_of[e]] - c2v[e], cfg.l_max);
    }
    return {hard, false, cfg.max_iterations};
}

}  // namespace lpdec
