#include "lpdec/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lpdec {

std::vector<std::uint8_t> initial_sides(const LlrVector& gamma) {
    std::vector<std::uint8_t> up(gamma.size());
    for (std::size_t i = 0; i < gamma.size(); ++i) up[i] = gamma[i] < 0.0 ? 1 : 0;
    return up;
}

std::vector<LinearConstraint> initial_constraints(const LlrVector& gamma) {
    std::vector<LinearConstraint> cs;
    cs.reserve(gamma.size());
    for (std::size_t i = 0; i < gamma.size(); ++i) {
        LinearConstraint c;
        if (gamma[i] < 0.0) {
            c.terms = {{static_cast<int>(i), 1.0}};
            c.rhs = 1.0;
        } else {
            c.terms = {{static_cast<int>(i), -1.0}};
            c.rhs = 0.0;
        }
        cs.push_back(std::move(c));
    }
    return cs;
}

namespace detail {

AdaptiveCore::AdaptiveCore(const ParityCheckCode& code, const LlrVector& gamma,
                           const DecodeOptions& opts)
    : code_(code), gamma_(gamma), opts_(opts), lp_([&] {
          SolverConfig sc = opts.solver;
          sc.capture_basis = false;
          return IncrementalSimplex(gamma, sc);
      }()) {
    if (static_cast<int>(gamma.size()) != code.n)
        throw std::invalid_argument("decode: gamma size does not match code length");
    lp_.set_initial_sides(initial_sides(gamma));
}

LpSolution AdaptiveCore::solve_once() {
    if (!opts_.warm_start) lp_.reset_cold();
    LpSolution sol = lp_.solve();
    ++iterations_;
    pivots_ += sol.pivots;
    return sol;
}

void AdaptiveCore::add_rows(const std::vector<LinearConstraint>& rows) {
    lp_.add_constraints(rows);
}

bool AdaptiveCore::run(int iteration_cap) {
    int spent = 0;
    while (spent < iteration_cap) {
        last_ = solve_once();
        ++spent;
        if (last_.status != LpStatus::Optimal) {
            lp_failed_ = true;
            stats_.push_back({0, last_.pivots, last_.objective_value});
            return false;
        }
        std::vector<Cut> cuts = find_all_cuts(code_, last_.x, opts_.eps_cut);
        if (opts_.max_cuts_per_iteration > 0 &&
            static_cast<int>(cuts.size()) > opts_.max_cuts_per_iteration) {
            std::stable_sort(cuts.begin(), cuts.end(),
                             [](const Cut& a, const Cut& b) { return a.violation > b.violation; });
            cuts.resize(opts_.max_cuts_per_iteration);
            std::stable_sort(cuts.begin(), cuts.end(),
                             [](const Cut& a, const Cut& b) { return a.check < b.check; });
        }
        stats_.push_back({static_cast<int>(cuts.size()), last_.pivots, last_.objective_value});
        if (cuts.empty()) return true;
        cuts_added_ += static_cast<int>(cuts.size());
        for (const Cut& c : cuts) lp_.add_constraint(to_constraint(c));
    }
    return false;
}

DecodeOutcome package_outcome(const AdaptiveCore& core, const ParityCheckCode& code,
                              const DecodeOptions& opts, bool hit_limit,
                              std::chrono::nanoseconds elapsed) {
    DecodeOutcome out;
    out.x = core.last().x;
    out.iterations = core.iterations();
    out.cuts_added_total = core.cuts_added();
    out.final_parity_constraints = core.parity_rows();
    out.lp_pivots_total = core.pivots();
    out.elapsed = elapsed;
    out.per_iteration = core.per_iteration();
    out.objective_value = core.last().objective_value;

    out.hard.assign(code.n, 0);
    bool integral = true;
    for (int i = 0; i < code.n; ++i) {
        double v = out.x[i];
        int b = v >= 0.5 ? 1 : 0;
        out.hard[i] = static_cast<std::uint8_t>(b);
        if (std::fabs(v - b) > opts.epsilon_int) integral = false;
    }
    out.integral = integral;
    if (hit_limit || core.lp_failed()) {
        out.status = DecodeStatus::LimitExceeded;
    } else if (integral) {
        out.status = DecodeStatus::MlCodeword;
    } else {
        out.status = DecodeStatus::Pseudocodeword;
    }
    if (out.status != DecodeStatus::MlCodeword) out.hard.clear();
    return out;
}

}  // namespace detail

DecodeOutcome decode_adaptive(const ParityCheckCode& code, const LlrVector& gamma,
                              const DecodeOptions& opts) {
    auto t0 = std::chrono::steady_clock::now();
    detail::AdaptiveCore core(code, gamma, opts);
    int cap = opts.max_iterations > 0 ? opts.max_iterations : code.n;
    if (cap < 1) throw std::invalid_argument("decode: max_iterations must be >= 1");
    bool fixed_point = core.run(cap);
    auto elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(
        std::chrono::steady_clock::now() - t0);
    return detail::package_outcome(core, code, opts, !fixed_point, elapsed);
}

DecodeOutcome decode_standard(const ParityCheckCode& code, const LlrVector& gamma,
                              const DecodeOptions& opts) {
    if (static_cast<int>(gamma.size()) != code.n)
        throw std::invalid_argument("decode: gamma size does not match code length");
    if (code.max_check_degree() > 14)
        throw std::invalid_argument("decode: standard LP limited to check degree 14");
    auto t0 = std::chrono::steady_clock::now();
    SolverConfig sc = opts.solver;
    sc.capture_basis = false;
    IncrementalSimplex lp(gamma, sc);
    lp.set_initial_sides(initial_sides(gamma));
    int rows = 0;
    for (int j = 0; j < code.m; ++j) {
        const auto& support = code.rows[j];
        int d = static_cast<int>(support.size());
        for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
            int pop = __builtin_popcount(mask);
            if (pop % 2 == 0) continue;
            LinearConstraint c;
            c.terms.reserve(d);
            for (int i = 0; i < d; ++i)
                c.terms.push_back({support[i], (mask >> i) & 1u ? 1.0 : -1.0});
            c.rhs = static_cast<double>(pop) - 1.0;
            ConstraintProvenance p;
            p.check = j;
            for (int i = 0; i < d; ++i)
                if ((mask >> i) & 1u) p.subset_v.push_back(support[i]);
            c.provenance = std::move(p);
            lp.add_constraint(std::move(c));
            ++rows;
        }
    }
    LpSolution sol = lp.solve();
    auto elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(
        std::chrono::steady_clock::now() - t0);

    DecodeOutcome out;
    out.x = sol.x;
    out.objective_value = sol.objective_value;
    out.iterations = 1;
    out.cuts_added_total = 0;
    out.final_parity_constraints = rows;
    out.lp_pivots_total = sol.pivots;
    out.elapsed = elapsed;
    out.per_iteration = {{0, sol.pivots, sol.objective_value}};
    out.hard.assign(code.n, 0);
    bool integral = true;
    for (int i = 0; i < code.n; ++i) {
        double v = sol.x[i];
        int b = v >= 0.5 ? 1 : 0;
        out.hard[i] = static_cast<std::uint8_t>(b);
        if (std::fabs(v - b) > opts.epsilon_int) integral = false;
    }
    out.integral = integral;
    if (sol.status != LpStatus::Optimal) {
        out.status = DecodeStatus::LimitExceeded;
    } else {
        out.status = integral ? DecodeStatus::MlCodeword : DecodeStatus::Pseudocodeword;
    }
    if (out.status != DecodeStatus::MlCodeword) out.hard.clear();
    return out;
}

bool verify_pseudocodeword_integrality(const DecodeOutcome& outcome, int q, double epsilon_int) {
    int n = static_cast<int>(outcome.x.size());
    int integer_coords = 0;
    for (double v : outcome.x) {
        double r = std::fabs(v - std::round(v));
        if (r <= epsilon_int) ++integer_coords;
    }
    return integer_coords >= n - q;
}

}  // namespace lpdec
