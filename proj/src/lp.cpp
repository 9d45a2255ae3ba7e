#include "lpdec/lp.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace lpdec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDegenStep = 1e-12;
constexpr double kTieEps = 1e-12;

}  // namespace

IncrementalSimplex::IncrementalSimplex(std::vector<double> objective, SolverConfig cfg)
    : n_(static_cast<int>(objective.size())), objective_(std::move(objective)), cfg_(cfg) {
    if (n_ <= 0) throw std::invalid_argument("lp: objective is empty");
    for (double g : objective_) {
        if (!std::isfinite(g)) throw std::invalid_argument("lp: objective has a non-finite entry");
    }
    cols_.resize(n_);
    state_.assign(n_, AtLower);
    basis_pos_.assign(n_, -1);
}

double IncrementalSimplex::upper_of(int v) const { return v < n_ ? 1.0 : kInf; }

void IncrementalSimplex::set_initial_sides(const std::vector<std::uint8_t>& at_upper) {
    if (static_cast<int>(at_upper.size()) != n_)
        throw std::invalid_argument("lp: initial side vector size mismatch");
    initial_at_upper_ = at_upper;
}

int IncrementalSimplex::add_constraint(LinearConstraint c) {
    c.terms.erase(std::remove_if(c.terms.begin(), c.terms.end(),
                                 [](const auto& t) { return t.second == 0.0; }),
                  c.terms.end());
    if (c.terms.empty()) throw std::invalid_argument("lp: constraint has no nonzero terms");
    std::sort(c.terms.begin(), c.terms.end());
    for (std::size_t i = 0; i < c.terms.size(); ++i) {
        int v = c.terms[i].first;
        if (v < 0 || v >= n_) throw std::invalid_argument("lp: constraint variable out of range");
        if (i > 0 && c.terms[i - 1].first == v)
            throw std::invalid_argument("lp: duplicate variable in constraint");
        if (!std::isfinite(c.terms[i].second) || !std::isfinite(c.rhs))
            throw std::invalid_argument("lp: constraint has a non-finite value");
    }
    int r = static_cast<int>(rows_.size());
    for (const auto& [v, a] : c.terms) cols_[v].push_back({r, a});
    rhs_.push_back(c.rhs);
    rows_.push_back(std::move(c));
    state_.push_back(AtLower);
    basis_pos_.push_back(-1);
    return r;
}

void IncrementalSimplex::add_constraints(const std::vector<LinearConstraint>& cs) {
    for (const auto& c : cs) add_constraint(c);
}

void IncrementalSimplex::reset_cold() { has_basis_ = false; }

void IncrementalSimplex::ensure_basis() {
    if (has_basis_) {
        absorb_pending_rows();
        return;
    }
    int k = num_rows();
    for (int j = 0; j < n_; ++j) {
        bool up = initial_at_upper_.empty() ? objective_[j] < 0.0 : initial_at_upper_[j] != 0;
        state_[j] = up ? AtUpper : AtLower;
        basis_pos_[j] = -1;
    }
    basic_.resize(k);
    for (int r = 0; r < k; ++r) {
        basic_[r] = n_ + r;
        state_[n_ + r] = Basic;
        basis_pos_[n_ + r] = r;
    }
    binv_.assign(static_cast<std::size_t>(k) * k, 0.0);
    for (int r = 0; r < k; ++r) binv_[static_cast<std::size_t>(r) * k + r] = 1.0;
    absorbed_rows_ = k;
    has_basis_ = true;
    pivots_since_refactor_ = 0;
    degenerate_streak_ = 0;
    compute_xb();
}

// Extends the basis with the slacks of rows added since the last solve. With
// the new slacks basic the inverse of [[B, 0], [C, I]] is [[Binv, 0],
// [-C*Binv, I]], where C holds the new rows' coefficients on the old basic
// columns.
void IncrementalSimplex::absorb_pending_rows() {
    int k = absorbed_rows_;
    int p = num_rows() - k;
    if (p <= 0) return;
    int kn = k + p;
    std::vector<double> nb(static_cast<std::size_t>(kn) * kn, 0.0);
    for (int r = 0; r < k; ++r)
        std::copy(binv_.begin() + static_cast<std::size_t>(r) * k,
                  binv_.begin() + static_cast<std::size_t>(r) * k + k,
                  nb.begin() + static_cast<std::size_t>(r) * kn);
    for (int i = 0; i < p; ++i) {
        int r = k + i;
        double* row = &nb[static_cast<std::size_t>(r) * kn];
        row[r] = 1.0;
        for (const auto& [v, a] : rows_[r].terms) {
            if (state_[v] != Basic) continue;
            const double* bp = &binv_[static_cast<std::size_t>(basis_pos_[v]) * k];
            for (int j = 0; j < k; ++j) row[j] -= a * bp[j];
        }
    }
    binv_ = std::move(nb);
    for (int i = 0; i < p; ++i) {
        int r = k + i;
        double s = rhs_[r];
        for (const auto& [v, a] : rows_[r].terms) s -= a * current_value(v);
        basic_.push_back(n_ + r);
        state_[n_ + r] = Basic;
        basis_pos_[n_ + r] = static_cast<int>(basic_.size()) - 1;
        xb_.push_back(s);
    }
    absorbed_rows_ = kn;
}

void IncrementalSimplex::refactor() {
    int k = num_rows();
    std::vector<double> m(static_cast<std::size_t>(k) * k, 0.0);
    for (int pos = 0; pos < k; ++pos) {
        int v = basic_[pos];
        if (is_structural(v)) {
            for (const auto& [r, a] : cols_[v]) m[static_cast<std::size_t>(r) * k + pos] = a;
        } else {
            m[static_cast<std::size_t>(v - n_) * k + pos] = 1.0;
        }
    }
    std::vector<double> inv(static_cast<std::size_t>(k) * k, 0.0);
    for (int i = 0; i < k; ++i) inv[static_cast<std::size_t>(i) * k + i] = 1.0;
    for (int col = 0; col < k; ++col) {
        int piv = -1;
        double best = 1e-12;
        for (int r = col; r < k; ++r) {
            double v = std::fabs(m[static_cast<std::size_t>(r) * k + col]);
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (piv < 0) throw std::runtime_error("lp: singular basis during refactorization");
        if (piv != col) {
            for (int j = 0; j < k; ++j) {
                std::swap(m[static_cast<std::size_t>(piv) * k + j],
                          m[static_cast<std::size_t>(col) * k + j]);
                std::swap(inv[static_cast<std::size_t>(piv) * k + j],
                          inv[static_cast<std::size_t>(col) * k + j]);
            }
        }
        double d = 1.0 / m[static_cast<std::size_t>(col) * k + col];
        for (int j = 0; j < k; ++j) {
            m[static_cast<std::size_t>(col) * k + j] *= d;
            inv[static_cast<std::size_t>(col) * k + j] *= d;
        }
        for (int r = 0; r < k; ++r) {
            if (r == col) continue;
            double f = m[static_cast<std::size_t>(r) * k + col];
            if (f == 0.0) continue;
            for (int j = 0; j < k; ++j) {
                m[static_cast<std::size_t>(r) * k + j] -= f * m[static_cast<std::size_t>(col) * k + j];
                inv[static_cast<std::size_t>(r) * k + j] -=
                    f * inv[static_cast<std::size_t>(col) * k + j];
            }
        }
    }
    binv_ = std::move(inv);
    pivots_since_refactor_ = 0;
    compute_xb();
}

// A numerically singular basis is abandoned for a fresh box-vertex basis,
// which is always dual feasible, so optimization can continue.
void IncrementalSimplex::safe_refactor() {
    try {
        refactor();
    } catch (const std::runtime_error&) {
        has_basis_ = false;
        ensure_basis();
    }
}

void IncrementalSimplex::compute_xb() {
    int k = num_rows();
    std::vector<double> acc(rhs_.begin(), rhs_.end());
    for (int j = 0; j < n_; ++j) {
        if (state_[j] != AtUpper) continue;
        for (const auto& [r, a] : cols_[j]) acc[r] -= a;
    }
    xb_.assign(k, 0.0);
    for (int pos = 0; pos < k; ++pos) {
        const double* bp = &binv_[static_cast<std::size_t>(pos) * k];
        double s = 0.0;
        for (int r = 0; r < k; ++r) s += bp[r] * acc[r];
        xb_[pos] = s;
    }
}

std::vector<double> IncrementalSimplex::multiply_binv_col(int var) const {
    int k = num_rows();
    std::vector<double> w(k, 0.0);
    if (is_structural(var)) {
        for (int pos = 0; pos < k; ++pos) {
            const double* bp = &binv_[static_cast<std::size_t>(pos) * k];
            double s = 0.0;
            for (const auto& [r, a] : cols_[var]) s += a * bp[r];
            w[pos] = s;
        }
    } else {
        int r = var - n_;
        for (int pos = 0; pos < k; ++pos) w[pos] = binv_[static_cast<std::size_t>(pos) * k + r];
    }
    return w;
}

std::vector<double> IncrementalSimplex::price_y() const {
    int k = num_rows();
    std::vector<double> y(k, 0.0);
    for (int pos = 0; pos < k; ++pos) {
        double c = cost_of(basic_[pos]);
        if (c == 0.0) continue;
        const double* bp = &binv_[static_cast<std::size_t>(pos) * k];
        for (int r = 0; r < k; ++r) y[r] += c * bp[r];
    }
    return y;
}

double IncrementalSimplex::reduced_cost(int var, const std::vector<double>& y) const {
    if (!is_structural(var)) return -y[var - n_];
    double d = objective_[var];
    for (const auto& [r, a] : cols_[var]) d -= a * y[r];
    return d;
}

void IncrementalSimplex::pivot(int row, int entering, const std::vector<double>& w) {
    int k = num_rows();
    double* rp = &binv_[static_cast<std::size_t>(row) * k];
    double inv = 1.0 / w[row];
    for (int j = 0; j < k; ++j) rp[j] *= inv;
    for (int r = 0; r < k; ++r) {
        if (r == row) continue;
        double f = w[r];
        if (f == 0.0) continue;
        double* rr = &binv_[static_cast<std::size_t>(r) * k];
        for (int j = 0; j < k; ++j) rr[j] -= f * rp[j];
    }
    basis_pos_[basic_[row]] = -1;
    basic_[row] = entering;
    basis_pos_[entering] = row;
    state_[entering] = Basic;
    ++pivots_since_refactor_;
}

void IncrementalSimplex::update_xb(const std::vector<double>& w, double sigma, double t) {
    double step = sigma * t;
    if (step == 0.0) return;
    int k = num_rows();
    for (int p = 0; p < k; ++p) xb_[p] -= step * w[p];
}

int IncrementalSimplex::find_violated_row(bool bland) const {
    int k = num_rows();
    int best = -1;
    double worst = cfg_.eps_feas;
    for (int p = 0; p < k; ++p) {
        double v = 0.0;
        if (xb_[p] < 0.0) {
            v = -xb_[p];
        } else {
            double ub = upper_of(basic_[p]);
            if (xb_[p] > ub) v = xb_[p] - ub;
        }
        if (v <= cfg_.eps_feas) continue;
        if (bland) {
            if (best < 0 || basic_[p] < basic_[best]) best = p;
        } else if (v > worst) {
            worst = v;
            best = p;
        }
    }
    return best;
}

bool IncrementalSimplex::dual_step(int violated_row, bool bland) {
    int k = num_rows();
    int bv = basic_[violated_row];
    double xbp = xb_[violated_row];
    bool need_increase = xbp < 0.0;
    double target = need_increase ? 0.0 : upper_of(bv);
    const double* rho = &binv_[static_cast<std::size_t>(violated_row) * k];
    std::vector<double> y = price_y();

    int e = -1;
    double best_ratio = kInf;
    double best_alpha = 0.0;
    int total = n_ + k;
    for (int j = 0; j < total; ++j) {
        std::uint8_t st = state_[j];
        if (st == Basic) continue;
        double alpha;
        if (is_structural(j)) {
            alpha = 0.0;
            for (const auto& [r, a] : cols_[j]) alpha += a * rho[r];
        } else {
            alpha = rho[j - n_];
        }
        if (std::fabs(alpha) <= cfg_.pivot_tol) continue;
        bool eligible = need_increase ? (st == AtLower ? alpha < 0.0 : alpha > 0.0)
                                      : (st == AtLower ? alpha > 0.0 : alpha < 0.0);
        if (!eligible) continue;
        double d = reduced_cost(j, y);
        double dd = st == AtLower ? std::max(d, 0.0) : std::max(-d, 0.0);
        double ratio = dd / std::fabs(alpha);
        bool take;
        if (e < 0 || ratio < best_ratio - kTieEps) {
            take = true;
        } else if (ratio < best_ratio + kTieEps) {
            take = bland ? j < e : std::fabs(alpha) > std::fabs(best_alpha);
        } else {
            take = false;
        }
        if (take) {
            e = j;
            best_ratio = ratio;
            best_alpha = alpha;
        }
    }
    if (e < 0) return false;

    std::vector<double> w = multiply_binv_col(e);
    double sigma = state_[e] == AtUpper ? -1.0 : 1.0;
    double t = (xbp - target) / (sigma * w[violated_row]);
    if (!(t > 0.0)) t = 0.0;
    update_xb(w, sigma, t);
    double enter_value = sigma > 0.0 ? t : upper_of(e) - t;
    pivot(violated_row, e, w);
    state_[bv] = need_increase ? AtLower : AtUpper;
    xb_[violated_row] = enter_value;
    ++pivots_total_;
    degenerate_streak_ = t <= kDegenStep ? degenerate_streak_ + 1 : 0;
    return true;
}

int IncrementalSimplex::find_entering(bool bland) const {
    std::vector<double> y = price_y();
    int total = n_ + num_rows();
    int best = -1;
    double best_score = cfg_.eps_opt;
    for (int j = 0; j < total; ++j) {
        std::uint8_t st = state_[j];
        if (st == Basic) continue;
        double d = reduced_cost(j, y);
        double score = st == AtLower ? -d : d;
        if (score <= cfg_.eps_opt) continue;
        if (bland) return j;
        if (score > best_score) {
            best_score = score;
            best = j;
        }
    }
    return best;
}

bool IncrementalSimplex::primal_step(int entering, bool bland) {
    int k = num_rows();
    std::vector<double> w = multiply_binv_col(entering);
    double sigma = state_[entering] == AtUpper ? -1.0 : 1.0;
    double range = upper_of(entering);
    double t_best = range;  // bound flip when no row blocks earlier
    int leave = -1;
    bool to_upper = false;
    double w_best = 0.0;
    for (int p = 0; p < k; ++p) {
        double delta = -sigma * w[p];
        if (std::fabs(delta) <= cfg_.pivot_tol) continue;
        double limit;
        bool cand_upper;
        if (delta < 0.0) {
            limit = xb_[p] / (-delta);
            cand_upper = false;
        } else {
            double ub = upper_of(basic_[p]);
            if (ub == kInf) continue;
            limit = (ub - xb_[p]) / delta;
            cand_upper = true;
        }
        if (limit < 0.0) limit = 0.0;
        bool take;
        if (limit < t_best - kTieEps) {
            take = true;
        } else if (leave >= 0 && limit < t_best + kTieEps) {
            take = bland ? basic_[p] < basic_[leave] : std::fabs(w[p]) > std::fabs(w_best);
        } else {
            take = false;
        }
        if (take) {
            t_best = limit;
            leave = p;
            to_upper = cand_upper;
            w_best = w[p];
        }
    }
    if (leave < 0 && t_best == kInf) return false;
    update_xb(w, sigma, t_best);
    if (leave < 0) {
        state_[entering] = state_[entering] == AtLower ? AtUpper : AtLower;
    } else {
        int bv = basic_[leave];
        double enter_value = sigma > 0.0 ? t_best : range - t_best;
        pivot(leave, entering, w);
        state_[bv] = to_upper ? AtUpper : AtLower;
        xb_[leave] = enter_value;
    }
    ++pivots_total_;
    degenerate_streak_ = t_best <= kDegenStep ? degenerate_streak_ + 1 : 0;
    return true;
}

double IncrementalSimplex::current_value(int var) const {
    switch (state_[var]) {
        case AtLower:
            return 0.0;
        case AtUpper:
            return upper_of(var);
        default:
            return xb_[basis_pos_[var]];
    }
}

std::vector<double> IncrementalSimplex::assemble_x() const {
    std::vector<double> x(n_);
    for (int j = 0; j < n_; ++j) x[j] = std::min(1.0, std::max(0.0, current_value(j)));
    return x;
}

double IncrementalSimplex::residual_violation() const {
    double worst = 0.0;
    for (int r = 0; r < num_rows(); ++r) {
        double s = -rhs_[r];
        for (const auto& [v, a] : rows_[r].terms) s += a * current_value(v);
        worst = std::max(worst, s);
    }
    return worst;
}

LpSolution IncrementalSimplex::solve() {
    ensure_basis();
    int start_pivots = pivots_total_;
    LpStatus status = LpStatus::IterationLimit;
    bool verify_refactored = false;
    while (true) {
        if (pivots_total_ - start_pivots >= cfg_.max_pivots) {
            status = LpStatus::IterationLimit;
            break;
        }
        if (pivots_since_refactor_ >= cfg_.refactor_interval) safe_refactor();
        bool bland = degenerate_streak_ >= cfg_.bland_stall;
        int vrow = find_violated_row(bland);
        if (vrow >= 0) {
            verify_refactored = false;
            if (!dual_step(vrow, bland)) {
                status = LpStatus::Infeasible;
                break;
            }
            continue;
        }
        int e = find_entering(bland);
        if (e >= 0) {
            verify_refactored = false;
            if (!primal_step(e, bland)) {
                status = LpStatus::Infeasible;
                break;
            }
            continue;
        }
        compute_xb();
        if (find_violated_row(false) >= 0) continue;
        if (!verify_refactored && residual_violation() > cfg_.eps_feas) {
            safe_refactor();
            verify_refactored = true;
            continue;
        }
        status = LpStatus::Optimal;
        break;
    }
    LpSolution sol;
    sol.status = status;
    sol.pivots = pivots_total_ - start_pivots;
    sol.x = assemble_x();
    double obj = 0.0;
    for (int j = 0; j < n_; ++j) obj += objective_[j] * sol.x[j];
    sol.objective_value = obj;
    if (status == LpStatus::Optimal && cfg_.capture_basis) {
        auto tok = std::make_shared<SimplexBasis>();
        tok->basic = basic_;
        tok->var_state.assign(state_.begin(), state_.end());
        tok->binv = binv_;
        sol.basis = std::move(tok);
    }
    return sol;
}

void IncrementalSimplex::install_basis(const SimplexBasis& basis) {
    int k = num_rows();
    if (static_cast<int>(basis.basic.size()) != k ||
        static_cast<int>(basis.var_state.size()) != n_ + k ||
        basis.binv.size() != static_cast<std::size_t>(k) * k)
        throw std::invalid_argument("lp: basis token does not match problem shape");
    int basics = 0;
    for (std::uint8_t s : basis.var_state) {
        if (s > Basic) throw std::invalid_argument("lp: basis token has an invalid state");
        if (s == Basic) ++basics;
    }
    if (basics != k) throw std::invalid_argument("lp: basis token has wrong basic count");
    for (int p = 0; p < k; ++p) {
        int v = basis.basic[p];
        if (v < 0 || v >= n_ + k || basis.var_state[v] != Basic)
            throw std::invalid_argument("lp: basis token is inconsistent");
    }
    basic_ = basis.basic;
    state_.assign(basis.var_state.begin(), basis.var_state.end());
    binv_ = basis.binv;
    basis_pos_.assign(n_ + k, -1);
    for (int p = 0; p < k; ++p) basis_pos_[basic_[p]] = p;
    absorbed_rows_ = k;
    has_basis_ = true;
    pivots_since_refactor_ = 0;
    degenerate_streak_ = 0;
    compute_xb();
}

LpSolution solve(const LpProblem& problem, const SolverConfig& cfg) {
    if (static_cast<int>(problem.objective.size()) != problem.n)
        throw std::invalid_argument("lp: objective size does not match n");
    IncrementalSimplex s(problem.objective, cfg);
    if (!problem.at_upper.empty()) s.set_initial_sides(problem.at_upper);
    s.add_constraints(problem.constraints);
    return s.solve();
}

LpSolution resolve_with_new_constraints(const LpProblem& problem, const LpSolution& previous,
                                        const std::vector<LinearConstraint>& added, bool warm,
                                        const SolverConfig& cfg) {
    if (static_cast<int>(problem.objective.size()) != problem.n)
        throw std::invalid_argument("lp: objective size does not match n");
    IncrementalSimplex s(problem.objective, cfg);
    if (!problem.at_upper.empty()) s.set_initial_sides(problem.at_upper);
    s.add_constraints(problem.constraints);
    if (warm) {
        if (previous.status != LpStatus::Optimal || !previous.basis)
            throw std::invalid_argument("lp: warm resolve requires an optimal basis token");
        s.install_basis(*previous.basis);
    }
    s.add_constraints(added);
    return s.solve();
}

void dump_lp(const LpProblem& problem, std::ostream& out) {
    out << std::setprecision(17);
    out << "lp " << problem.n << ' ' << problem.constraints.size() << '\n';
    out << "min";
    for (double g : problem.objective) out << ' ' << g;
    out << '\n';
    out << "start ";
    for (int j = 0; j < problem.n; ++j) {
        bool up = problem.at_upper.empty() ? problem.objective[j] < 0.0 : problem.at_upper[j] != 0;
        out << (up ? 'U' : 'L');
    }
    out << '\n';
    for (const auto& c : problem.constraints) {
        out << "row " << c.rhs << ' ' << c.terms.size();
        for (const auto& [v, a] : c.terms) out << ' ' << v << ' ' << a;
        out << '\n';
    }
}

}  // namespace lpdec
