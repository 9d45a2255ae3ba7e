#ifndef LPDEC_LP_HPP
#define LPDEC_LP_HPP

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

namespace lpdec {

// Where a constraint came from: a parity check (check >= 0) or a redundant
// parity check formed by row combination (check == -1, rpc_support holds the
// combined row's support). subset_v is the odd-cardinality subset V.
struct ConstraintProvenance {
    int check = -1;
    std::vector<int> rpc_support;
    std::vector<int> subset_v;
};

// one inequality sum(coef * x[var]) <= rhs
struct LinearConstraint {
    std::vector<std::pair<int, double>> terms;
    double rhs = 0.0;
    std::optional<ConstraintProvenance> provenance;
};

// minimize objective . x  subject to  constraints and 0 <= x <= 1.
// at_upper, when nonempty, selects the box side each variable starts on
// (the initial vertex); empty means the side preferred by the objective.
struct LpProblem {
    int n = 0;
    std::vector<double> objective;
    std::vector<LinearConstraint> constraints;
    std::vector<std::uint8_t> at_upper;
};

enum class LpStatus { Optimal, Infeasible, IterationLimit };

struct SolverConfig {
    double eps_feas = 1e-9;
    double eps_opt = 1e-9;
    double pivot_tol = 1e-10;
    int max_pivots = 200000;
    int refactor_interval = 100;
    int bland_stall = 50;  // degenerate pivots before switching to Bland's rule
    bool capture_basis = true;
};

// opaque basis token for warm starts
struct SimplexBasis {
    std::vector<int> basic;                // variable index per basis row
    std::vector<std::uint8_t> var_state;   // per structural+slack variable
    std::vector<double> binv;              // row-major k x k
};

struct LpSolution {
    std::vector<double> x;
    double objective_value = 0.0;
    LpStatus status = LpStatus::Optimal;
    int pivots = 0;
    std::shared_ptr<const SimplexBasis> basis;
};

// Bounded-variable revised simplex over the box [0,1]^n with a growing list
// of <= rows. Slack variables make every row an equality; the dense basis
// inverse is updated per pivot and refactorized periodically. All starting
// bases used here (box vertex with slacks basic, or a previous optimal basis
// extended by the slacks of freshly added rows) are dual feasible, so
// optimization runs dual simplex until primal feasible, then primal simplex.
// Single-threaded; one instance per decode job.
class IncrementalSimplex {
  public:
    explicit IncrementalSimplex(std::vector<double> objective, SolverConfig cfg = {});

    // chooses the nonbasic side per variable for cold starts (default: side
    // preferred by the objective, ties to the lower bound)
    void set_initial_sides(const std::vector<std::uint8_t>& at_upper);

    int add_constraint(LinearConstraint c);
    void add_constraints(const std::vector<LinearConstraint>& cs);

    // optimizes from the current basis (first call: cold box-vertex basis)
    LpSolution solve();

    void reset_cold();
    void install_basis(const SimplexBasis& basis);

    int num_rows() const { return static_cast<int>(rows_.size()); }
    int num_vars() const { return n_; }
    const LinearConstraint& row(int r) const { return rows_[r]; }
    const SolverConfig& config() const { return cfg_; }

  private:
    enum VarState : std::uint8_t { AtLower = 0, AtUpper = 1, Basic = 2 };

    bool is_structural(int v) const { return v < n_; }
    double upper_of(int v) const;
    double cost_of(int v) const { return v < n_ ? objective_[v] : 0.0; }

    void ensure_basis();
    void absorb_pending_rows();
    void refactor();
    void safe_refactor();
    void compute_xb();
    std::vector<double> multiply_binv_col(int var) const;  // Binv * column(var)
    std::vector<double> price_y() const;
    double reduced_cost(int var, const std::vector<double>& y) const;
    void pivot(int row, int entering, const std::vector<double>& w);
    void update_xb(const std::vector<double>& w, double sigma, double t);

    int find_violated_row(bool bland) const;
    bool dual_step(int violated_row, bool bland);  // false when no entering exists
    int find_entering(bool bland) const;
    bool primal_step(int entering, bool bland);  // false on unbounded direction

    double current_value(int var) const;
    std::vector<double> assemble_x() const;
    double residual_violation() const;  // true row residuals, independent of binv drift

    int n_ = 0;
    std::vector<double> objective_;
    SolverConfig cfg_;

    std::vector<LinearConstraint> rows_;
    std::vector<double> rhs_;
    std::vector<std::vector<std::pair<int, double>>> cols_;  // per structural var: (row, coef)
    int absorbed_rows_ = 0;  // rows already present in the basis structures

    bool has_basis_ = false;
    std::vector<int> basic_;
    std::vector<int> basis_pos_;  // var -> basis row, or -1
    std::vector<std::uint8_t> state_;
    std::vector<double> binv_;
    std::vector<double> xb_;
    std::vector<std::uint8_t> initial_at_upper_;

    int pivots_total_ = 0;
    int pivots_since_refactor_ = 0;
    int degenerate_streak_ = 0;
};

LpSolution solve(const LpProblem& problem, const SolverConfig& cfg = {});

// previous must be Optimal for problem (without added). warm reuses the
// previous basis; the previous point typically violates the added rows and
// dual simplex steps restore feasibility. Cold solves from the box vertex.
LpSolution resolve_with_new_constraints(const LpProblem& problem, const LpSolution& previous,
                                        const std::vector<LinearConstraint>& added, bool warm,
                                        const SolverConfig& cfg = {});

// plain-text dump (format documented in the README) for external cross-checks
void dump_lp(const LpProblem& problem, std::ostream& out);

}  // namespace lpdec

#endif
