#include <doctest.h>

#include <cmath>
#include <sstream>

#include "lpdec/lp.hpp"
#include "lpdec/rng.hpp"
#include "oracles.hpp"

using namespace lpdec;

namespace {

LinearConstraint leq(std::vector<std::pair<int, double>> terms, double rhs) {
    LinearConstraint c;
    c.terms = std::move(terms);
    c.rhs = rhs;
    return c;
}

LpProblem make_problem(int n, std::vector<double> obj, std::vector<LinearConstraint> cs) {
    LpProblem p;
    p.n = n;
    p.objective = std::move(obj);
    p.constraints = std::move(cs);
    return p;
}

oracles::DenseLp to_oracle(const LpProblem& p) {
    oracles::DenseLp d;
    d.n = p.n;
    d.c = p.objective;
    for (const auto& row : p.constraints) {
        std::vector<double> a(p.n, 0.0);
        for (auto [v, coef] : row.terms) a[v] = coef;
        d.a.push_back(std::move(a));
        d.b.push_back(row.rhs);
    }
    return d;
}

}  // namespace

TEST_CASE("unconstrained box minimum picks the objective-preferred corner") {
    auto sol = solve(make_problem(2, {1.0, -1.0}, {}));
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.x[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(sol.x[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sol.objective_value == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(sol.pivots == 0);
}

TEST_CASE("chained equalities force agreement across a repetition code") {
    // checks {0,1} and {1,2} expanded to all size-1 odd subsets give
    // x0 = x1 = x2; two negative costs beat the one positive one
    std::vector<LinearConstraint> cs = {
        leq({{0, 1.0}, {1, -1.0}}, 0.0),
        leq({{1, 1.0}, {0, -1.0}}, 0.0),
        leq({{1, 1.0}, {2, -1.0}}, 0.0),
        leq({{2, 1.0}, {1, -1.0}}, 0.0),
    };
    auto sol = solve(make_problem(3, {-1.0, -1.0, 0.5}, cs));
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective_value == doctest::Approx(-1.5).epsilon(1e-9));
    for (int i = 0; i < 3; ++i) CHECK(sol.x[i] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("a single parity cut caps the attractive variable") {
    auto sol = solve(make_problem(3, {-1.0, 0.1, 0.1},
                                  {leq({{0, 1.0}, {1, -1.0}, {2, -1.0}}, 0.0)}));
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective_value == doctest::Approx(-0.9).epsilon(1e-9));
    CHECK(sol.x[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sol.x[1] + sol.x[2] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("infeasible rows are detected") {
    auto sol = solve(make_problem(2, {1.0, 1.0}, {leq({{0, -1.0}}, -2.0)}));
    CHECK(sol.status == LpStatus::Infeasible);

    // pair of rows that cannot hold together inside the box
    auto sol2 = solve(make_problem(1, {0.0},
                                   {leq({{0, 1.0}}, 0.2), leq({{0, -1.0}}, -0.8)}));
    CHECK(sol2.status == LpStatus::Infeasible);
}

TEST_CASE("iteration limit reports cleanly") {
    SolverConfig cfg;
    cfg.max_pivots = 1;
    // equality chain over six variables; three start on the wrong side, so
    // no single pivot can reach the optimum
    std::vector<LinearConstraint> cs;
    for (int i = 0; i + 1 < 6; ++i) {
        cs.push_back(leq({{i, 1.0}, {i + 1, -1.0}}, 0.0));
        cs.push_back(leq({{i + 1, 1.0}, {i, -1.0}}, 0.0));
    }
    auto sol = solve(make_problem(6, {-1.0, 0.9, -1.0, 0.9, -1.0, 0.9}, cs), cfg);
    CHECK(sol.status == LpStatus::IterationLimit);
}

TEST_CASE("initial side hint is honored and irrelevant to the optimum") {
    auto p = make_problem(2, {-1.0, 2.0}, {leq({{0, 1.0}, {1, -1.0}}, 0.0)});
    p.at_upper = {0, 0};
    auto a = solve(p);
    p.at_upper = {1, 1};
    auto b = solve(p);
    REQUIRE(a.status == LpStatus::Optimal);
    REQUIRE(b.status == LpStatus::Optimal);
    CHECK(a.objective_value == doctest::Approx(b.objective_value).epsilon(1e-9));
    CHECK(a.objective_value == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("random parity-style instances match vertex enumeration") {
    Rng rng(77);
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
        int n = 3 + static_cast<int>(rng.next_below(3));
        int k = static_cast<int>(rng.next_below(7));
        LpProblem p;
        p.n = n;
        p.objective.resize(n);
        for (auto& g : p.objective) g = 4.0 * rng.next_unit() - 2.0;
        for (int r = 0; r < k; ++r) {
            int d = 2 + static_cast<int>(rng.next_below(n - 1));
            std::vector<int> vars(n);
            for (int i = 0; i < n; ++i) vars[i] = i;
            rng.shuffle(vars);
            vars.resize(d);
            std::sort(vars.begin(), vars.end());
            std::vector<std::pair<int, double>> terms;
            int plus = 0;
            for (int v : vars) {
                bool up = rng.next_below(2) == 0;
                plus += up ? 1 : 0;
                terms.push_back({v, up ? 1.0 : -1.0});
            }
            // rhs >= 0 keeps the origin feasible, same shape as parity cuts
            p.constraints.push_back(leq(std::move(terms), std::max(0, plus - 1)));
        }
        auto sol = solve(p);
        REQUIRE(sol.status == LpStatus::Optimal);
        auto oracle = oracles::lp_by_vertex_enumeration(to_oracle(p));
        REQUIRE(oracle.has_value());
        CHECK(sol.objective_value == doctest::Approx(*oracle).epsilon(1e-7));
        // returned point must be feasible
        for (const auto& row : p.constraints) {
            double lhs = 0.0;
            for (auto [v, coef] : row.terms) lhs += coef * sol.x[v];
            CHECK(lhs <= row.rhs + 1e-7);
        }
        for (double v : sol.x) {
            CHECK(v >= -1e-9);
            CHECK(v <= 1.0 + 1e-9);
        }
        ++checked;
    }
    CHECK(checked == 300);
}

TEST_CASE("warm resolve agrees with cold resolve after adding a cut") {
    Rng rng(19);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 4 + static_cast<int>(rng.next_below(3));
        LpProblem p;
        p.n = n;
        p.objective.resize(n);
        for (auto& g : p.objective) g = 4.0 * rng.next_unit() - 2.0;
        p.constraints.push_back(leq({{0, 1.0}, {1, -1.0}, {2, -1.0}}, 0.0));
        auto base = solve(p);
        REQUIRE(base.status == LpStatus::Optimal);
        REQUIRE(base.basis != nullptr);

        std::vector<LinearConstraint> added = {
            leq({{1, 1.0}, {2, -1.0}, {3, -1.0}}, 0.0),
            leq({{3, 1.0}, {0, -1.0}, {2, -1.0}}, 0.0),
        };
        auto warm = resolve_with_new_constraints(p, base, added, true);
        auto cold = resolve_with_new_constraints(p, base, added, false);
        REQUIRE(warm.status == LpStatus::Optimal);
        REQUIRE(cold.status == LpStatus::Optimal);
        CHECK(warm.objective_value == doctest::Approx(cold.objective_value).epsilon(1e-9));
    }
}

TEST_CASE("incremental adds inside one solver match a batch cold solve") {
    std::vector<double> obj = {-1.3, 0.4, -0.7, 0.9, -0.2};
    std::vector<LinearConstraint> all = {
        leq({{0, 1.0}, {1, -1.0}, {2, -1.0}}, 0.0),
        leq({{2, 1.0}, {3, -1.0}, {4, -1.0}}, 0.0),
        leq({{0, 1.0}, {3, 1.0}, {4, -1.0}}, 1.0),
        leq({{1, 1.0}, {2, 1.0}, {3, 1.0}}, 2.0),
    };
    IncrementalSimplex inc(obj);
    LpSolution last;
    for (const auto& c : all) {
        inc.add_constraint(c);
        last = inc.solve();
        REQUIRE(last.status == LpStatus::Optimal);
    }
    auto batch = solve(make_problem(5, obj, all));
    REQUIRE(batch.status == LpStatus::Optimal);
    CHECK(last.objective_value == doctest::Approx(batch.objective_value).epsilon(1e-9));
}

TEST_CASE("install_basis resumes without extra pivots") {
    auto p = make_problem(3, {-1.0, -1.0, 0.5},
                          {leq({{0, 1.0}, {1, -1.0}}, 0.0), leq({{1, 1.0}, {2, -1.0}}, 0.0),
                           leq({{2, 1.0}, {1, -1.0}}, 0.0), leq({{1, 1.0}, {0, -1.0}}, 0.0)});
    auto sol = solve(p);
    REQUIRE(sol.status == LpStatus::Optimal);
    REQUIRE(sol.basis != nullptr);

    IncrementalSimplex fresh(p.objective);
    fresh.add_constraints(p.constraints);
    fresh.install_basis(*sol.basis);
    auto resumed = fresh.solve();
    REQUIRE(resumed.status == LpStatus::Optimal);
    CHECK(resumed.pivots == 0);
    CHECK(resumed.objective_value == doctest::Approx(sol.objective_value).epsilon(1e-12));
}

TEST_CASE("install_basis validates shape") {
    IncrementalSimplex s({1.0, 1.0});
    SimplexBasis junk;
    junk.basic = {0, 1, 2};
    junk.var_state = {0, 0};
    junk.binv = {1.0};
    CHECK_THROWS_AS(s.install_basis(junk), std::invalid_argument);
}

TEST_CASE("constraint validation rejects bad terms") {
    IncrementalSimplex s({1.0, 1.0});
    CHECK_THROWS_AS(s.add_constraint(leq({{2, 1.0}}, 0.0)), std::invalid_argument);
    CHECK_THROWS_AS(s.add_constraint(leq({{0, 1.0}, {0, 1.0}}, 0.0)), std::invalid_argument);
    CHECK_THROWS_AS(s.add_constraint(leq({{0, std::nan("")}}, 0.0)), std::invalid_argument);
}

TEST_CASE("solver survives repeated degenerate ties") {
    // many redundant rows through the same vertex
    LpProblem p;
    p.n = 4;
    p.objective = {-1.0, -1.0, -1.0, -1.0};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            if (a != b) p.constraints.push_back(leq({{a, 1.0}, {b, -1.0}}, 0.0));
    auto sol = solve(p);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective_value == doctest::Approx(-4.0).epsilon(1e-9));
}

TEST_CASE("dump_lp emits the documented layout") {
    auto p = make_problem(2, {-1.0, 0.5}, {leq({{0, 1.0}, {1, -1.0}}, 0.0)});
    p.at_upper = {1, 0};
    std::ostringstream out;
    dump_lp(p, out);
    std::string text = out.str();
    CHECK(text.find("lp 2 1") != std::string::npos);
    CHECK(text.find("min") != std::string::npos);
    CHECK(text.find("start") != std::string::npos);
    CHECK(text.find("row") != std::string::npos);
    // rountrip precision: -1 must appear exactly
    CHECK(text.find("-1") != std::string::npos);
}
