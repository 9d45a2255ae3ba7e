#include <doctest.h>

#include <algorithm>
#include <set>

#include "lpdec/channel.hpp"
#include "lpdec/rpc.hpp"

using namespace lpdec;

namespace {

LlrVector noisy_gamma(const ParityCheckCode& code, double snr_db, std::uint64_t seed) {
    Rng rng(seed);
    double sigma = snr_to_sigma(snr_db);
    auto r = transmit_awgn(BitVector(code.n, 0), sigma, rng);
    return llr_awgn(r, sigma);
}

// two checks sharing two variables: the smallest cycle
ParityCheckCode four_cycle() {
    return ParityCheckCode::from_rows(4, {{0, 1, 2}, {0, 1, 3}});
}

}  // namespace

TEST_CASE("integral points give an empty subgraph") {
    auto code = four_cycle();
    auto f = fractional_subgraph(code, {0.0, 1.0, 1.0, 1.0});
    CHECK(f.empty());
    CHECK(f.edge_count == 0);
    CHECK(f.clusters.empty());
}

TEST_CASE("subgraph collects fractional variables and adjacent checks") {
    auto code = four_cycle();
    auto f = fractional_subgraph(code, {0.5, 0.5, 0.25, 0.75});
    CHECK(f.phi == std::vector<int>{0, 1, 2, 3});
    CHECK(f.checks == std::vector<int>{0, 1});
    CHECK(f.edge_count == 6);
    REQUIRE(f.clusters.size() == 1);
    CHECK(cluster_has_cycle(f.clusters[0]));

    auto g = fractional_subgraph(code, {1.0, 1.0, 0.5, 0.5});
    CHECK(g.phi == std::vector<int>{2, 3});
    CHECK(g.checks == std::vector<int>{0, 1});
    CHECK(g.edge_count == 2);
    REQUIRE(g.clusters.size() == 2);
    CHECK_FALSE(cluster_has_cycle(g.clusters[0]));
}

TEST_CASE("epsilon_int controls what counts as fractional") {
    auto code = four_cycle();
    auto f = fractional_subgraph(code, {1e-9, 1.0 - 1e-9, 0.5, 1.0}, 1e-6);
    CHECK(f.phi == std::vector<int>{2});
    auto g = fractional_subgraph(code, {1e-3, 1.0, 0.5, 1.0}, 1e-6);
    CHECK(g.phi == std::vector<int>{0, 2});
}

TEST_CASE("subgraph components are split correctly") {
    // two disjoint fractional four-cycles
    auto code = ParityCheckCode::from_rows(8, {{0, 1, 4}, {0, 1, 5}, {2, 3, 6}, {2, 3, 7}});
    std::vector<double> x = {0.5, 0.5, 0.4, 0.6, 1.0, 0.0, 1.0, 0.0};
    auto f = fractional_subgraph(code, x);
    CHECK(f.phi == std::vector<int>{0, 1, 2, 3});
    CHECK(f.checks == std::vector<int>{0, 1, 2, 3});
    REQUIRE(f.clusters.size() == 2);
    for (const auto& c : f.clusters) {
        CHECK(c.vars.size() == 2);
        CHECK(c.checks.size() == 2);
        CHECK(c.edge_count == 4);
        CHECK(cluster_has_cycle(c));
    }
}

TEST_CASE("cycle search returns the unique four cycle") {
    auto code = four_cycle();
    auto f = fractional_subgraph(code, {0.5, 0.5, 1.0, 0.0});
    REQUIRE(f.phi == std::vector<int>{0, 1});
    Rng rng(5);
    for (int t = 0; t < 50; ++t) {
        auto cycle = random_cycle_search(f, rng);
        REQUIRE(cycle.has_value());
        CHECK(*cycle == std::vector<int>{0, 1});
    }
}

TEST_CASE("tree-shaped subgraphs have no cycle to find") {
    // path: check0 - var0 - check1 - var1 - check2
    auto code = ParityCheckCode::from_rows(4, {{0, 2}, {0, 1}, {1, 3}});
    auto f = fractional_subgraph(code, {0.5, 0.5, 1.0, 1.0});
    REQUIRE_FALSE(f.clusters.empty());
    CHECK_FALSE(cluster_has_cycle(f.clusters[0]));
    Rng rng(6);
    for (int t = 0; t < 50; ++t) CHECK_FALSE(random_cycle_search(f, rng).has_value());
}

TEST_CASE("returned check sets always describe closed fractional loops") {
    auto code = random_regular_ldpc(32, 3, 4, 9);
    int verified = 0;
    for (std::uint64_t seed = 0; seed < 40 && verified < 12; ++seed) {
        auto gamma = noisy_gamma(code, 1.0, derive_seed(700, seed));
        auto out = decode_adaptive(code, gamma);
        if (out.status != DecodeStatus::Pseudocodeword) continue;
        auto f = fractional_subgraph(code, out.x);
        if (f.empty()) continue;
        Rng rng(derive_seed(701, seed));
        for (int t = 0; t < 20; ++t) {
            auto cycle = random_cycle_search(f, rng);
            if (!cycle) continue;
            ++verified;
            CHECK(cycle->size() >= 2);
            CHECK(std::is_sorted(cycle->begin(), cycle->end()));
            std::set<int> in_cycle(cycle->begin(), cycle->end());
            CHECK(in_cycle.size() == cycle->size());
            // each member check sees at least two fractional variables
            for (int j : *cycle) {
                int frac = 0;
                for (int v : code.rows[j])
                    if (std::binary_search(f.phi.begin(), f.phi.end(), v)) ++frac;
                CHECK(frac >= 2);
            }
        }
    }
    CHECK(verified >= 12);
}

TEST_CASE("try_rpc_cut on a satisfied combined row yields nothing") {
    auto code = four_cycle();
    // x on the symmetric difference {2,3} balanced: no odd-subset violation
    std::vector<double> x = {0.5, 0.5, 0.5, 0.5};
    CHECK_FALSE(try_rpc_cut(code, x, {0, 1}).has_value());
    // identical rows cancel entirely
    auto dup = ParityCheckCode::from_rows(3, {{0, 1, 2}, {0, 1, 2}});
    CHECK_FALSE(try_rpc_cut(dup, {0.9, 0.8, 0.7}, {0, 1}).has_value());
}

TEST_CASE("try_rpc_cut finds violations on the combined support") {
    auto code = four_cycle();
    // combined row {2,3}; x2 near one, x3 near zero violates x2 - x3 <= 0
    std::vector<double> x = {0.5, 0.5, 0.9, 0.1};
    auto cut = try_rpc_cut(code, x, {0, 1});
    REQUIRE(cut.has_value());
    CHECK(cut->check == -1);
    CHECK(cut->support == std::vector<int>{2, 3});
    CHECK(cut->subset_v == std::vector<int>{2});
    CHECK(cut->violation == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("rpc cuts never exclude codewords") {
    auto code = random_regular_ldpc(16, 3, 4, 10);
    auto words = enumerate_codewords(code);
    Rng rng(11);
    int tested = 0;
    for (int trial = 0; trial < 400; ++trial) {
        std::vector<double> x(16);
        for (auto& v : x) {
            v = rng.next_unit();
            if (rng.next_below(5) < 2) v = v > 0.5 ? 1.0 : 0.0;
        }
        std::vector<int> checks;
        for (int j = 0; j < code.m; ++j)
            if (rng.next_below(2)) checks.push_back(j);
        if (checks.empty()) continue;
        auto cut = try_rpc_cut(code, x, checks);
        if (!cut) continue;
        ++tested;
        auto c = to_constraint(*cut);
        for (const auto& w : words) {
            double lhs = 0.0;
            for (auto [v, coef] : c.terms) lhs += coef * w[v];
            CHECK(lhs <= c.rhs + 1e-12);
        }
    }
    CHECK(tested > 30);
}

TEST_CASE("rpc decode on integral instances equals plain adaptive") {
    auto code = random_regular_ldpc(24, 3, 6, 12);
    DecodeOptions opts;
    RpcBudget budget;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto gamma = noisy_gamma(code, 3.0, derive_seed(702, seed));
        auto plain = decode_adaptive(code, gamma, opts);
        Rng rng(derive_seed(703, seed));
        auto rpc = decode_with_rpc(code, gamma, opts, budget, rng);
        if (plain.status == DecodeStatus::MlCodeword) {
            CHECK(rpc.status == plain.status);
            CHECK(rpc.objective_value == doctest::Approx(plain.objective_value).epsilon(1e-9));
            CHECK(rpc.hard == plain.hard);
            CHECK(rpc.rpc_cuts_added == 0);
            CHECK(rpc.iterations == plain.iterations);
        } else {
            CHECK(rpc.objective_value >= plain.objective_value - 1e-9);
        }
    }
}

TEST_CASE("rpc decode repairs some fractional fixed points") {
    auto code = random_regular_ldpc(32, 3, 4, 13);
    DecodeOptions opts;
    RpcBudget budget;
    budget.c_max = 50;
    int fractional = 0, repaired = 0;
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        auto gamma = noisy_gamma(code, 1.0, derive_seed(704, seed));
        auto plain = decode_adaptive(code, gamma, opts);
        if (plain.status != DecodeStatus::Pseudocodeword) continue;
        ++fractional;
        Rng rng(derive_seed(705, seed));
        auto rpc = decode_with_rpc(code, gamma, opts, budget, rng);
        CHECK(rpc.objective_value >= plain.objective_value - 1e-9);
        if (rpc.status == DecodeStatus::MlCodeword) {
            ++repaired;
            CHECK(code.is_codeword(rpc.hard));
            CHECK(rpc.rpc_cuts_added > 0);
        }
    }
    CHECK(fractional > 0);
    CHECK(repaired > 0);
}

TEST_CASE("rpc budget caps are validated and honored") {
    auto code = random_regular_ldpc(16, 3, 4, 14);
    auto gamma = noisy_gamma(code, 1.0, 706);
    DecodeOptions opts;
    Rng rng(1);
    RpcBudget bad;
    bad.c_max = 0;
    CHECK_THROWS_AS(decode_with_rpc(code, gamma, opts, bad, rng), std::invalid_argument);
    RpcBudget bad2;
    bad2.cuts_per_attempt = 0;
    CHECK_THROWS_AS(decode_with_rpc(code, gamma, opts, bad2, rng), std::invalid_argument);

    RpcBudget tiny;
    tiny.c_max = 1;
    tiny.lp_resolve_cap = 1;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto g = noisy_gamma(code, 1.0, derive_seed(707, seed));
        Rng r(derive_seed(708, seed));
        auto out = decode_with_rpc(code, g, opts, tiny, r);
        // either finished or stopped by the resolve cap; never more than
        // adaptive-phase solves plus the cap
        CHECK(out.iterations <= code.n + tiny.lp_resolve_cap);
    }
}
