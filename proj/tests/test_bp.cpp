#include <doctest.h>

#include "lpdec/bp.hpp"
#include "lpdec/channel.hpp"
#include "lpdec/ml.hpp"
#include "lpdec/rng.hpp"

using namespace lpdec;

TEST_CASE("noiseless input converges immediately") {
    auto code = random_regular_ldpc(24, 3, 6, 4);
    auto res = sum_product_decode(code, LlrVector(24, 4.0));
    CHECK(res.converged);
    CHECK(res.iterations == 1);
    CHECK(res.hard == BitVector(24, 0));
}

TEST_CASE("single weak erroneous coordinate is corrected") {
    auto code = random_regular_ldpc(24, 3, 6, 5);
    LlrVector gamma(24, 4.0);
    gamma[7] = -1.0;
    auto res = sum_product_decode(code, gamma);
    CHECK(res.converged);
    CHECK(res.hard == BitVector(24, 0));
}

TEST_CASE("decisions agree with ml on strong llrs") {
    auto code = random_regular_ldpc(16, 3, 4, 6);
    int converged = 0, agreements = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng(derive_seed(500, seed));
        double sigma = snr_to_sigma(5.0);
        auto r = transmit_awgn(BitVector(16, 0), sigma, rng);
        auto gamma = llr_awgn(r, sigma);
        auto res = sum_product_decode(code, gamma);
        if (!res.converged) continue;
        ++converged;
        REQUIRE(code.is_codeword(res.hard));
        auto ml = ml_decode_bruteforce(code, gamma);
        if (res.hard == ml.codeword) ++agreements;
    }
    CHECK(converged >= 15);
    CHECK(agreements >= converged - 2);
}

TEST_CASE("sign symmetry under a codeword translation") {
    auto code = random_regular_ldpc(16, 3, 4, 7);
    auto words = enumerate_codewords(code);
    REQUIRE(words.size() > 1);
    const auto& c = words[1];
    Rng rng(8);
    double sigma = snr_to_sigma(4.0);
    auto r = transmit_awgn(BitVector(16, 0), sigma, rng);
    auto gamma = llr_awgn(r, sigma);
    auto base = sum_product_decode(code, gamma);
    LlrVector translated(16);
    for (int i = 0; i < 16; ++i) translated[i] = c[i] ? -gamma[i] : gamma[i];
    auto shifted = sum_product_decode(code, translated);
    CHECK(base.converged == shifted.converged);
    CHECK(base.iterations == shifted.iterations);
    if (base.converged) {
        BitVector expect(16);
        for (int i = 0; i < 16; ++i) expect[i] = base.hard[i] ^ c[i];
        CHECK(shifted.hard == expect);
    }
}

TEST_CASE("non-convergence is reported, not fabricated") {
    auto code = random_regular_ldpc(30, 3, 6, 9);
    BpConfig cfg;
    cfg.max_iterations = 50;
    int failures = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Rng rng(derive_seed(501, seed));
        double sigma = snr_to_sigma(-3.0);
        auto r = transmit_awgn(BitVector(30, 0), sigma, rng);
        auto gamma = llr_awgn(r, sigma);
        auto res = sum_product_decode(code, gamma, cfg);
        if (res.converged) {
            CHECK(code.is_codeword(res.hard));
        } else {
            ++failures;
            CHECK(res.iterations == cfg.max_iterations);
            CHECK(res.hard.size() == 30u);
        }
    }
    CHECK(failures > 0);
}

TEST_CASE("message clipping keeps extreme llrs stable") {
    auto code = random_regular_ldpc(12, 3, 6, 10);
    LlrVector gamma(12);
    for (int i = 0; i < 12; ++i) gamma[i] = (i % 2 ? 1.0 : -1.0) * 1e9;
    auto res = sum_product_decode(code, gamma);
    CHECK(res.hard.size() == 12u);
    for (auto b : res.hard) CHECK((b == 0 || b == 1));

    BpConfig cfg;
    cfg.max_iterations = 0;
    CHECK_THROWS_AS(sum_product_decode(code, gamma, cfg), std::invalid_argument);
}
