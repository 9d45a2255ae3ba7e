#ifndef LPDEC_BP_HPP
#define LPDEC_BP_HPP

#include "lpdec/channel.hpp"
#include "lpdec/code.hpp"

namespace lpdec {

struct BpConfig {
    int max_iterations = 100;
    double l_max = 30.0;  // message magnitude clip
};

struct BpResult {
    BitVector hard;
    bool converged = false;
    int iterations = 0;
};

// LLR-domain sum-product with a flooding schedule and tanh-rule check
// update; stops early once the hard decision satisfies every check.
BpResult sum_product_decode(const ParityCheckCode& code, const LlrVector& gamma,
                            const BpConfig& cfg = {});

}  // namespace lpdec

#endif
