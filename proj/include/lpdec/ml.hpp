#ifndef LPDEC_ML_HPP
#define LPDEC_ML_HPP

#include "lpdec/channel.hpp"
#include "lpdec/code.hpp"

namespace lpdec {

struct MlResult {
    BitVector codeword;
    double cost = 0.0;
    bool unique = true;  // no other codeword within the tie tolerance
};

// Exhaustive minimization of gamma . x over all codewords; ties (within
// 1e-12) resolve to the lexicographically smallest codeword with the unique
// flag cleared. Guarded to n <= 28.
MlResult ml_decode_bruteforce(const ParityCheckCode& code, const LlrVector& gamma);

// Fraction of blocks where an ML-certified decoder converged to a codeword
// other than the transmitted one; a lower bound on ML word error rate.
double ml_lower_bound(long long wrong_codeword_count, long long blocks);

}  // namespace lpdec

#endif
