#include "lpdec/ml.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lpdec {

namespace {
constexpr double kTieTol = 1e-12;
}

MlResult ml_decode_bruteforce(const ParityCheckCode& code, const LlrVector& gamma) {
    if (code.n > 28) throw std::invalid_argument("ml: code too large for brute force (n > 28)");
    if (static_cast<int>(gamma.size()) != code.n)
        throw std::invalid_argument("ml: gamma size does not match code length");
    std::vector<BitVector> words = enumerate_codewords(code);
    MlResult best;
    bool have = false;
    for (const BitVector& w : words) {
        double cost = 0.0;
        for (int i = 0; i < code.n; ++i)
            if (w[i]) cost += gamma[i];
        if (!have) {
            best.codeword = w;
            best.cost = cost;
            best.unique = true;
            have = true;
            continue;
        }
        if (cost < best.cost - kTieTol) {
            best.codeword = w;
            best.cost = cost;
            best.unique = true;
        } else if (cost <= best.cost + kTieTol) {
            best.unique = false;
            if (std::lexicographical_compare(w.begin(), w.end(), best.codeword.begin(),
                                             best.codeword.end())) {
                best.codeword = w;
                best.cost = std::min(best.cost, cost);
            }
        }
    }
    return best;
}

double ml_lower_bound(long long wrong_codeword_count, long long blocks) {
    if (blocks <= 0) throw std::invalid_argument("ml: blocks must be positive");
    if (wrong_codeword_count < 0 || wrong_codeword_count > blocks)
        throw std::invalid_argument("ml: wrong count out of range");
    return static_cast<double>(wrong_codeword_count) / static_cast<double>(blocks);
}

}  // namespace lpdec
