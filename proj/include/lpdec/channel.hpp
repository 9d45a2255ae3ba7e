#ifndef LPDEC_CHANNEL_HPP
#define LPDEC_CHANNEL_HPP

#include <vector>

#include "lpdec/code.hpp"
#include "lpdec/rng.hpp"

namespace lpdec {

// per-bit log-likelihood ratios; positive entries favor bit 0
using LlrVector = std::vector<double>;

enum class ChannelKind { Awgn };

// AWGN with unit-energy BPSK (0 -> +1, 1 -> -1). snr_db is the ratio of
// signal variance to noise variance in decibels, so sigma = 10^(-snr_db/20).
struct ChannelConfig {
    double snr_db = 0.0;
    double sigma = 1.0;
    ChannelKind kind = ChannelKind::Awgn;

    static ChannelConfig awgn(double snr_db);
};

double snr_to_sigma(double snr_db);

// r_i = map(y_i) + sigma * z_i with z_i i.i.d. standard normal from rng
std::vector<double> transmit_awgn(const BitVector& codeword, double sigma, Rng& rng);

// gamma_i = 2 r_i / sigma^2
LlrVector llr_awgn(const std::vector<double>& received, double sigma);

}  // namespace lpdec

#endif
