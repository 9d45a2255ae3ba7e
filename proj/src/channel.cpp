#include "lpdec/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace lpdec {

double snr_to_sigma(double snr_db) { return std::sqrt(std::pow(10.0, -snr_db / 10.0)); }

ChannelConfig ChannelConfig::awgn(double snr_db) {
    ChannelConfig cfg;
    cfg.snr_db = snr_db;
    cfg.sigma = snr_to_sigma(snr_db);
    return cfg;
}

std::vector<double> transmit_awgn(const BitVector& codeword, double sigma, Rng& rng) {
    if (sigma <= 0.0) throw std::invalid_argument("sigma must be positive");
    std::vector<double> received(codeword.size());
    for (std::size_t i = 0; i < codeword.size(); ++i) {
        const double symbol = codeword[i] ? -1.0 : 1.0;
        received[i] = symbol + sigma * rng.next_normal();
    }
    return received;
}

LlrVector llr_awgn(const std::vector<double>& received, double sigma) {
    if (sigma <= 0.0) throw std::invalid_argument("sigma must be positive");
    const double scale = 2.0 / (sigma * sigma);
    LlrVector gamma(received.size());
    for (std::size_t i = 0; i < received.size(); ++i) gamma[i] = scale * received[i];
    return gamma;
}

}  // namespace lpdec
