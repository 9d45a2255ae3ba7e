#ifndef LPDEC_SIM_HPP
#define LPDEC_SIM_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpdec/bp.hpp"
#include "lpdec/decoder.hpp"
#include "lpdec/rpc.hpp"

namespace lpdec {

enum class DecoderKind { Adaptive, Standard, Rpc, Bp };
enum class ExperimentKind { DecodeOne, SweepDc, SweepN, SweepM, Wer, Timing };

struct InvalidSpec : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GenParams {
    int n = 0;
    int dv = 0;
    int dc = 0;
};

struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::Wer;
    std::string alist_path;          // load when nonempty, else generate
    GenParams gen;                   // base code parameters (m = n*dv/dc)
    std::vector<int> sweep_values;   // dc / n / m values for the sweep kinds
    std::vector<double> snr_db;
    long long blocks = 1;
    DecoderKind decoder = DecoderKind::Adaptive;
    RpcBudget budget;
    std::uint64_t master_seed = 1;
    bool warm_start = true;
    double epsilon_int = 1e-6;
    int max_cuts_per_iteration = 0;
};

struct BlockRecord {
    long long block = 0;
    std::uint64_t seed = 0;
    DecoderKind decoder = DecoderKind::Adaptive;
    double snr_db = 0.0;
    std::string status;
    int iterations = 0;
    int cuts_added = 0;
    int final_parity_constraints = 0;
    int rpc_cuts_added = 0;
    long long lp_pivots = 0;
    long long elapsed_ns = 0;
    bool wrong_codeword = false;
};

struct GroupSummary {
    std::string code_label;
    DecoderKind decoder = DecoderKind::Adaptive;
    double snr_db = 0.0;
    long long blocks = 0;
    long long failures = 0;
    long long wrong = 0;
    double wer = 0.0;
    double wilson_lo = 0.0;
    double wilson_hi = 0.0;
    double mean_iterations = 0.0;
    int max_iterations = 0;
    double mean_final_parity = 0.0;
    int max_final_parity = 0;
    double mean_cuts = 0.0;
    double mean_pivots = 0.0;
    double mean_elapsed_ns = 0.0;
    double ml_lower_bound = 0.0;  // meaningful for the RPC decoder
};

const char* to_string(DecoderKind k);
bool record_is_failure(const BlockRecord& r);

// 95% Wilson score interval for f failures in b blocks.
void wilson_interval(long long failures, long long blocks, double& lo, double& hi);

// Summary over a homogeneous slice (one code, decoder, and SNR).
GroupSummary summarize(const std::vector<BlockRecord>& records);

// Called after each decoded block; LP decoders pass their full outcome.
struct BlockObservation {
    const ParityCheckCode* code = nullptr;
    const LlrVector* gamma = nullptr;
    const BlockRecord* record = nullptr;
    const DecodeOutcome* outcome = nullptr;  // null for the BP decoder
};
using BlockObserver = std::function<void(const BlockObservation&)>;

// Streams one CSV header, per-block records in block order, and '#' summary
// rows. Fully deterministic for a given spec and master_seed (elapsed_ns
// columns aside). Throws InvalidSpec for bad specs (exit code 1 material)
// and std::runtime_error for runtime failures.
void run_experiment(const ExperimentSpec& spec, std::ostream& out,
                    const BlockObserver& observer = {});

}  // namespace lpdec

#endif
