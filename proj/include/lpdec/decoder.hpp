#ifndef LPDEC_DECODER_HPP
#define LPDEC_DECODER_HPP

#include <chrono>
#include <vector>

#include "lpdec/channel.hpp"
#include "lpdec/code.hpp"
#include "lpdec/cuts.hpp"
#include "lpdec/lp.hpp"

namespace lpdec {

enum class DecodeStatus { MlCodeword, Pseudocodeword, LimitExceeded };

struct DecodeOptions {
    int max_iterations = 0;  // 0 means n, the convergence bound
    bool warm_start = true;
    double epsilon_int = 1e-6;
    double eps_cut = kEpsCut;
    int max_cuts_per_iteration = 0;  // 0 means add every cut found
    SolverConfig solver;
};

struct IterationStat {
    int cuts_added = 0;
    int lp_pivots = 0;
    double objective = 0.0;
};

struct DecodeOutcome {
    std::vector<double> x;
    BitVector hard;  // rounded x, a valid codeword when integral
    bool integral = false;
    DecodeStatus status = DecodeStatus::LimitExceeded;
    double objective_value = 0.0;
    int iterations = 0;
    int cuts_added_total = 0;
    int final_parity_constraints = 0;
    int rpc_cuts_added = 0;
    int rpc_repeated_cycles = 0;
    long long lp_pivots_total = 0;
    std::chrono::nanoseconds elapsed{0};
    std::vector<IterationStat> per_iteration;
};

// One single-variable constraint per coordinate: the lower-bound side when
// gamma_i >= 0 (as -x_i <= 0), the upper-bound side when gamma_i < 0 (as
// x_i <= 1). Their unique optimal vertex is the hard decision on gamma.
std::vector<LinearConstraint> initial_constraints(const LlrVector& gamma);

// The box sides the initial constraints select (true = upper).
std::vector<std::uint8_t> initial_sides(const LlrVector& gamma);

DecodeOutcome decode_adaptive(const ParityCheckCode& code, const LlrVector& gamma,
                              const DecodeOptions& opts = {});

// Full relaxation up front: every odd-subset constraint of every check.
// Guarded to max check degree 14 (2^13 rows per check).
DecodeOutcome decode_standard(const ParityCheckCode& code, const LlrVector& gamma,
                              const DecodeOptions& opts = {});

// True iff at least n - q coordinates of x are within epsilon_int of {0,1};
// q is the count of parity-type constraints in the final LP.
bool verify_pseudocodeword_integrality(const DecodeOutcome& outcome, int q,
                                       double epsilon_int = 1e-6);

namespace detail {

// Engine shared by the adaptive and RPC decoders: an incremental LP plus the
// solve / find-all-cuts alternation. The RPC decoder drives it to its fixed
// point, adds redundant rows, and re-enters.
class AdaptiveCore {
  public:
    AdaptiveCore(const ParityCheckCode& code, const LlrVector& gamma, const DecodeOptions& opts);

    // Alternates LP solve and cut generation until no cut is found or
    // iteration_cap LP solves have been spent. Returns true on a fixed
    // point, false when a cap was hit.
    bool run(int iteration_cap);

    const LpSolution& last() const { return last_; }
    bool solved_once() const { return iterations_ > 0; }
    int iterations() const { return iterations_; }
    int cuts_added() const { return cuts_added_; }
    long long pivots() const { return pivots_; }
    int parity_rows() const { return lp_.num_rows(); }
    const std::vector<IterationStat>& per_iteration() const { return stats_; }
    bool lp_failed() const { return lp_failed_; }

    void add_rows(const std::vector<LinearConstraint>& rows);

  private:
    LpSolution solve_once();

    const ParityCheckCode& code_;
    const LlrVector& gamma_;
    DecodeOptions opts_;
    IncrementalSimplex lp_;
    LpSolution last_;
    int iterations_ = 0;
    int cuts_added_ = 0;
    long long pivots_ = 0;
    bool lp_failed_ = false;
    std::vector<IterationStat> stats_;
};

// Integrality classification and outcome packaging shared with the RPC path.
DecodeOutcome package_outcome(const AdaptiveCore& core, const ParityCheckCode& code,
                              const DecodeOptions& opts, bool hit_limit,
                              std::chrono::nanoseconds elapsed);

}  // namespace detail

}  // namespace lpdec

#endif
