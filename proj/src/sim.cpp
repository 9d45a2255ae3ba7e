#include "lpdec/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "lpdec/ml.hpp"
#include "lpdec/rng.hpp"

namespace lpdec {

namespace {

struct CodeConfig {
    std::string label;
    int n = 0;
    int dv = 0;
    int dc = 0;
    std::uint64_t code_seed = 0;
    std::string alist_path;
};

std::string gen_label(int n, int dv, int dc) {
    std::ostringstream s;
    s << "gen(" << n << ',' << dv << ',' << dc << ')';
    return s.str();
}

void require(bool ok, const std::string& field, const std::string& what) {
    if (!ok) throw InvalidSpec("invalid spec: field '" + field + "': " + what);
}

std::vector<CodeConfig> expand_configs(const ExperimentSpec& spec) {
    std::vector<CodeConfig> configs;
    auto push_gen = [&](int n, int dv, int dc, std::size_t index) {
        require(n > 0 && dv >= 2 && dc > dv, "gen", "need n > 0 and dc > dv >= 2");
        require((static_cast<long long>(n) * dv) % dc == 0, "gen",
                "n*dv must be divisible by dc");
        CodeConfig c;
        c.label = gen_label(n, dv, dc);
        c.n = n;
        c.dv = dv;
        c.dc = dc;
        c.code_seed = derive_seed(spec.master_seed, 0xC0DEu, static_cast<std::uint64_t>(index));
        configs.push_back(std::move(c));
    };
    switch (spec.kind) {
        case ExperimentKind::DecodeOne:
        case ExperimentKind::Wer:
        case ExperimentKind::Timing:
            if (!spec.alist_path.empty()) {
                CodeConfig c;
                c.label = spec.alist_path;
                c.alist_path = spec.alist_path;
                configs.push_back(std::move(c));
            } else {
                push_gen(spec.gen.n, spec.gen.dv, spec.gen.dc, 0);
            }
            break;
        case ExperimentKind::SweepDc: {
            require(spec.alist_path.empty(), "code", "sweeps require generated codes");
            require(!spec.sweep_values.empty(), "dc", "sweep needs at least one value");
            require(spec.gen.n > 0 && spec.gen.dv >= 2 && spec.gen.dc > 0, "gen",
                    "base n,dv,dc required");
            long long m = static_cast<long long>(spec.gen.n) * spec.gen.dv / spec.gen.dc;
            require(static_cast<long long>(spec.gen.n) * spec.gen.dv % spec.gen.dc == 0, "gen",
                    "n*dv must be divisible by dc");
            for (std::size_t i = 0; i < spec.sweep_values.size(); ++i) {
                int dc = spec.sweep_values[i];
                require(dc >= 3, "dc", "check degree must be >= 3");
                long long dv = static_cast<long long>(dc) * m;
                require(dv % spec.gen.n == 0, "dc", "dc*m must be divisible by n");
                push_gen(spec.gen.n, static_cast<int>(dv / spec.gen.n), dc, i);
            }
            break;
        }
        case ExperimentKind::SweepN: {
            require(spec.alist_path.empty(), "code", "sweeps require generated codes");
            require(!spec.sweep_values.empty(), "n", "sweep needs at least one value");
            require(spec.gen.dv >= 2 && spec.gen.dc > spec.gen.dv, "gen", "base dv,dc required");
            for (std::size_t i = 0; i < spec.sweep_values.size(); ++i)
                push_gen(spec.sweep_values[i], spec.gen.dv, spec.gen.dc, i);
            break;
        }
        case ExperimentKind::SweepM: {
            require(spec.alist_path.empty(), "code", "sweeps require generated codes");
            require(!spec.sweep_values.empty(), "m", "sweep needs at least one value");
            require(spec.gen.n > 0 && spec.gen.dv >= 2, "gen", "base n,dv required");
            for (std::size_t i = 0; i < spec.sweep_values.size(); ++i) {
                int m = spec.sweep_values[i];
                require(m > 0, "m", "m must be positive");
                long long dc = static_cast<long long>(spec.gen.n) * spec.gen.dv;
                require(dc % m == 0, "m", "n*dv must be divisible by m");
                push_gen(spec.gen.n, spec.gen.dv, static_cast<int>(dc / m), i);
            }
            break;
        }
    }
    return configs;
}

ParityCheckCode build_code(const CodeConfig& cfg) {
    if (!cfg.alist_path.empty()) {
        std::ifstream in(cfg.alist_path);
        if (!in) throw std::runtime_error("cannot open alist file: " + cfg.alist_path);
        std::ostringstream text;
        text << in.rdbuf();
        return parse_alist(text.str());
    }
    return random_regular_ldpc(cfg.n, cfg.dv, cfg.dc, cfg.code_seed);
}

void write_record(std::ostream& out, const BlockRecord& r) {
    out << r.block << ',' << r.seed << ',' << to_string(r.decoder) << ',' << r.snr_db << ','
        << r.status << ',' << r.iterations << ',' << r.cuts_added << ','
        << r.final_parity_constraints << ',' << r.rpc_cuts_added << ',' << r.lp_pivots << ','
        << r.elapsed_ns << ',' << (r.wrong_codeword ? 1 : 0) << '\n';
}

const char* status_string(DecodeStatus s) {
    switch (s) {
        case DecodeStatus::MlCodeword:
            return "MlCodeword";
        case DecodeStatus::Pseudocodeword:
            return "Pseudocodeword";
        default:
            return "LimitExceeded";
    }
}

bool all_zero(const BitVector& v) {
    return std::all_of(v.begin(), v.end(), [](std::uint8_t b) { return b == 0; });
}

struct ArmResult {
    std::vector<BlockRecord> records;
};

ArmResult run_arm(const ExperimentSpec& spec, DecoderKind decoder, const ParityCheckCode& code,
                  std::size_t config_index, double snr, std::size_t snr_index, std::ostream& out,
                  const BlockObserver& observer) {
    if (decoder == DecoderKind::Standard && code.max_check_degree() > 14)
        throw InvalidSpec("invalid spec: field 'decoder': standard LP needs check degree <= 14");
    double sigma = snr_to_sigma(snr);
    DecodeOptions opts;
    opts.warm_start = spec.warm_start;
    opts.epsilon_int = spec.epsilon_int;
    opts.max_cuts_per_iteration = spec.max_cuts_per_iteration;
    BitVector zero(code.n, 0);
    std::uint64_t stream =
        derive_seed(spec.master_seed, static_cast<std::uint64_t>(config_index),
                    static_cast<std::uint64_t>(snr_index));
    ArmResult arm;
    arm.records.reserve(static_cast<std::size_t>(spec.blocks));
    for (long long b = 0; b < spec.blocks; ++b) {
        std::uint64_t block_seed = derive_seed(stream, static_cast<std::uint64_t>(b), 1);
        Rng noise_rng(derive_seed(block_seed, 1, 0));
        std::vector<double> received = transmit_awgn(zero, sigma, noise_rng);
        LlrVector gamma = llr_awgn(received, sigma);

        BlockRecord rec;
        rec.block = b;
        rec.seed = block_seed;
        rec.decoder = decoder;
        rec.snr_db = snr;

        DecodeOutcome outcome;
        bool have_outcome = false;
        if (decoder == DecoderKind::Bp) {
            auto t0 = std::chrono::steady_clock::now();
            BpResult bp = sum_product_decode(code, gamma);
            auto dt = std::chrono::steady_clock::now() - t0;
            rec.status = bp.converged ? "Converged" : "NotConverged";
            rec.iterations = bp.iterations;
            rec.elapsed_ns =
                std::chrono::duration_cast<std::chrono::nanoseconds>(dt).count();
            rec.wrong_codeword = bp.converged && !all_zero(bp.hard);
        } else {
            if (decoder == DecoderKind::Adaptive) {
                outcome = decode_adaptive(code, gamma, opts);
            } else if (decoder == DecoderKind::Standard) {
                outcome = decode_standard(code, gamma, opts);
            } else {
                Rng rpc_rng(derive_seed(block_seed, 2, 0));
                outcome = decode_with_rpc(code, gamma, opts, spec.budget, rpc_rng);
            }
            have_outcome = true;
            rec.status = status_string(outcome.status);
            rec.iterations = outcome.iterations;
            rec.cuts_added = outcome.cuts_added_total;
            rec.final_parity_constraints = outcome.final_parity_constraints;
            rec.rpc_cuts_added = outcome.rpc_cuts_added;
            rec.lp_pivots = outcome.lp_pivots_total;
            rec.elapsed_ns = outcome.elapsed.count();
            rec.wrong_codeword =
                outcome.status == DecodeStatus::MlCodeword && !all_zero(outcome.hard);
        }
        write_record(out, rec);
        if (observer) {
            BlockObservation obs;
            obs.code = &code;
            obs.gamma = &gamma;
            obs.record = &rec;
            obs.outcome = have_outcome ? &outcome : nullptr;
            observer(obs);
        }
        arm.records.push_back(std::move(rec));
    }
    return arm;
}

void write_summary(std::ostream& out, const GroupSummary& s) {
    out << "# summary code=" << s.code_label << " decoder=" << to_string(s.decoder)
        << " snr_db=" << s.snr_db << " blocks=" << s.blocks << " failures=" << s.failures
        << " wrong=" << s.wrong << " wer=" << s.wer << " wilson_lo=" << s.wilson_lo
        << " wilson_hi=" << s.wilson_hi << " mean_iterations=" << s.mean_iterations
        << " max_iterations=" << s.max_iterations << " mean_final_parity=" << s.mean_final_parity
        << " max_final_parity=" << s.max_final_parity << " mean_cuts=" << s.mean_cuts
        << " mean_pivots=" << s.mean_pivots << " mean_elapsed_ns=" << s.mean_elapsed_ns;
    if (s.decoder == DecoderKind::Rpc) out << " ml_lower_bound=" << s.ml_lower_bound;
    out << '\n';
}

}  // namespace

const char* to_string(DecoderKind k) {
    switch (k) {
        case DecoderKind::Adaptive:
            return "adaptive";
        case DecoderKind::Standard:
            return "standard";
        case DecoderKind::Rpc:
            return "rpc";
        default:
            return "bp";
    }
}

bool record_is_failure(const BlockRecord& r) {
    bool success = r.status == "MlCodeword" || r.status == "Converged";
    return !success || r.wrong_codeword;
}

void wilson_interval(long long failures, long long blocks, double& lo, double& hi) {
    double z = 1.959963984540054;
    double nd = static_cast<double>(blocks);
    double p = static_cast<double>(failures) / nd;
    double z2 = z * z;
    double denom = 1.0 + z2 / nd;
    double center = (p + z2 / (2.0 * nd)) / denom;
    double half = z * std::sqrt(p * (1.0 - p) / nd + z2 / (4.0 * nd * nd)) / denom;
    lo = std::max(0.0, center - half);
    hi = std::min(1.0, center + half);
}

GroupSummary summarize(const std::vector<BlockRecord>& records) {
    if (records.empty()) throw std::invalid_argument("summarize: no records");
    GroupSummary s;
    s.decoder = records.front().decoder;
    s.snr_db = records.front().snr_db;
    s.blocks = static_cast<long long>(records.size());
    double it_sum = 0, parity_sum = 0, cuts_sum = 0, pivots_sum = 0, elapsed_sum = 0;
    for (const BlockRecord& r : records) {
        if (record_is_failure(r)) ++s.failures;
        if (r.wrong_codeword) ++s.wrong;
        it_sum += r.iterations;
        s.max_iterations = std::max(s.max_iterations, r.iterations);
        parity_sum += r.final_parity_constraints;
        s.max_final_parity = std::max(s.max_final_parity, r.final_parity_constraints);
        cuts_sum += r.cuts_added;
        pivots_sum += static_cast<double>(r.lp_pivots);
        elapsed_sum += static_cast<double>(r.elapsed_ns);
    }
    double nd = static_cast<double>(s.blocks);
    s.wer = static_cast<double>(s.failures) / nd;
    wilson_interval(s.failures, s.blocks, s.wilson_lo, s.wilson_hi);
    s.mean_iterations = it_sum / nd;
    s.mean_final_parity = parity_sum / nd;
    s.mean_cuts = cuts_sum / nd;
    s.mean_pivots = pivots_sum / nd;
    s.mean_elapsed_ns = elapsed_sum / nd;
    s.ml_lower_bound = ml_lower_bound(s.wrong, s.blocks);
    return s;
}

void run_experiment(const ExperimentSpec& spec, std::ostream& out,
                    const BlockObserver& observer) {
    require(spec.blocks >= 1, "blocks", "must be >= 1");
    require(!spec.snr_db.empty(), "snr_db", "must be nonempty");
    require(spec.budget.c_max >= 1, "cmax", "must be >= 1");
    require(spec.budget.lp_resolve_cap >= 1, "lp_resolve_cap", "must be >= 1");
    std::vector<CodeConfig> configs = expand_configs(spec);

    out << "block,seed,decoder,snr_db,status,iterations,cuts_added,final_parity_constraints,"
           "rpc_cuts_added,lp_pivots,elapsed_ns,wrong_codeword\n";
    for (std::size_t ci = 0; ci < configs.size(); ++ci) {
        ParityCheckCode code = build_code(configs[ci]);
        std::vector<DecoderKind> arms;
        if (spec.kind == ExperimentKind::Timing) {
            arms = {DecoderKind::Adaptive, DecoderKind::Standard};
        } else {
            arms = {spec.decoder};
        }
        for (std::size_t si = 0; si < spec.snr_db.size(); ++si) {
            double snr = spec.snr_db[si];
            std::vector<GroupSummary> summaries;
            for (DecoderKind arm : arms) {
                out << "# config code=" << configs[ci].label << " decoder=" << to_string(arm)
                    << " snr_db=" << snr << " blocks=" << spec.blocks
                    << " seed=" << spec.master_seed << " warm=" << (spec.warm_start ? 1 : 0)
                    << '\n';
                ArmResult res =
                    run_arm(spec, arm, code, ci, snr, si, out, observer);
                GroupSummary s = summarize(res.records);
                s.code_label = configs[ci].label;
                write_summary(out, s);
                summaries.push_back(std::move(s));
            }
            if (spec.kind == ExperimentKind::Timing && summaries.size() == 2 &&
                summaries[1].mean_elapsed_ns > 0.0) {
                out << "# timing code=" << configs[ci].label << " snr_db=" << snr
                    << " adaptive_over_standard="
                    << summaries[0].mean_elapsed_ns / summaries[1].mean_elapsed_ns << '\n';
            }
        }
    }
}

}  // namespace lpdec
