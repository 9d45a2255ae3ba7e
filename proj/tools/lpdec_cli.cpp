#include <CLI11.hpp>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lpdec/decoder.hpp"
#include "lpdec/sim.hpp"

namespace {

struct CliOptions {
    std::string code_path;
    std::vector<int> gen;
    std::vector<double> snr;
    long long blocks = -1;  // -1: default per subcommand
    std::uint64_t seed = 1;
    std::string decoder = "adaptive";
    int cmax = 100;
    int lp_resolve_cap = 500;
    long long tmax_ms = 0;
    bool cold = false;
    int batch_cuts = 1;
    std::string out_path;
    std::string dump_lp_path;
    std::vector<int> dc_list;
    std::vector<int> n_list;
    std::vector<int> m_list;
    int base_dv = 0;
    int base_dc = 0;
};

void add_common(CLI::App* sub, CliOptions& o, bool with_decoder) {
    auto* code = sub->add_option("--code", o.code_path, "alist file with the parity-check matrix");
    auto* gen = sub->add_option("--gen", o.gen, "generate a random regular code: n,dv,dc")
                    ->delimiter(',');
    code->excludes(gen);
    gen->excludes(code);
    sub->add_option("--snr", o.snr, "SNR points in dB (comma separated)")
        ->delimiter(',')
        ->required();
    sub->add_option("--blocks", o.blocks, "number of noise blocks per SNR point");
    sub->add_option("--seed", o.seed, "master seed for code, noise, and search randomness");
    if (with_decoder)
        sub->add_option("--decoder", o.decoder, "adaptive | standard | rpc | bp")
            ->check(CLI::IsMember({"adaptive", "standard", "rpc", "bp"}));
    sub->add_option("--cmax", o.cmax, "cycle-search trials per redundant-cut attempt");
    sub->add_option("--lp-resolve-cap", o.lp_resolve_cap,
                    "LP resolve budget for the redundant-cut phase");
    sub->add_option("--tmax-ms", o.tmax_ms, "wall-clock cap per block in ms (0 = none)");
    sub->add_flag("--cold", o.cold, "solve every LP from scratch instead of warm starting");
    sub->add_option("--batch-cuts", o.batch_cuts,
                    "redundant cuts gathered before each LP resolve");
    sub->add_option("--out", o.out_path, "write CSV here instead of stdout");
}

lpdec::DecoderKind decoder_kind(const std::string& name) {
    if (name == "standard") return lpdec::DecoderKind::Standard;
    if (name == "rpc") return lpdec::DecoderKind::Rpc;
    if (name == "bp") return lpdec::DecoderKind::Bp;
    return lpdec::DecoderKind::Adaptive;
}

lpdec::ExperimentSpec build_spec(const CliOptions& o, lpdec::ExperimentKind kind,
                                 const std::vector<int>& sweep_values) {
    lpdec::ExperimentSpec spec;
    spec.kind = kind;
    spec.alist_path = o.code_path;
    if (!o.gen.empty()) {
        if (o.gen.size() != 3)
            throw lpdec::InvalidSpec("invalid spec: field 'gen': expected n,dv,dc");
        spec.gen = {o.gen[0], o.gen[1], o.gen[2]};
    }
    if (o.base_dv > 0) spec.gen.dv = o.base_dv;
    if (o.base_dc > 0) spec.gen.dc = o.base_dc;
    bool degrees_given = spec.gen.dv > 0 && spec.gen.dc > 0;
    if (o.code_path.empty() && o.gen.empty() &&
        !(kind == lpdec::ExperimentKind::SweepN && degrees_given))
        throw lpdec::InvalidSpec("invalid spec: field 'code': give --code or --gen");
    spec.sweep_values = sweep_values;
    spec.snr_db = o.snr;
    spec.blocks = o.blocks >= 0 ? o.blocks
                                : (kind == lpdec::ExperimentKind::DecodeOne ? 1 : 100);
    spec.decoder = decoder_kind(o.decoder);
    spec.budget.c_max = o.cmax;
    spec.budget.lp_resolve_cap = o.lp_resolve_cap;
    if (o.tmax_ms > 0) spec.budget.t_max = std::chrono::milliseconds(o.tmax_ms);
    spec.budget.cuts_per_attempt = o.batch_cuts;
    spec.master_seed = o.seed;
    spec.warm_start = !o.cold;
    return spec;
}

// Full odd-subset relaxation of block 0, written for external cross-checks.
void dump_block_lp(const lpdec::ExperimentSpec& spec, const std::string& path) {
    const lpdec::ParityCheckCode* code = nullptr;
    const lpdec::LlrVector* gamma = nullptr;
    lpdec::ParityCheckCode code_copy;
    lpdec::LlrVector gamma_copy;
    lpdec::ExperimentSpec one = spec;
    one.blocks = 1;
    std::ostringstream discard;
    lpdec::run_experiment(one, discard, [&](const lpdec::BlockObservation& obs) {
        if (!code) {
            code_copy = *obs.code;
            gamma_copy = *obs.gamma;
            code = &code_copy;
            gamma = &gamma_copy;
        }
    });
    if (!code) throw std::runtime_error("dump-lp: no block was decoded");
    if (code->max_check_degree() > 14)
        throw lpdec::InvalidSpec("invalid spec: field 'dump-lp': check degree must be <= 14");
    lpdec::LpProblem problem;
    problem.n = code->n;
    problem.objective = *gamma;
    for (int j = 0; j < code->m; ++j) {
        const auto& support = code->rows[j];
        int d = static_cast<int>(support.size());
        for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
            if (__builtin_popcount(mask) % 2 == 0) continue;
            lpdec::LinearConstraint c;
            for (int i = 0; i < d; ++i)
                c.terms.push_back({support[i], (mask >> i) & 1u ? 1.0 : -1.0});
            c.rhs = static_cast<double>(__builtin_popcount(mask)) - 1.0;
            problem.constraints.push_back(std::move(c));
        }
    }
    problem.at_upper = lpdec::initial_sides(*gamma);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("dump-lp: cannot open " + path);
    lpdec::dump_lp(problem, out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adaptive LP decoding of binary linear codes over BPSK/AWGN"};
    app.require_subcommand(1);
    CliOptions o;

    auto* decode = app.add_subcommand("decode", "decode one or more blocks and print records");
    add_common(decode, o, true);
    decode->add_option("--dump-lp", o.dump_lp_path,
                       "also write the full odd-subset LP of block 0 to this file");

    auto* wer = app.add_subcommand("wer", "word error rate across SNR points");
    add_common(wer, o, true);

    auto* sweep_dc = app.add_subcommand(
        "sweep-dc", "vary check degree at fixed n and rate (base code from --gen)");
    add_common(sweep_dc, o, false);
    sweep_dc->add_option("--dc", o.dc_list, "check degrees to sweep")->delimiter(',')->required();

    auto* sweep_n = app.add_subcommand("sweep-n", "vary block length at fixed degrees");
    add_common(sweep_n, o, false);
    sweep_n->add_option("--n-list", o.n_list, "block lengths to sweep")
        ->delimiter(',')
        ->required();
    sweep_n->add_option("--dv", o.base_dv, "variable degree held fixed across the sweep");
    sweep_n->add_option("--dc", o.base_dc, "check degree held fixed across the sweep");

    auto* sweep_m = app.add_subcommand("sweep-m", "vary check count at fixed n and dv");
    add_common(sweep_m, o, false);
    sweep_m->add_option("--m-list", o.m_list, "check counts to sweep")->delimiter(',')->required();

    auto* timing = app.add_subcommand("timing", "adaptive vs standard LP decoding time");
    add_common(timing, o, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        lpdec::ExperimentKind kind = lpdec::ExperimentKind::Wer;
        std::vector<int> sweep_values;
        if (decode->parsed()) {
            kind = lpdec::ExperimentKind::DecodeOne;
        } else if (sweep_dc->parsed()) {
            kind = lpdec::ExperimentKind::SweepDc;
            sweep_values = o.dc_list;
        } else if (sweep_n->parsed()) {
            kind = lpdec::ExperimentKind::SweepN;
            sweep_values = o.n_list;
        } else if (sweep_m->parsed()) {
            kind = lpdec::ExperimentKind::SweepM;
            sweep_values = o.m_list;
        } else if (timing->parsed()) {
            kind = lpdec::ExperimentKind::Timing;
        }
        lpdec::ExperimentSpec spec = build_spec(o, kind, sweep_values);

        std::ofstream file;
        std::ostream* out = &std::cout;
        if (!o.out_path.empty()) {
            file.open(o.out_path);
            if (!file) throw std::runtime_error("cannot open output file: " + o.out_path);
            out = &file;
        }
        lpdec::run_experiment(spec, *out);
        if (!o.dump_lp_path.empty()) dump_block_lp(spec, o.dump_lp_path);
        return 0;
    } catch (const lpdec::InvalidSpec& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
