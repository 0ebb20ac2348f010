// Command-line front end for the limited-view adversary code: parameter
// derivation, file-based encode/decode, and seeded simulation campaigns.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lvadv/adversary.hpp"
#include "lvadv/io.hpp"
#include "lvadv/lv.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitIo = 4;

struct CodeOptions {
    std::size_t N = 4;
    std::size_t u1 = 50;
    std::size_t v = 2;
    std::string rate = "";
    std::string eps = "";
    std::optional<std::uint64_t> q;
};

void add_code_options(CLI::App* cmd, CodeOptions& o, bool allow_eps) {
    cmd->add_option("--N", o.N, "code length (components)")->required();
    cmd->add_option("--u1", o.u1, "FRS symbols per component");
    cmd->add_option("--v", o.v, "list-decoder parameter");
    auto* r = cmd->add_option("--R", o.rate, "information rate (decimal or a/b)");
    std::uint64_t qtmp = 0;
    cmd->add_option_function<std::uint64_t>(
           "--q", [&o](const std::uint64_t& val) { o.q = val; },
           "prime field override (default: smallest prime > N*u)");
    (void)qtmp;
    if (allow_eps) {
        auto* e = cmd->add_option("--eps", o.eps, "preset: v = ceil(1/eps), u = 2/eps^4 + 2N/eps^2");
        r->excludes(e);
    } else {
        r->required();
    }
}

lvadv::LvParams params_from(const CodeOptions& o) {
    using namespace lvadv;
    if (!o.eps.empty()) {
        EpsilonPreset pre = epsilon_preset(parse_rational(o.eps), o.N);
        auto u1 = resolve_folding_for_width(o.N, pre.u);
        if (!u1)
            throw InfeasibleParamsError("eps preset: width u = " + std::to_string(pre.u) +
                                        " leaves no room for any folding parameter");
        const std::size_t u_actual = *u1 + o.N * key_block_count_for_folding(*u1) + 3 * o.N - 2;
        Rational rate = o.rate.empty() ? nearest_feasible_rate(o.N, u_actual, Rational{1, 10})
                                       : parse_rational(o.rate);
        std::cout << "eps preset: v=" << pre.v << " u=" << pre.u << " resolved u1=" << *u1
                  << " actual u=" << u_actual << "\n";
        return derive_params(o.N, *u1, pre.v, rate, o.q);
    }
    return derive_params(o.N, o.u1, o.v, lvadv::parse_rational(o.rate), o.q);
}

void print_params(const lvadv::LvParams& p) {
    using namespace lvadv;
    RhoBound b = rho_bound(p);
    std::cout << "N=" << p.block_len << " u1=" << p.u1 << " u2=" << p.u2 << " u=" << p.u
              << " v=" << p.v << " d=" << p.d << " l=" << p.l << " k=" << p.dim
              << " msg_len=" << p.msg_len << " R=" << p.rate.str() << '\n'
              << "q=" << p.field.modulus() << " gamma=" << p.gamma << '\n'
              << "rho_bound=" << b.value << " (half_term=" << b.half_term
              << " frs_term=" << b.frs_term << " proof_form=" << b.proof_form.str() << ")\n"
              << "adversary_budget=" << adversary_budget(p)
              << " agreement_threshold=" << p.block_len - adversary_budget(p) << '\n'
              << "delta_bound=" << delta_bound(p) << '\n'
              << "transmission_rate=" << transmission_rate(p).str() << '\n';
}

} // namespace

int main(int argc, char** argv) {
    using namespace lvadv;
    CLI::App app{"randomized limited-view adversary code"};
    app.require_subcommand(1);

    CodeOptions params_opt, enc_opt, sim_opt, rmt_opt;

    auto* cmd_params = app.add_subcommand("params", "derive and print code parameters");
    add_code_options(cmd_params, params_opt, true);

    auto* cmd_encode = app.add_subcommand("encode", "encode a message file into a codeword file");
    add_code_options(cmd_encode, enc_opt, false);
    std::string enc_in, enc_out;
    std::uint64_t enc_seed = 0;
    cmd_encode->add_option("--in", enc_in, "message file (N*u*R symbols)")->required();
    cmd_encode->add_option("--out", enc_out, "codeword file")->required();
    cmd_encode->add_option("--seed", enc_seed, "encoding randomness seed")->required();

    auto* cmd_decode = app.add_subcommand("decode", "decode a codeword file");
    std::string dec_in, dec_out;
    cmd_decode->add_option("--in", dec_in, "codeword file")->required();
    cmd_decode->add_option("--out", dec_out, "message output file (or the token BOTTOM)")->required();

    auto* cmd_sim = app.add_subcommand("simulate", "run a seeded adversary campaign");
    add_code_options(cmd_sim, sim_opt, false);
    std::string sim_strategy = "random_error", sim_rho_r = "", sim_rho_w = "", sim_json = "", sim_out = "";
    std::uint64_t sim_trials = 1000, sim_seed = 0;
    bool sim_diff_set = false;
    cmd_sim->add_option("--strategy", sim_strategy, "random_error | substitution");
    cmd_sim->add_option("--trials", sim_trials, "number of independent trials");
    cmd_sim->add_option("--seed", sim_seed, "master seed")->required();
    cmd_sim->add_option("--rho-r", sim_rho_r, "read fraction (default: within-model budget)");
    cmd_sim->add_option("--rho-w", sim_rho_w, "write fraction (default: within-model budget)");
    cmd_sim->add_flag("--diff-set", sim_diff_set, "let the write set differ from the read set");
    cmd_sim->add_option("--out", sim_out, "write the report to a file instead of stdout");
    cmd_sim->add_option("--json", sim_json, "also write the report as JSON");

    auto* cmd_rmt = app.add_subcommand("rmt", "one-round transmission over node-disjoint paths");
    add_code_options(cmd_rmt, rmt_opt, false);
    std::size_t rmt_corrupt = 0;
    std::uint64_t rmt_trials = 100, rmt_seed = 0;
    std::string rmt_strategy = "substitution";
    cmd_rmt->add_option("--corrupt", rmt_corrupt, "number of adversarial paths");
    cmd_rmt->add_option("--trials", rmt_trials, "number of transmissions");
    cmd_rmt->add_option("--seed", rmt_seed, "master seed")->required();
    cmd_rmt->add_option("--strategy", rmt_strategy, "random_error | substitution");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*cmd_params) {
            print_params(params_from(params_opt));
        } else if (*cmd_encode) {
            LvParams p = params_from(enc_opt);
            Message msg = read_message_file(enc_in, p);
            auto rng = make_stream(enc_seed, 0);
            write_codeword_file(enc_out, p, lv_encode(p, msg, rng));
        } else if (*cmd_decode) {
            CodewordFile cf = read_codeword_file(dec_in);
            DecodeOutcome out = lv_decode(cf.params, cf.codeword);
            std::ofstream os(dec_out);
            if (!os) throw MalformedInputError("cannot open for writing: " + dec_out);
            if (out) write_symbols(os, *out);
            else os << "BOTTOM\n";
        } else if (*cmd_sim) {
            LvParams p = params_from(sim_opt);
            AdversarySpec spec;
            spec.strategy = strategy_from_string(sim_strategy);
            const Rational model{static_cast<std::int64_t>(adversary_budget(p)),
                                 static_cast<std::int64_t>(p.block_len)};
            spec.rho_r = sim_rho_r.empty() ? model : parse_rational(sim_rho_r);
            spec.rho_w = sim_rho_w.empty() ? model : parse_rational(sim_rho_w);
            spec.same_set = !sim_diff_set;
            spec.seed = sim_seed;
            SimReport rep = simulate(spec, p, sim_trials, sim_seed);
            std::string text = sim_report_text(rep);
            if (sim_out.empty()) {
                std::cout << text;
            } else {
                std::ofstream os(sim_out);
                if (!os) throw MalformedInputError("cannot open for writing: " + sim_out);
                os << text;
            }
            if (!sim_json.empty()) {
                std::ofstream js(sim_json);
                if (!js) throw MalformedInputError("cannot open for writing: " + sim_json);
                js << sim_report_json(rep).dump(2) << '\n';
            }
        } else if (*cmd_rmt) {
            LvParams p = params_from(rmt_opt);
            std::uint64_t delivered = 0, bottom = 0, wrong = 0;
            for (std::uint64_t t = 0; t < rmt_trials; ++t) {
                auto mrng = make_stream(rmt_seed, 2 * t);
                Message msg(p.msg_len);
                for (auto& s : msg) s = p.field.uniform(mrng);
                std::vector<std::size_t> paths;
                auto prng = make_stream(rmt_seed, 2 * t + 1);
                while (paths.size() < rmt_corrupt) {
                    std::size_t c = static_cast<std::size_t>(uniform_below(prng, p.block_len));
                    if (std::find(paths.begin(), paths.end(), c) == paths.end()) paths.push_back(c);
                }
                DecodeOutcome out =
                    rmt_transmit(p, msg, paths, strategy_from_string(rmt_strategy), prng());
                if (!out) ++bottom;
                else if (*out == msg) ++delivered;
                else ++wrong;
            }
            std::cout << "trials=" << rmt_trials << " delivered=" << delivered << " bottom=" << bottom
                      << " wrong=" << wrong << '\n'
                      << "transmission_rate=" << transmission_rate(p).str() << '\n';
        }
    } catch (const InfeasibleParamsError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const MalformedInputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
