#include <cstdint>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cvpolar/channel.hpp"
#include "cvpolar/code_spec.hpp"
#include "cvpolar/harness.hpp"
#include "cvpolar/list_decoder.hpp"
#include "cvpolar/sc_decoder.hpp"
#include "cvpolar/transform.hpp"

namespace {

std::vector<double> read_llr_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open llr file: " + path);
    std::vector<double> llrs;
    double v;
    while (in >> v) llrs.push_back(v);
    if (!in.eof()) throw std::runtime_error("malformed llr file: " + path);
    return llrs;
}

cvpolar::ScMode parse_mode(const std::string& s) {
    if (s == "sf") return cvpolar::ScMode::Sf;
    if (s == "eff") return cvpolar::ScMode::Eff;
    throw CLI::ValidationError("--mode", "must be 'sf' or 'eff'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"convolutional polar codes: encoding, decoding, simulation"};
    app.require_subcommand(1);

    std::string code_path, msg_hex, llr_path, mode_str = "eff", out_path;
    std::string decoder_str = "eff", channel_str = "awgn";
    int list_size = 8;
    bool skip_head = false, sc_tail = false;
    double snr_db = 0.0, crossover = 0.1, sigma = 0.0;
    std::size_t trials = 1000, n = 0, k = 0;
    std::uint64_t seed = 1;
    std::vector<std::size_t> sizes = {16, 32, 64, 128, 1024, 4096, 16384};

    auto* enc = app.add_subcommand("encode", "encode a message with a code specification");
    enc->add_option("--code", code_path, "code specification file")->required();
    enc->add_option("--msg", msg_hex, "information bits as hex (k bits)")->required();

    auto* dsc = app.add_subcommand("decode-sc", "successive-cancellation decoding");
    dsc->add_option("--code", code_path, "code specification file")->required();
    dsc->add_option("--mode", mode_str, "schedule: sf or eff")->capture_default_str();
    dsc->add_option("--llrs", llr_path, "file of channel log-likelihood ratios")->required();

    auto* dls = app.add_subcommand("decode-list", "list decoding");
    dls->add_option("--code", code_path, "code specification file")->required();
    dls->add_option("-l,--list-size", list_size, "number of paths")->capture_default_str();
    dls->add_flag("--skip-head", skip_head, "skip scoring while all phases so far are frozen");
    dls->add_flag("--sc-tail", sc_tail, "single-path decoding after the last frozen phase");
    dls->add_option("--llrs", llr_path, "file of channel log-likelihood ratios")->required();

    auto* sim = app.add_subcommand("simulate", "frame-error-rate simulation (CSV output)");
    sim->add_option("--code", code_path, "code specification file")->required();
    sim->add_option("--decoder", decoder_str, "sf, eff, or list")->capture_default_str();
    sim->add_option("-l,--list-size", list_size, "number of paths (list decoder)")
        ->capture_default_str();
    sim->add_flag("--skip-head", skip_head, "list decoder: skip scoring in the frozen head");
    sim->add_flag("--sc-tail", sc_tail, "list decoder: single path after the last frozen phase");
    sim->add_option("--channel", channel_str, "awgn or bsc")->capture_default_str();
    sim->add_option("--snr-db", snr_db, "AWGN Eb/N0 in dB")->capture_default_str();
    sim->add_option("--crossover", crossover, "BSC crossover probability")->capture_default_str();
    sim->add_option("--trials", trials, "number of frames")->capture_default_str();
    sim->add_option("--seed", seed, "base seed; trial t derives its own stream")
        ->capture_default_str();

    auto* opc = app.add_subcommand("opcount", "arithmetic operation counts per decode");
    opc->add_option("--mode", mode_str, "schedule: sf or eff")->capture_default_str();
    opc->add_option("--sizes", sizes, "block lengths to measure")->capture_default_str();

    auto* con = app.add_subcommand("construct", "Monte-Carlo code construction");
    con->add_option("--n", n, "block length (power of two, >= 16)")->required();
    con->add_option("--k", k, "information bits")->required();
    con->add_option("--snr-db", snr_db, "design Eb/N0 in dB at rate k/n");
    con->add_option("--sigma", sigma, "design noise level (overrides --snr-db)");
    con->add_option("--trials", trials, "genie-aided transmissions")->capture_default_str();
    con->add_option("--seed", seed, "base seed")->capture_default_str();
    con->add_option("--out", out_path, "write the code specification here")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (enc->parsed()) {
            const cvpolar::CodeSpec spec = cvpolar::load_code_spec(code_path);
            const cvpolar::BitVec info = cvpolar::from_hex(msg_hex, spec.k());
            const cvpolar::BitVec cw = cvpolar::encode(spec.expand_message(info));
            std::cout << cvpolar::to_hex(cw) << '\n';
        } else if (dsc->parsed()) {
            const cvpolar::CodeSpec spec = cvpolar::load_code_spec(code_path);
            const cvpolar::ScResult res =
                cvpolar::decode_sc(spec, read_llr_file(llr_path), parse_mode(mode_str));
            std::cout << "info=" << cvpolar::to_hex(res.info_bits) << '\n'
                      << "codeword=" << cvpolar::to_hex(res.codeword) << '\n'
                      << "ops=" << res.total.total() << '\n';
        } else if (dls->parsed()) {
            const cvpolar::CodeSpec spec = cvpolar::load_code_spec(code_path);
            const cvpolar::ListResult res = cvpolar::decode_list(
                spec, read_llr_file(llr_path), list_size, {skip_head, sc_tail});
            std::cout << "info=" << cvpolar::to_hex(res.info_bits) << '\n'
                      << "codeword=" << cvpolar::to_hex(res.codeword) << '\n'
                      << "score=" << res.score << '\n'
                      << "ops=" << res.total.total() << '\n'
                      << "decision_copies=" << res.decision_copies << '\n'
                      << "cluster_copies=" << res.cluster_copies << '\n';
        } else if (sim->parsed()) {
            const cvpolar::CodeSpec spec = cvpolar::load_code_spec(code_path);
            cvpolar::SimConfig cfg;
            if (decoder_str == "sf") {
                cfg.kind = cvpolar::DecoderKind::ScSf;
            } else if (decoder_str == "eff") {
                cfg.kind = cvpolar::DecoderKind::ScEff;
            } else if (decoder_str == "list") {
                cfg.kind = cvpolar::DecoderKind::List;
                cfg.list_size = list_size;
                cfg.list_opts = {skip_head, sc_tail};
            } else {
                throw CLI::ValidationError("--decoder", "must be 'sf', 'eff', or 'list'");
            }
            cvpolar::ChannelConfig chan;
            if (channel_str == "awgn") {
                chan.kind = cvpolar::ChannelKind::Awgn;
                chan.ebn0_db = snr_db;
            } else if (channel_str == "bsc") {
                chan.kind = cvpolar::ChannelKind::Bsc;
                chan.crossover = crossover;
            } else {
                throw CLI::ValidationError("--channel", "must be 'awgn' or 'bsc'");
            }
            const cvpolar::FerResult res = cvpolar::run_fer(spec, cfg, chan, trials, seed);
            std::cout << cvpolar::fer_csv_header() << '\n'
                      << cvpolar::fer_csv_row(spec, cfg, chan, res) << '\n';
        } else if (opc->parsed()) {
            const cvpolar::ScMode mode = parse_mode(mode_str);
            std::cout << cvpolar::opcount_table(cvpolar::opcount_report(mode, sizes), mode);
        } else if (con->parsed()) {
            const double design_sigma =
                sigma > 0.0 ? sigma
                            : cvpolar::sigma_from_ebn0_db(
                                  snr_db, static_cast<double>(k) / static_cast<double>(n));
            const cvpolar::CodeSpec spec = cvpolar::mc_construct(n, k, design_sigma, trials, seed);
            cvpolar::save_code_spec(spec, out_path);
            std::cout << "wrote (" << spec.n() << ", " << spec.k() << ") code to " << out_path
                      << '\n';
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
