#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "code_spec.hpp"
#include "list_decoder.hpp"
#include "sc_decoder.hpp"

namespace cvpolar {

// Exact maximum-likelihood decoding by exhaustive search over all messages
// (k <= 20). Returns the information bits of the best codeword under the
// additive metric sum_i c_i * llr_i; ties keep the smallest message value.
BitVec ml_oracle(const CodeSpec& spec, const std::vector<double>& channel_llrs);

// Monte-Carlo code construction: runs genie-aided successive cancellation
// (every phase treated as information, decisions forced to the true bits)
// over random AWGN transmissions and counts, per phase, how often the
// decision value disagrees with the true bit. The n - k most error-prone
// phases become the frozen set (ties freeze the smaller index first).
CodeSpec mc_construct(std::size_t n, std::size_t k, double sigma, std::size_t trials,
                      std::uint64_t seed);

enum class DecoderKind { ScSf, ScEff, List };

struct SimConfig {
    DecoderKind kind = DecoderKind::ScEff;
    int list_size = 1;       // list decoder only
    ListOptions list_opts{}; // list decoder only
};

enum class ChannelKind { Awgn, Bsc };

struct ChannelConfig {
    ChannelKind kind = ChannelKind::Awgn;
    double ebn0_db = 0.0;   // AWGN: Eb/N0 in dB (noise scales with code rate)
    double crossover = 0.1; // BSC only
};

struct FerResult {
    std::size_t trials = 0;
    std::size_t errors = 0;
    double fer = 0.0;
    double avg_ops = 0.0; // mean arithmetic ops per decode
    long long wall_ms = 0;
};

// Frame-error-rate simulation: trial t draws its own generator from
// derive_seed(seed, t), picks a random message, transmits, decodes, and
// counts a frame error when the decoded information bits differ.
FerResult run_fer(const CodeSpec& spec, const SimConfig& sim, const ChannelConfig& chan,
                  std::size_t trials, std::uint64_t seed);

inline const char* fer_csv_header() {
    return "n,k,l,mode,snr_db,trials,errors,fer,avg_ops,wall_ms";
}
std::string fer_csv_row(const CodeSpec& spec, const SimConfig& sim, const ChannelConfig& chan,
                        const FerResult& result);

struct OpCountRow {
    std::size_t n = 0;
    long long adds = 0;
    long long cmps = 0;
    long long total = 0;
    double published = 0.0; // 0 when no reference value is on record
    double rel_err = 0.0;   // |total - published| / published
    std::string note;
};

// Measures a full decode's arithmetic-operation count for each block length
// (the schedule is fixed, so counts are input-independent) and compares
// against the recorded reference tables where available.
std::vector<OpCountRow> opcount_report(ScMode mode, const std::vector<std::size_t>& sizes);

std::string opcount_table(const std::vector<OpCountRow>& rows, ScMode mode);

} // namespace cvpolar
