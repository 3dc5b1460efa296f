#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "bits.hpp"

namespace cvpolar {

// Deterministic RNG wrapper: a fully specified engine plus portable
// conversions, so simulations reproduce bit-for-bit for a given seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }
    std::uint8_t next_bit() { return static_cast<std::uint8_t>(engine_() >> 63); }

    // Uniform on (0, 1]: 53 random mantissa bits, never exactly zero.
    double uniform01_open() {
        return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; generates pairs and caches the second.
    double gauss();

private:
    std::mt19937_64 engine_;
    bool has_cached_ = false;
    double cached_ = 0.0;
};

// Stream element of the splitmix64 sequence seeded at `base`; gives
// independent per-trial seeds from one base seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

// Noise level for a binary-input AWGN channel at the given Eb/N0 (dB) and
// code rate: sigma^2 = 1 / (2 * rate * 10^(db/10)).
double sigma_from_ebn0_db(double ebn0_db, double rate);

// Channel log-likelihood ratios ln W(1|y) / W(0|y); bits map to +-1 as
// x = 1 - 2b before the channel.

// y = x + sigma * N(0,1); llr = -2 y / sigma^2.
void awgn_transmit(const BitVec& codeword, double sigma, Rng& rng, std::vector<double>& llrs);

// Bits flip with probability `crossover`; llr = +-ln((1-p)/p).
void bsc_transmit(const BitVec& codeword, double crossover, Rng& rng, std::vector<double>& llrs);

// LLRs of the exact (noise-free) channel outputs at a design noise level:
// what awgn_transmit produces when every noise sample is zero.
std::vector<double> noiseless_llrs(const BitVec& codeword, double sigma);

} // namespace cvpolar
