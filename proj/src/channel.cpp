#include "cvpolar/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cvpolar {

double Rng::gauss() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    const double u1 = uniform01_open();
    const double u2 = uniform01_open();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    cached_ = r * std::sin(a);
    has_cached_ = true;
    return r * std::cos(a);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t x = base + (index + 1) * 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double sigma_from_ebn0_db(double ebn0_db, double rate) {
    if (rate <= 0.0) throw std::invalid_argument("sigma_from_ebn0_db: rate must be positive");
    return std::sqrt(1.0 / (2.0 * rate * std::pow(10.0, ebn0_db / 10.0)));
}

void awgn_transmit(const BitVec& codeword, double sigma, Rng& rng, std::vector<double>& llrs) {
    if (sigma <= 0.0) throw std::invalid_argument("awgn_transmit: sigma must be positive");
    llrs.resize(codeword.size());
    const double scale = -2.0 / (sigma * sigma);
    for (std::size_t i = 0; i < codeword.size(); ++i) {
        const double x = codeword[i] ? -1.0 : 1.0;
        llrs[i] = scale * (x + sigma * rng.gauss());
    }
}

void bsc_transmit(const BitVec& codeword, double crossover, Rng& rng, std::vector<double>& llrs) {
    if (!(crossover > 0.0 && crossover < 0.5))
        throw std::invalid_argument("bsc_transmit: crossover must be in (0, 0.5)");
    llrs.resize(codeword.size());
    const double mag = std::log((1.0 - crossover) / crossover);
    for (std::size_t i = 0; i < codeword.size(); ++i) {
        const std::uint8_t r = codeword[i] ^ (rng.uniform01_open() <= crossover ? 1 : 0);
        llrs[i] = r ? mag : -mag;
    }
}

std::vector<double> noiseless_llrs(const BitVec& codeword, double sigma) {
    if (sigma <= 0.0) throw std::invalid_argument("noiseless_llrs: sigma must be positive");
    std::vector<double> llrs(codeword.size());
    const double scale = -2.0 / (sigma * sigma);
    for (std::size_t i = 0; i < codeword.size(); ++i)
        llrs[i] = scale * (codeword[i] ? -1.0 : 1.0);
    return llrs;
}

} // namespace cvpolar
