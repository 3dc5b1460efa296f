#include "cvpolar/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "cvpolar/channel.hpp"
#include "cvpolar/transform.hpp"

namespace cvpolar {

BitVec ml_oracle(const CodeSpec& spec, const std::vector<double>& channel_llrs) {
    if (spec.k() > 20)
        throw std::invalid_argument("ml_oracle: exhaustive search limited to k <= 20");
    if (channel_llrs.size() != spec.n())
        throw std::invalid_argument("ml_oracle: llr length mismatch");
    const std::size_t k = spec.k();
    const std::uint64_t count = std::uint64_t{1} << k;
    BitVec info(k, 0), best_info;
    double best = 0.0;
    bool have = false;
    for (std::uint64_t msg = 0; msg < count; ++msg) {
        for (std::size_t j = 0; j < k; ++j) info[j] = static_cast<std::uint8_t>((msg >> j) & 1);
        const BitVec cw = encode(spec.expand_message(info));
        double metric = 0.0;
        for (std::size_t i = 0; i < cw.size(); ++i)
            if (cw[i]) metric += channel_llrs[i];
        if (!have || metric > best) { // strict: ties keep the smallest message
            have = true;
            best = metric;
            best_info = info;
        }
    }
    return best_info;
}

CodeSpec mc_construct(std::size_t n, std::size_t k, double sigma, std::size_t trials,
                      std::uint64_t seed) {
    if (k > n) throw std::invalid_argument("mc_construct: k must not exceed n");
    if (trials == 0) throw std::invalid_argument("mc_construct: need at least one trial");
    const CodeSpec all_info(n, {});
    ScDecoder dec(all_info, ScMode::Eff);
    std::vector<std::uint64_t> err(n, 0);
    BitVec u(n);
    std::vector<double> llrs;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, t));
        for (std::size_t i = 0; i < n; ++i) u[i] = rng.next_bit();
        awgn_transmit(encode(u), sigma, rng, llrs);
        dec.start(llrs);
        for (std::size_t phase = 0; phase < n; ++phase) {
            const std::uint8_t pred = dec.calct(phase) < 0 ? 1 : 0;
            if (pred != u[phase]) ++err[phase];
            dec.commit(phase, u[phase]); // genie: continue from the true bit
        }
    }
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&err](std::size_t a, std::size_t b) {
        if (err[a] != err[b]) return err[a] > err[b];
        return a < b;
    });
    std::vector<std::size_t> frozen(order.begin(),
                                    order.begin() + static_cast<std::ptrdiff_t>(n - k));
    std::sort(frozen.begin(), frozen.end());
    return CodeSpec(n, frozen);
}

FerResult run_fer(const CodeSpec& spec, const SimConfig& sim, const ChannelConfig& chan,
                  std::size_t trials, std::uint64_t seed) {
    if (trials == 0) throw std::invalid_argument("run_fer: need at least one trial");
    const double rate = static_cast<double>(spec.k()) / static_cast<double>(spec.n());
    const double sigma =
        chan.kind == ChannelKind::Awgn ? sigma_from_ebn0_db(chan.ebn0_db, rate) : 0.0;

    std::optional<ScDecoder> sc;
    std::optional<ListDecoder> list;
    if (sim.kind == DecoderKind::List)
        list.emplace(spec, sim.list_size, sim.list_opts);
    else
        sc.emplace(spec, sim.kind == DecoderKind::ScSf ? ScMode::Sf : ScMode::Eff);

    FerResult r;
    r.trials = trials;
    double ops = 0.0;
    BitVec info(spec.k());
    std::vector<double> llrs;
    const auto t0 = std::chrono::steady_clock::now();
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, t));
        for (std::size_t j = 0; j < info.size(); ++j) info[j] = rng.next_bit();
        const BitVec cw = encode(spec.expand_message(info));
        if (chan.kind == ChannelKind::Awgn)
            awgn_transmit(cw, sigma, rng, llrs);
        else
            bsc_transmit(cw, chan.crossover, rng, llrs);
        if (sc) {
            const ScResult res = sc->decode(llrs);
            ops += static_cast<double>(res.total.total());
            if (res.info_bits != info) ++r.errors;
        } else {
            const ListResult res = list->decode(llrs);
            ops += static_cast<double>(res.total.total());
            if (res.info_bits != info) ++r.errors;
        }
    }
    const auto t1 = std::chrono::steady_clock::now();
    r.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    r.fer = static_cast<double>(r.errors) / static_cast<double>(trials);
    r.avg_ops = ops / static_cast<double>(trials);
    return r;
}

std::string fer_csv_row(const CodeSpec& spec, const SimConfig& sim, const ChannelConfig& chan,
                        const FerResult& result) {
    const char* mode = sim.kind == DecoderKind::ScSf   ? "sf"
                       : sim.kind == DecoderKind::ScEff ? "eff"
                                                        : "list";
    const int l = sim.kind == DecoderKind::List ? sim.list_size : 1;
    // For the BSC the channel column carries the crossover probability.
    const double param = chan.kind == ChannelKind::Awgn ? chan.ebn0_db : chan.crossover;
    std::ostringstream out;
    out << spec.n() << ',' << spec.k() << ',' << l << ',' << mode << ','
        << std::setprecision(10) << param << ',' << result.trials << ',' << result.errors << ','
        << std::fixed << std::setprecision(6) << result.fer << ',' << std::setprecision(2)
        << result.avg_ops << ',' << result.wall_ms;
    return out.str();
}

namespace {

double published_total(ScMode mode, std::size_t n) {
    struct Entry {
        std::size_t n;
        double total;
    };
    static const Entry eff[] = {{16, 272},      {32, 968},     {64, 3000},   {128, 8344},
                                {1024, 1.27e5}, {4096, 6.70e5}, {16384, 3.33e7}};
    static const Entry sf[] = {{16, 718},      {32, 2934},    {64, 9718},   {128, 28086},
                               {1024, 3.33e5}, {4096, 1.65e6}, {16384, 7.80e6}};
    const Entry* tab = mode == ScMode::Eff ? eff : sf;
    const std::size_t cnt = mode == ScMode::Eff ? std::size(eff) : std::size(sf);
    for (std::size_t i = 0; i < cnt; ++i)
        if (tab[i].n == n) return tab[i].total;
    return 0.0;
}

} // namespace

std::vector<OpCountRow> opcount_report(ScMode mode, const std::vector<std::size_t>& sizes) {
    constexpr double kTol = 0.005;
    std::vector<OpCountRow> rows;
    rows.reserve(sizes.size());
    for (std::size_t n : sizes) {
        const CodeSpec spec(n, {});
        ScDecoder dec(spec, mode);
        const ScResult res = dec.decode(std::vector<double>(n, 0.0));
        OpCountRow row;
        row.n = n;
        row.adds = res.total.adds;
        row.cmps = res.total.cmps;
        row.total = res.total.total();
        row.published = published_total(mode, n);
        if (row.published > 0.0) {
            const double t = static_cast<double>(row.total);
            row.rel_err = std::abs(t - row.published) / row.published;
            if (row.rel_err <= kTol) {
                row.note = "matches reference";
            } else if (std::abs(10.0 * t - row.published) / row.published <= kTol) {
                row.note = "reference appears to be 10x the measured total (likely typo)";
            } else {
                row.note = "differs from reference";
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string opcount_table(const std::vector<OpCountRow>& rows, ScMode mode) {
    std::ostringstream out;
    out << "schedule: " << (mode == ScMode::Eff ? "eff" : "sf") << '\n';
    out << std::left << std::setw(8) << "n" << std::setw(12) << "adds" << std::setw(12) << "cmps"
        << std::setw(12) << "total" << std::setw(12) << "reference" << std::setw(10) << "rel_err"
        << "note" << '\n';
    for (const OpCountRow& r : rows) {
        out << std::left << std::setw(8) << r.n << std::setw(12) << r.adds << std::setw(12)
            << r.cmps << std::setw(12) << r.total;
        if (r.published > 0.0) {
            out << std::setw(12) << std::setprecision(8) << r.published << std::setw(10)
                << std::setprecision(3) << r.rel_err;
        } else {
            out << std::setw(12) << "-" << std::setw(10) << "-";
        }
        out << r.note << '\n';
    }
    return out.str();
}

} // namespace cvpolar
