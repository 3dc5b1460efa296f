#include "cvpolar/sc_decoder.hpp"

#include <stdexcept>

#include "cvpolar/schedule.hpp"
#include "cvpolar/transform.hpp"

namespace cvpolar {

struct ScDecoder::EffCtx {
    ScDecoder* d;
    const double* read_lower(int layer, int dim) const {
        return d->t_eff_[layer - 1][dim].data();
    }
    const double* read_own(int layer, int dim) const { return d->t_eff_[layer][dim].data(); }
    double* write_own(int layer, int dim) const { return d->t_eff_[layer][dim].data(); }
    const std::uint8_t* read_c(int layer) const { return d->c_[layer].data(); }
    OpCounter& counter(int layer) const { return d->layer_ops_[layer]; }
    void set_llr(double v) const { d->cur_llr_ = v; }
    bool wants_llr() const { return true; }
};

namespace {

struct PlainCCtx {
    std::vector<BitVec>* c;
    const std::uint8_t* c_read(int layer) const { return (*c)[layer].data(); }
    std::uint8_t* c_write(int layer) const { return (*c)[layer].data(); }
};

} // namespace

ScDecoder::ScDecoder(const CodeSpec& spec, ScMode mode) : spec_(spec), mode_(mode) {
    m_ = spec_.m();
    n_ = spec_.n();
    if (mode_ == ScMode::Sf && n_ < 8)
        throw std::invalid_argument("ScDecoder: straightforward schedule needs n >= 8");
    if (mode_ == ScMode::Eff && n_ < 16)
        throw std::invalid_argument("ScDecoder: reduced schedule needs n >= 16");

    c_.resize(m_ + 1);
    for (int layer = 0; layer <= m_; ++layer)
        c_[layer].assign(std::size_t{1} << (m_ - layer + 1), 0);

    if (mode_ == ScMode::Eff) {
        t_eff_.resize(m_ + 1);
        for (int layer = 2; layer <= m_; ++layer) {
            t_eff_[layer].resize(6);
            const std::size_t nsub = std::size_t{1} << (m_ - layer);
            for (int dim = 2; dim <= 5; ++dim)
                t_eff_[layer][dim].assign(nsub << dim, 0.0);
        }
    } else {
        t_sf_.resize(m_ + 1);
        for (int layer = 1; layer <= m_; ++layer)
            t_sf_[layer].assign(std::size_t{8} << (m_ - layer), 0.0);
    }
}

std::vector<double>& ScDecoder::eff_clusters(int layer, int dim) {
    if (mode_ != ScMode::Eff || layer < 2 || layer > m_ || dim < 2 || dim > 5)
        throw std::invalid_argument("eff_clusters: bad layer/dim");
    return t_eff_[layer][dim];
}

std::vector<double>& ScDecoder::sf_clusters(int layer) {
    if (mode_ != ScMode::Sf || layer < 1 || layer > m_)
        throw std::invalid_argument("sf_clusters: bad layer");
    return t_sf_[layer];
}

void ScDecoder::start(const std::vector<double>& llr) {
    if (llr.size() != n_)
        throw std::invalid_argument("start: expected " + std::to_string(n_) +
                                    " channel values, got " + std::to_string(llr.size()));
    running_ = true;
    cursor_ = 0;
    awaiting_commit_ = false;
    u_hat_.assign(n_, 0);
    llrs_.assign(n_, 0.0);
    layer_ops_.assign(m_ + 1, OpCounter{});
    conversion_ops_ = OpCounter{};
    for (auto& ring : c_) std::fill(ring.begin(), ring.end(), 0);

    if (mode_ == ScMode::Eff) {
        const std::size_t nsub = std::size_t{1} << (m_ - 2);
        double* anchors = t_eff_[2][4].data();
        for (std::size_t i = 0; i < nsub; ++i) {
            double y4[4];
            for (int t = 0; t < 4; ++t) y4[t] = llr[sub_transform_channel(m_, 2, i, t)];
            channel_anchor4(y4, anchors + 16 * i, layer_ops_[2]);
        }
    } else {
        // Depth-1 clusters over channel pairs (i, i + n/2):
        // entry (a, b) = (a^b) y_i + b y_{i+n/2}; one addition each.
        const std::size_t half = n_ / 2;
        for (std::size_t i = 0; i < half; ++i) {
            double* slot = t_sf_[1].data() + 8 * i;
            slot[0] = 0.0;
            slot[1] = llr[i] + llr[i + half];
            slot[2] = llr[i];
            slot[3] = llr[i + half];
            layer_ops_[1].adds += 1;
        }
    }
}

void ScDecoder::require_stage(std::size_t phase, bool committing) const {
    if (!running_) throw std::logic_error("decoder not started");
    if (phase >= n_) throw std::invalid_argument("phase out of range");
    if (phase != cursor_)
        throw std::logic_error("phases must be visited in order: expected " +
                               std::to_string(cursor_) + ", got " + std::to_string(phase));
    if (committing != awaiting_commit_)
        throw std::logic_error(committing ? "commit before calct" : "calct called twice");
}

double ScDecoder::calct(std::size_t phase) {
    require_stage(phase, false);
    if (mode_ == ScMode::Eff) {
        EffCtx ctx{this};
        run_eff_phase(ctx, m_, phase);
    } else {
        cur_llr_ = calct_sf(phase);
    }
    llrs_[phase] = cur_llr_;
    awaiting_commit_ = true;
    return cur_llr_;
}

void ScDecoder::commit(std::size_t phase, std::uint8_t bit) {
    require_stage(phase, true);
    u_hat_[phase] = bit & 1;
    update_c_run(PlainCCtx{&c_}, m_, phase, bit & 1);
    awaiting_commit_ = false;
    ++cursor_;
}

ScResult ScDecoder::finish() {
    if (!running_) throw std::logic_error("decoder not started");
    if (cursor_ != n_ || awaiting_commit_) throw std::logic_error("decode incomplete");
    ScResult r;
    r.u_hat = u_hat_;
    r.info_bits = spec_.extract_message(u_hat_);
    r.codeword.assign(c_[0].begin(), c_[0].begin() + static_cast<std::ptrdiff_t>(n_));
    r.llrs = llrs_;
    r.layer_ops = layer_ops_;
    r.conversion_ops = conversion_ops_;
    for (int layer = 1; layer <= m_; ++layer) r.total += layer_ops_[layer];
    r.total += conversion_ops_;
    running_ = false;
    return r;
}

ScResult ScDecoder::decode(const std::vector<double>& llr) {
    start(llr);
    for (std::size_t phase = 0; phase < n_; ++phase) {
        const double v = calct(phase);
        const std::uint8_t bit = (!spec_.is_frozen(phase) && v < 0) ? 1 : 0;
        commit(phase, bit);
    }
    return finish();
}

// ---- straightforward schedule ----

void ScDecoder::sf_apply_sigma(int layer, std::size_t p, bool bulk022) {
    const std::size_t L = std::size_t{1} << layer;
    const std::size_t nsub = std::size_t{1} << (m_ - layer);
    int i, t, j;
    if (bulk022) {
        i = 0; t = 2; j = 2;
    } else if (p == 0) {
        i = 0; t = 3; j = 1;
    } else if (p == L - 3) {
        i = 1; t = 3; j = 0;
    } else if (p == L - 2) {
        i = 2; t = 2; j = 0;
    } else if (p & 1) { // 1 .. L-5
        i = 1; t = 3; j = 2;
    } else { // 2 .. L-4
        i = 2; t = 3; j = 1;
    }
    const std::size_t ssz = 8; // lower slots are stride-8 regardless of dimension
    for (std::size_t s = 0; s < nsub; ++s) {
        std::uint8_t ub[2] = {0, 0};
        if (i == 1) {
            ub[0] = c_[layer][2 * s + ((p - 1) & 1)];
        } else if (i == 2) {
            ub[0] = c_[layer][2 * s + (p & 1)];
            ub[1] = c_[layer][2 * s + ((p - 1) & 1)];
        }
        sigma_generic(i, t, j, t_sf_[layer - 1].data() + ssz * s,
                      t_sf_[layer - 1].data() + ssz * (s + nsub), ub,
                      t_sf_[layer].data() + 8 * s, layer_ops_[layer]);
    }
}

double ScDecoder::calct_sf(std::size_t phase) {
    const std::uint8_t* ring = c_[m_].data();
    if (phase == n_ - 2) {
        // The depth-3 cluster from the previous phase already covers the
        // last three symbols; condition on the decided one.
        std::uint8_t ub[1] = {ring[(phase - 1) & 1]};
        return delta_mu(1, 1, t_sf_[m_].data(), ub, conversion_ops_);
    }
    if (phase == n_ - 1) {
        std::uint8_t ub[2] = {ring[phase & 1], ring[(phase - 1) & 1]};
        return delta_mu(2, 0, t_sf_[m_].data(), ub, conversion_ops_);
    }
    if (phase == 0) {
        for (int layer = 2; layer < m_; ++layer) sf_apply_sigma(layer, 0, true);
        sf_apply_sigma(m_, 0, false);
    } else {
        int layer = m_;
        std::size_t phi = phase;
        while (layer > 2 && (phi & 1)) {
            phi = (phi - 1) >> 1;
            --layer;
        }
        for (; layer <= m_; ++layer, phi = 2 * phi + 1) sf_apply_sigma(layer, phi, false);
    }
    return delta_mu(0, 2, t_sf_[m_].data(), nullptr, conversion_ops_);
}

ScResult decode_sc(const CodeSpec& spec, const std::vector<double>& llr, ScMode mode) {
    ScDecoder dec(spec, mode);
    return dec.decode(llr);
}

} // namespace cvpolar
