#pragma once

#include <vector>

#include "bits.hpp"
#include "code_spec.hpp"
#include "op_count.hpp"

namespace cvpolar {

enum class ScMode {
    Sf,  // straightforward schedule: one 8-entry slot per sub-transform
    Eff, // reduced schedule: per-dimension slots, persistent marginals
};

struct ScResult {
    BitVec u_hat;      // all n decided input bits
    BitVec info_bits;  // the k message positions of u_hat
    BitVec codeword;   // re-encoded decisions, recovered from propagation
    std::vector<double> llrs; // decision difference seen at each phase
    OpCounter total;
    std::vector<OpCounter> layer_ops; // indexed by layer 1..m
    OpCounter conversion_ops;         // final decision-difference work (Sf only)
};

// Successive-cancellation decoder with min-sum (max-log) combining. The
// stepwise interface visits phases strictly in order:
//   start(llr); for each phase: calct(phase) then commit(phase, bit);
//   finish() returns the result.
// commit accepts any bit, which supports genie-aided construction and
// code-design experiments; decode() applies the standard rule
//   bit = 1 iff the phase is an information phase and calct() < 0.
class ScDecoder {
public:
    ScDecoder(const CodeSpec& spec, ScMode mode);

    void start(const std::vector<double>& channel_llrs);
    double calct(std::size_t phase);
    void commit(std::size_t phase, std::uint8_t bit);
    ScResult finish();

    ScResult decode(const std::vector<double>& channel_llrs);

    const CodeSpec& spec() const { return spec_; }
    ScMode mode() const { return mode_; }

    // Diagnostics: mutable cluster storage (reduced schedule: by dimension
    // 2..5; straightforward: one stride-8 slot per sub-transform).
    std::vector<double>& eff_clusters(int layer, int dim);
    std::vector<double>& sf_clusters(int layer);
    const std::vector<BitVec>& decision_arrays() const { return c_; }

private:
    struct EffCtx;
    friend struct EffCtx;

    void require_stage(std::size_t phase, bool committing) const;
    double calct_sf(std::size_t phase);
    void sf_apply_sigma(int layer, std::size_t p, bool bulk022);

    CodeSpec spec_;
    ScMode mode_;
    int m_;
    std::size_t n_;

    // state of the decode in flight
    bool running_ = false;
    std::size_t cursor_ = 0; // next phase
    bool awaiting_commit_ = false;
    double cur_llr_ = 0.0;

    std::vector<std::vector<std::vector<double>>> t_eff_; // [layer][dim] clusters
    std::vector<std::vector<double>> t_sf_;               // [layer] stride-8 slots
    std::vector<BitVec> c_;                               // decision rings + codeword
    BitVec u_hat_;
    std::vector<double> llrs_;
    std::vector<OpCounter> layer_ops_;
    OpCounter conversion_ops_;
};

ScResult decode_sc(const CodeSpec& spec, const std::vector<double>& channel_llrs, ScMode mode);

} // namespace cvpolar
