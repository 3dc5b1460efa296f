#pragma once

#include <cstdint>

#include "cluster_ops.hpp"
#include "op_count.hpp"

// Internal machinery: the reduced-operation per-phase schedule shared by the
// single-path decoder and the list decoder, plus decision propagation.
//
// Per layer (2..m) the decoder keeps one slot per cluster dimension (2..5)
// holding 2^(m-layer) clusters. A global phase maps to a chain of per-layer
// rows: a descent finds the deepest layer whose slots need refreshing, then
// rows are applied upward. Every row fully overwrites the (layer, dim)
// arrays it targets, which is what lets the list decoder rebind slots
// without copying.
//
// Decisions live in per-layer rings C[layer] of two bits per sub-transform:
// slot (p & 1) holds the decision of local phase p, so the last two
// decisions are always available. An operator with i given bits reads the
// last i decisions of its layer.

namespace cvpolar {

enum class POp : std::uint8_t {
    S031, // combine lower dim-2 pair -> dim-3
    S141, // combine lower dim-3 pair -> dim-4, one given bit
    S121, // combine lower dim-2 pair -> dim-2, one given bit
    S231, // combine lower dim-3 pair -> dim-3, two given bits
    SB150, // antisymmetric combine lower dim-3 pair -> dim-5, one given bit
    SB240, // antisymmetric combine lower dim-3 pair -> dim-4, two given bits
    SB130, // antisymmetric combine lower dim-2 pair -> dim-3, one given bit
    MB031, // |dim-4 even entries| -> dim-3
    MB041, // |dim-5 even entries| -> dim-4
    MB021, // |dim-3 even entries| -> dim-2
    M021,  // max out deepest: dim-3 -> dim-2
    M031,  // max out deepest: dim-4 -> dim-3
    M130,  // select given bit: dim-4 -> dim-3
    M120,  // select given bit: dim-3 -> dim-2
    M140,  // select given bit: dim-5 -> dim-4
    DM011, // decision difference from dim-2, maxing the deeper bit
    DM110, // decision difference from dim-2, one given bit
};

struct POpTraits {
    OpKind kind;
    int i, t, j;
    int src_dim;   // cluster dimension read
    int dst_dim;   // cluster dimension written (0 for decision differences)
    bool lower;    // reads the layer below (combines) vs the layer itself
};

inline const POpTraits& pop_traits(POp op) {
    static const POpTraits table[] = {
        {OpKind::SigmaFast, 0, 3, 1, 2, 3, true},  // S031
        {OpKind::SigmaFast, 1, 4, 1, 3, 4, true},  // S141
        {OpKind::SigmaFast, 1, 2, 1, 2, 2, true},  // S121
        {OpKind::SigmaFast, 2, 3, 1, 3, 3, true},  // S231
        {OpKind::SigmaBar, 1, 5, 0, 3, 5, true},   // SB150
        {OpKind::SigmaBar, 2, 4, 0, 3, 4, true},   // SB240
        {OpKind::SigmaBar, 1, 3, 0, 2, 3, true},   // SB130
        {OpKind::MuBar, 0, 3, 1, 4, 3, false},     // MB031
        {OpKind::MuBar, 0, 4, 1, 5, 4, false},     // MB041
        {OpKind::MuBar, 0, 2, 1, 3, 2, false},     // MB021
        {OpKind::Mu, 0, 2, 1, 3, 2, false},        // M021
        {OpKind::Mu, 0, 3, 1, 4, 3, false},        // M031
        {OpKind::Mu, 1, 3, 0, 4, 3, false},        // M130
        {OpKind::Mu, 1, 2, 0, 3, 2, false},        // M120
        {OpKind::Mu, 1, 4, 0, 5, 4, false},        // M140
        {OpKind::DeltaMu, 0, 1, 1, 2, 0, false},   // DM011
        {OpKind::DeltaMu, 1, 1, 0, 2, 0, false},   // DM110
    };
    return table[static_cast<int>(op)];
}

// Ops for (layer, local phase p) of the reduced schedule; returns the count
// written into out[0..2]. Within a row the listed order is mandatory: later
// ops may overwrite arrays earlier ops still read.
inline int eff_row(int m, int layer, std::size_t p, POp* out) {
    const std::size_t L = std::size_t{1} << layer;
    int c = 0;
    if (layer < m && p == L - 1) return 0; // nothing left to prepare below the top
    if (layer == 2) {
        // The dim-4 anchor cluster is built from channel values before
        // phase 0; here it only gets marginalized down.
        if (p == 0) {
            out[c++] = POp::MB031;
            out[c++] = POp::M021;
        } else if (p == 1) {
            out[c++] = POp::M130;
        } else if (p == 2) {
            out[c++] = POp::M120;
        }
    } else if (layer <= m - 2) {
        if (p == 0) {
            out[c++] = POp::S031;
            out[c++] = POp::M021;
        } else if (p == L - 5) {
            out[c++] = POp::SB150;
            out[c++] = POp::MB041;
            out[c++] = POp::M031;
        } else if (p == L - 4) {
            out[c++] = POp::M130;
            out[c++] = POp::M140;
        } else if (p == L - 3) {
            out[c++] = POp::M130;
        } else if (p == L - 2) {
            out[c++] = POp::M120;
        } else if (p & 1) { // 1 .. L-7
            out[c++] = POp::S141;
            out[c++] = POp::M031;
        } else { // 2 .. L-6
            out[c++] = POp::M130;
        }
    } else if (layer == m - 1) {
        if (p == 0) {
            out[c++] = POp::S031;
            out[c++] = POp::M021;
        } else if (p == L - 4) {
            out[c++] = POp::SB240;
            out[c++] = POp::MB031;
            out[c++] = POp::M021;
        } else if (p == L - 3) {
            out[c++] = POp::M120;
            out[c++] = POp::M130;
        } else if (p == L - 2) {
            out[c++] = POp::M120;
        } else if (p & 1) { // 1 .. L-5
            out[c++] = POp::M120;
        } else { // 2 .. L-6
            out[c++] = POp::S231;
            out[c++] = POp::M021;
        }
    } else { // layer == m
        if (p == 0) {
            out[c++] = POp::S031;
            out[c++] = POp::M021;
            out[c++] = POp::DM011;
        } else if (p == 1 || p == L - 2) {
            out[c++] = POp::DM110;
            out[c++] = POp::M120;
        } else if (p == 2 || p == L - 1) {
            out[c++] = POp::DM110;
        } else if (p == L - 3) {
            out[c++] = POp::SB130;
            out[c++] = POp::MB021;
            out[c++] = POp::DM011;
        } else if (p & 1) { // 3 .. L-5
            out[c++] = POp::S121;
            out[c++] = POp::DM011;
        } else { // 4 .. L-4
            out[c++] = POp::DM110;
        }
    }
    return c;
}

// Descent for a global phase > 0: returns the deepest layer to refresh and
// fills local[layer] for that layer up to m. Stops on an even phase, on
// local phase 1 or 2^layer - 1 (those rows read nothing newer below), or at
// layer 2.
inline int eff_descend(int m, std::size_t phase, std::size_t* local) {
    int layer = m;
    std::size_t phi = phase;
    local[layer] = phi;
    while (layer > 2 && (phi & 1) && phi != 1 &&
           phi != (std::size_t{1} << layer) - 1) {
        phi = (phi - 1) >> 1;
        --layer;
        local[layer] = phi;
    }
    return layer;
}

// Executes one row over a context. The context provides storage access and
// receives op tallies and the decision difference:
//   const double* read_lower(layer, dim);  const double* read_own(layer, dim);
//   double*       write_own(layer, dim);   const uint8_t* read_c(layer);
//   OpCounter&    counter(layer);          void set_llr(double);
//   bool          wants_llr();
// Given bits for an op at local phase p: ubits = (u_{p-2}, u_{p-1}) drawn
// from the layer's decision ring.
template <class Ctx>
void run_eff_row(Ctx& ctx, int m, int layer, std::size_t p) {
    POp ops[3];
    const int cnt = eff_row(m, layer, p, ops);
    const std::size_t nsub = std::size_t{1} << (m - layer);
    for (int q = 0; q < cnt; ++q) {
        const POp op = ops[q];
        const POpTraits& tr = pop_traits(op);
        OpCounter& oc = ctx.counter(layer);
        const std::uint8_t* ring = tr.i > 0 ? ctx.read_c(layer) : nullptr;
        if (tr.kind == OpKind::DeltaMu) {
            if (!ctx.wants_llr()) continue;
            const double* a = ctx.read_own(layer, tr.src_dim);
            std::uint8_t ub[2] = {0, 0};
            if (tr.i >= 1) ub[0] = ring[(p - 1) & 1];
            ctx.set_llr(delta_mu(tr.i, tr.j, a, ub, oc));
            continue;
        }
        const std::size_t ssz = std::size_t{1} << tr.src_dim;
        const std::size_t dsz = std::size_t{1} << tr.dst_dim;
        const double* src =
            tr.lower ? ctx.read_lower(layer, tr.src_dim) : ctx.read_own(layer, tr.src_dim);
        double* dst = ctx.write_own(layer, tr.dst_dim);
        for (std::size_t i = 0; i < nsub; ++i) {
            std::uint8_t ub[2] = {0, 0};
            if (tr.i == 1) {
                ub[0] = ring[2 * i + ((p - 1) & 1)];
            } else if (tr.i == 2) {
                ub[0] = ring[2 * i + (p & 1)];
                ub[1] = ring[2 * i + ((p - 1) & 1)];
            }
            double* out = dst + i * dsz;
            if (tr.lower) {
                const double* a = src + i * ssz;
                const double* b = src + (i + nsub) * ssz;
                switch (op) {
                case POp::S031: sigma031_fast(a, b, out, oc); break;
                case POp::S141: sigma141_fast(a, b, ub[0], out, oc); break;
                case POp::S121: sigma121_fast(a, b, ub[0], out, oc); break;
                case POp::S231: sigma231_fast(a, b, ub[0], ub[1], out, oc); break;
                default: sigma_bar(tr.i, tr.t, a, b, ub, out, oc); break;
                }
            } else {
                const double* a = src + i * ssz;
                if (tr.kind == OpKind::MuBar)
                    mu_bar(tr.i, tr.t, a, ub, out, oc);
                else
                    mu_generic(tr.i, tr.t, tr.j, a, ub, out, oc);
            }
        }
    }
}

// Full reduced-schedule pass for one global phase (anchor clusters must
// already be in place for phase 0).
template <class Ctx>
void run_eff_phase(Ctx& ctx, int m, std::size_t phase) {
    if (phase == 0) {
        for (int layer = 2; layer <= m; ++layer) run_eff_row(ctx, m, layer, 0);
        return;
    }
    std::size_t local[64];
    const int start = eff_descend(m, phase, local);
    for (int layer = start; layer <= m; ++layer) run_eff_row(ctx, m, layer, local[layer]);
}

// Decision propagation: records the phase bit in the layer-m ring and pushes
// completed lower-layer symbols down; a layer's pair '(even, odd)' of recent
// decisions determines the pair of child symbols once the following even
// decision arrives (immediately for the final phase of a layer). C[0] ends
// up holding the codeword in channel order.
// Context: const uint8_t* c_read(layer); uint8_t* c_write(layer).
template <class Ctx>
void update_c_run(Ctx&& ctx, int m, std::size_t phase, std::uint8_t bit) {
    ctx.c_write(m)[phase & 1] = bit;
    int layer = m;
    std::size_t phi = phase;
    std::size_t nsub = 1;
    while (phi != 0 && layer != 0) {
        const std::size_t psi = (phi - 1) >> 1;
        const std::size_t b = psi & 1;
        const std::uint8_t* cc = ctx.c_read(layer);
        std::uint8_t* d = ctx.c_write(layer - 1);
        if (phi & 1) {
            for (std::size_t i = 0; i < nsub; ++i) {
                const std::uint8_t c0 = cc[2 * i], c1 = cc[2 * i + 1];
                if (layer == 1) {
                    d[i] = c0 ^ c1;
                    d[i + nsub] = c1;
                } else {
                    d[2 * i + b] = c0 ^ c1;
                    d[2 * (i + nsub) + b] = c1;
                }
            }
            if (phi != (std::size_t{1} << layer) - 1) break;
        } else {
            for (std::size_t i = 0; i < nsub; ++i) {
                const std::uint8_t c0 = cc[2 * i];
                d[2 * i + b] ^= c0;
                d[2 * (i + nsub) + b] ^= c0;
            }
        }
        --layer;
        phi = psi;
        nsub <<= 1;
    }
}

} // namespace cvpolar
