#pragma once

#include <array>
#include <cstdint>

#include "op_count.hpp"

namespace cvpolar {

// A cluster of dimension d is an array of 2^d doubles holding relative
// log-likelihoods of the d tracked symbols. Entry packing puts the first
// tracked symbol at the MOST significant position of the linear index:
//   index(x_0, ..., x_{d-1}) = sum_q x_q * 2^(d-1-q).
//
// Combine operators sigma_{i,t,j} merge two sub-clusters A (even half) and
// B (odd half) of dimension t' = (i+t+j)/2 into a dimension-t cluster,
// conditioning on i known symbols (ubits), producing t new symbols, and
// maximizing over j deeper symbols. Marginalizations mu_{i,t,j} shrink one
// cluster the same way. All kernels tally their floating-point work.

// Column masks of the banded window matrices for a window of w = 2t' bits:
// for window bit r, xmask[r] (zmask[r]) packs the toggled sub-cluster bits,
// with sub-cluster bit q at weight 2^(t'-1-q).
struct BandMasks {
    int tprime = 0;
    std::array<std::uint32_t, 16> x{};
    std::array<std::uint32_t, 16> z{};
};
BandMasks band_masks(int w);

// Generic combine: out has 2^t entries.
void sigma_generic(int i, int t, int j, const double* A, const double* B,
                   const std::uint8_t* ubits, double* out, OpCounter& oc);

// Combine producing a cluster antisymmetric in its deepest bit (j = 0 and
// both inputs antisymmetric in their deepest bit): only the even entries are
// summed, odd entries are their negations. out has 2^t entries.
void sigma_bar(int i, int t, const double* A, const double* B, const std::uint8_t* ubits,
               double* out, OpCounter& oc);

// Generic marginalization: out[o] = max over the 2^j deepest entries.
void mu_generic(int i, int t, int j, const double* A, const std::uint8_t* ubits, double* out,
                OpCounter& oc);

// Free marginalization of an input antisymmetric in its deepest bit:
// out[o] = |A[u, o, 0]|.
void mu_bar(int i, int t, const double* A, const std::uint8_t* ubits, double* out,
            OpCounter& oc);

// Decision difference: returns L[0] - L[1] over the bit following the i
// given bits, maximizing over j deeper bits.
double delta_mu(int i, int j, const double* A, const std::uint8_t* ubits, OpCounter& oc);

// Three-operation joint maximization. Inputs: S = (s0, s1), T = (t0, t1),
// with their precomputed differences dS = s0 - s1, dT = t0 - t1. Outputs
//   r_c = max over a^b = c of S_a + T_b.
// The larger component is exact; the other is derived as big - min(|dS|,|dT|).
void max2d(double s0, double s1, double t0, double t1, double dS, double dT, double& r0,
           double& r1, OpCounter& oc);

// Reduced-operation combines (results match sigma_generic to rounding):
void sigma031_fast(const double* A, const double* B, double* out, OpCounter& oc); // 16 ops
void sigma141_fast(const double* A, const double* B, std::uint8_t u, double* out,
                   OpCounter& oc); // 32 ops
void sigma121_fast(const double* A, const double* B, std::uint8_t u, double* out,
                   OpCounter& oc); // 10 ops
void sigma231_fast(const double* A, const double* B, std::uint8_t u0, std::uint8_t u1,
                   double* out, OpCounter& oc); // 20 ops

// Channel anchor for a width-4 sub-transform: builds the 16-entry cluster
//   out[v] = sum_i x_i(v) y[i] - (y[0]+y[1]+y[2]+y[3])/2,   x(v) = v * Q(4),
// in 10 additions via a Gray walk over the even half; antisymmetric in the
// deepest bit of v.
void channel_anchor4(const double* y, double* out, OpCounter& oc);

} // namespace cvpolar
