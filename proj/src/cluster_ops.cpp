#include "cvpolar/cluster_ops.hpp"

#include <bit>
#include <limits>
#include <stdexcept>

namespace cvpolar {

BandMasks band_masks(int w) {
    if (w < 2 || w % 2 != 0 || w > 16) throw std::invalid_argument("band_masks: bad window");
    BandMasks mk;
    mk.tprime = w / 2;
    for (int r = 0; r < w; ++r) {
        std::uint32_t xm = 0, zm = 0;
        for (int q = 0; q < mk.tprime; ++q) {
            std::uint32_t bit = 1u << (mk.tprime - 1 - q);
            if (2 * q <= r && r <= 2 * q + 2) xm |= bit;
            if (2 * q < r && r <= 2 * q + 2) zm |= bit;
        }
        mk.x[r] = xm;
        mk.z[r] = zm;
    }
    return mk;
}

namespace {

// XOR of the masks selected by the bits of `v` (bit b of v, counted from the
// most significant of its `len` bits, selects mask[base + b]).
inline std::uint32_t fold_masks(const std::array<std::uint32_t, 16>& mask, int base,
                                std::uint32_t v, int len) {
    std::uint32_t acc = 0;
    for (int b = 0; b < len; ++b)
        if ((v >> (len - 1 - b)) & 1u) acc ^= mask[base + b];
    return acc;
}

inline std::uint32_t pack_ubits(const std::uint8_t* ubits, int i) {
    std::uint32_t v = 0;
    for (int b = 0; b < i; ++b) v = (v << 1) | (ubits[b] & 1u);
    return v;
}

} // namespace

void sigma_generic(int i, int t, int j, const double* A, const double* B,
                   const std::uint8_t* ubits, double* out, OpCounter& oc) {
    const int w = i + t + j;
    if (w % 2 != 0) throw std::invalid_argument("sigma_generic: i+t+j must be even");
    const BandMasks mk = band_masks(w);
    const std::uint32_t uv = pack_ubits(ubits, i);
    const std::uint32_t ax = fold_masks(mk.x, 0, uv, i);
    const std::uint32_t az = fold_masks(mk.z, 0, uv, i);
    for (std::uint32_t o = 0; o < (1u << t); ++o) {
        const std::uint32_t ox = ax ^ fold_masks(mk.x, i, o, t);
        const std::uint32_t oz = az ^ fold_masks(mk.z, i, o, t);
        double best = -std::numeric_limits<double>::infinity();
        for (std::uint32_t r = 0; r < (1u << j); ++r) {
            const std::uint32_t fx = ox ^ fold_masks(mk.x, i + t, r, j);
            const std::uint32_t fz = oz ^ fold_masks(mk.z, i + t, r, j);
            const double v = A[fx] + B[fz];
            oc.adds += 1;
            if (r == 0) {
                best = v;
            } else {
                oc.cmps += 1;
                if (v > best) best = v;
            }
        }
        out[o] = best;
    }
}

void sigma_bar(int i, int t, const double* A, const double* B, const std::uint8_t* ubits,
               double* out, OpCounter& oc) {
    const int w = i + t;
    if (w % 2 != 0) throw std::invalid_argument("sigma_bar: i+t must be even");
    const BandMasks mk = band_masks(w);
    const std::uint32_t uv = pack_ubits(ubits, i);
    const std::uint32_t ax = fold_masks(mk.x, 0, uv, i);
    const std::uint32_t az = fold_masks(mk.z, 0, uv, i);
    for (std::uint32_t h = 0; h < (1u << (t - 1)); ++h) {
        // Window out-bits are (h, 0): the deepest output bit stays zero.
        const std::uint32_t o = h << 1;
        const std::uint32_t ox = ax ^ fold_masks(mk.x, i, o, t);
        const std::uint32_t oz = az ^ fold_masks(mk.z, i, o, t);
        out[o] = A[ox] + B[oz];
        out[o | 1] = -out[o];
        oc.adds += 1;
    }
}

void mu_generic(int i, int t, int j, const double* A, const std::uint8_t* ubits, double* out,
                OpCounter& oc) {
    const std::uint32_t base = pack_ubits(ubits, i);
    for (std::uint32_t o = 0; o < (1u << t); ++o) {
        const double* blk = A + ((((static_cast<std::size_t>(base) << t) | o) << j));
        double best = blk[0];
        for (std::uint32_t r = 1; r < (1u << j); ++r) {
            oc.cmps += 1;
            if (blk[r] > best) best = blk[r];
        }
        out[o] = best;
    }
}

void mu_bar(int i, int t, const double* A, const std::uint8_t* ubits, double* out,
            OpCounter& /*oc*/) {
    const std::uint32_t base = pack_ubits(ubits, i);
    for (std::uint32_t o = 0; o < (1u << t); ++o) {
        const double v = A[(((static_cast<std::size_t>(base) << t) | o) << 1)];
        out[o] = v < 0 ? -v : v;
    }
}

double delta_mu(int i, int j, const double* A, const std::uint8_t* ubits, OpCounter& oc) {
    const std::uint32_t base = pack_ubits(ubits, i);
    double m[2];
    for (std::uint32_t bit = 0; bit < 2; ++bit) {
        const double* blk = A + (((static_cast<std::size_t>(base) << 1) | bit) << j);
        double best = blk[0];
        for (std::uint32_t r = 1; r < (1u << j); ++r) {
            oc.cmps += 1;
            if (blk[r] > best) best = blk[r];
        }
        m[bit] = best;
    }
    oc.adds += 1;
    return m[0] - m[1];
}

void max2d(double s0, double s1, double t0, double t1, double dS, double dT, double& r0,
           double& r1, OpCounter& oc) {
    const int a = dS < 0 ? 1 : 0;
    const int b = dT < 0 ? 1 : 0;
    const double big = (a ? s1 : s0) + (b ? t1 : t0);
    const double aS = a ? -dS : dS;
    const double aT = b ? -dT : dT;
    const double small = big - (aS < aT ? aS : aT);
    oc.adds += 2;
    oc.cmps += 1;
    if ((a ^ b) == 0) {
        r0 = big;
        r1 = small;
    } else {
        r0 = small;
        r1 = big;
    }
}

void sigma031_fast(const double* A, const double* B, double* out, OpCounter& oc) {
    double dA[2], dB[2];
    for (int r = 0; r < 2; ++r) {
        dA[r] = A[2 * r] - A[2 * r + 1];
        dB[r] = B[2 * r] - B[2 * r + 1];
    }
    oc.adds += 4;
    for (int x0 = 0; x0 < 2; ++x0) {
        for (int x2 = 0; x2 < 2; ++x2) {
            const int a = x0 ^ x2, b = x2;
            double r0, r1;
            max2d(A[2 * a], A[2 * a + 1], B[2 * b], B[2 * b + 1], dA[a], dB[b], r0, r1, oc);
            out[4 * x0 + x2] = x2 ? r1 : r0;             // C[x0, 0, x2]
            out[4 * x0 + 2 + (x2 ^ 1)] = x2 ? r0 : r1;   // C[x0, 1, ~x2]
        }
    }
}

void sigma141_fast(const double* A, const double* B, std::uint8_t u, double* out,
                   OpCounter& oc) {
    double dA[4], dB[4];
    for (int r = 0; r < 4; ++r) {
        dA[r] = A[2 * r] - A[2 * r + 1];
        dB[r] = B[2 * r] - B[2 * r + 1];
    }
    oc.adds += 8;
    for (int x = 0; x < 8; ++x) {
        const int x0 = (x >> 2) & 1, x1 = (x >> 1) & 1, x2 = x & 1;
        const int s = 2 * (u ^ x0 ^ x1) + (x1 ^ x2);
        const int t = 2 * (x0 ^ x1) + x2;
        double r0, r1;
        max2d(A[2 * s], A[2 * s + 1], B[2 * t], B[2 * t + 1], dA[s], dB[t], r0, r1, oc);
        out[2 * x] = r0;             // C[x, 0]
        out[2 * (x ^ 1) + 1] = r1;   // C[x0, x1, ~x2, 1]
    }
}

void sigma121_fast(const double* A, const double* B, std::uint8_t u, double* out,
                   OpCounter& oc) {
    double dA[2], dB[2];
    for (int r = 0; r < 2; ++r) {
        dA[r] = A[2 * r] - A[2 * r + 1];
        dB[r] = B[2 * r] - B[2 * r + 1];
    }
    oc.adds += 4;
    for (int y1 = 0; y1 < 2; ++y1) {
        const int a = u ^ y1, b = y1;
        double r0, r1;
        max2d(A[2 * a], A[2 * a + 1], B[2 * b], B[2 * b + 1], dA[a], dB[b], r0, r1, oc);
        out[y1] = y1 ? r1 : r0;             // C[0, y1]
        out[2 + (y1 ^ 1)] = y1 ? r0 : r1;   // C[1, ~y1]
    }
}

void sigma231_fast(const double* A, const double* B, std::uint8_t u0, std::uint8_t u1,
                   double* out, OpCounter& oc) {
    double dA[4], dB[4];
    for (int r = 0; r < 4; ++r) {
        dA[r] = A[2 * r] - A[2 * r + 1];
        dB[r] = B[2 * r] - B[2 * r + 1];
    }
    oc.adds += 8;
    for (int y0 = 0; y0 < 2; ++y0) {
        for (int y2 = 0; y2 < 2; ++y2) {
            const int a = 2 * (u0 ^ u1 ^ y0) + (y0 ^ y2);
            const int b = 2 * (u1 ^ y0) + y2;
            double r0, r1;
            max2d(A[2 * a], A[2 * a + 1], B[2 * b], B[2 * b + 1], dA[a], dB[b], r0, r1, oc);
            out[4 * y0 + y2] = y2 ? r1 : r0;             // C[y0, 0, y2]
            out[4 * y0 + 2 + (y2 ^ 1)] = y2 ? r0 : r1;   // C[y0, 1, ~y2]
        }
    }
}

void channel_anchor4(const double* y, double* out, OpCounter& oc) {
    // Walk the even half (deepest input bit zero) in Gray order of the
    // counter h = v_0 + 2 v_1 + 4 v_2; each step flips exactly one codeword
    // bit, so each value is one addition away from the previous.
    double cur = -0.5 * ((y[0] + y[1]) + (y[2] + y[3]));
    oc.adds += 3;
    std::uint32_t x = 0; // current codeword, bit b = x_b
    for (std::uint32_t h = 0; h < 8; ++h) {
        if (h > 0) {
            const int b = std::countr_zero(h);
            x ^= 1u << b;
            cur += ((x >> b) & 1u) ? y[b] : -y[b];
            oc.adds += 1;
        }
        const std::uint32_t idx =
            8 * (h & 1u) + 4 * ((h >> 1) & 1u) + 2 * ((h >> 2) & 1u);
        out[idx] = cur;
        out[idx + 1] = -cur;
    }
}

} // namespace cvpolar
