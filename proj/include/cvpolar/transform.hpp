#pragma once

#include "bits.hpp"

namespace cvpolar {

// Banded layer matrices of size l x (l/2) over F2:
//   X[i][j] = 1  iff  2j <= i <= 2j+2
//   Z[i][j] = 1  iff  2j <  i <= 2j+2
// Row i is returned as a BitVec of length l/2.
struct XZPair {
    std::vector<BitVec> x;
    std::vector<BitVec> z;
};
XZPair build_xz(int l);

// One transform layer: for input u of even length l >= 2 produce
//   u0_i = u_{2i} ^ u_{2i+1} ^ u_{2i+2}   for i < l/2-1,  u0_{l/2-1} = u_{l-2} ^ u_{l-1}
//   u1_i = u_{2i+1} ^ u_{2i+2}            for i < l/2-1,  u1_{l/2-1} = u_{l-1}
// which equal u*X and u*Z for the banded matrices above.
void layer_forward(const BitVec& u, BitVec& u0, BitVec& u1);

// Even-first gather: out[i] = in[2i], out[l/2+i] = in[2i+1].
void permute_even_odd(const BitVec& in, BitVec& out);

// Channel position of slot t within sub-transform i at layer `layer` of an
// n = 2^m transform: i + t * 2^(m - layer), for t in [0, 2^layer).
inline std::size_t sub_transform_channel(int m, int layer, std::size_t i, std::size_t t) {
    return i + (t << (m - layer));
}

// Full transform c = u * Q^(n), n a power of two. O(n log n).
BitVec encode(const BitVec& u);

// Inverse transform u = c * (Q^(n))^-1. O(n log n).
BitVec encode_inverse(const BitVec& c);

} // namespace cvpolar
