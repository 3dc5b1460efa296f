#include "cvpolar/transform.hpp"

namespace cvpolar {

XZPair build_xz(int l) {
    if (l < 2 || l % 2 != 0) throw std::invalid_argument("build_xz: l must be even and >= 2");
    XZPair p;
    p.x.assign(l, BitVec(l / 2, 0));
    p.z.assign(l, BitVec(l / 2, 0));
    for (int i = 0; i < l; ++i) {
        for (int j = 0; j < l / 2; ++j) {
            if (2 * j <= i && i <= 2 * j + 2) p.x[i][j] = 1;
            if (2 * j < i && i <= 2 * j + 2) p.z[i][j] = 1;
        }
    }
    return p;
}

void layer_forward(const BitVec& u, BitVec& u0, BitVec& u1) {
    const std::size_t l = u.size();
    if (l < 2 || l % 2 != 0) throw std::invalid_argument("layer_forward: length must be even and >= 2");
    const std::size_t h = l / 2;
    u0.resize(h);
    u1.resize(h);
    for (std::size_t i = 0; i + 1 < h; ++i) {
        u0[i] = u[2 * i] ^ u[2 * i + 1] ^ u[2 * i + 2];
        u1[i] = u[2 * i + 1] ^ u[2 * i + 2];
    }
    u0[h - 1] = u[l - 2] ^ u[l - 1];
    u1[h - 1] = u[l - 1];
}

void permute_even_odd(const BitVec& in, BitVec& out) {
    const std::size_t l = in.size();
    if (l % 2 != 0) throw std::invalid_argument("permute_even_odd: length must be even");
    out.resize(l);
    for (std::size_t i = 0; i < l / 2; ++i) {
        out[i] = in[2 * i];
        out[l / 2 + i] = in[2 * i + 1];
    }
}

namespace {

void encode_rec(const BitVec& u, BitVec& c) {
    const std::size_t n = u.size();
    if (n == 1) {
        c = u;
        return;
    }
    BitVec u0, u1, c0, c1;
    layer_forward(u, u0, u1);
    encode_rec(u0, c0);
    encode_rec(u1, c1);
    c.resize(n);
    for (std::size_t i = 0; i < n / 2; ++i) {
        c[2 * i] = c0[i];
        c[2 * i + 1] = c1[i];
    }
}

void decode_rec(const BitVec& c, BitVec& u) {
    const std::size_t n = c.size();
    if (n == 1) {
        u = c;
        return;
    }
    BitVec d0(n / 2), d1(n / 2), u0, u1;
    for (std::size_t i = 0; i < n / 2; ++i) {
        d0[i] = c[2 * i];
        d1[i] = c[2 * i + 1];
    }
    decode_rec(d0, u0);
    decode_rec(d1, u1);
    // Invert the layer map from the tail: the last pair is triangular, then
    // each earlier pair is resolved using the already-known u_{2i+2}.
    u.resize(n);
    u[n - 1] = u1[n / 2 - 1];
    u[n - 2] = u0[n / 2 - 1] ^ u[n - 1];
    for (std::size_t i = n / 2 - 1; i-- > 0;) {
        u[2 * i + 1] = u1[i] ^ u[2 * i + 2];
        u[2 * i] = u0[i] ^ u[2 * i + 1] ^ u[2 * i + 2];
    }
}

} // namespace

BitVec encode(const BitVec& u) {
    if (!is_power_of_two(u.size()))
        throw std::invalid_argument("encode: length must be a power of two");
    BitVec c;
    encode_rec(u, c);
    return c;
}

BitVec encode_inverse(const BitVec& c) {
    if (!is_power_of_two(c.size()))
        throw std::invalid_argument("encode_inverse: length must be a power of two");
    BitVec u;
    decode_rec(c, u);
    return u;
}

} // namespace cvpolar
