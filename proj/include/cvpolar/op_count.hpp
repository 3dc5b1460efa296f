#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cvpolar {

// Tally of floating-point work. Additions and subtractions count as adds;
// two-way max / abs selections count as cmps. Sign flips, copies and
// multiplications by +-1/2 are free by convention.
struct OpCounter {
    long long adds = 0;
    long long cmps = 0;

    long long total() const { return adds + cmps; }
    OpCounter& operator+=(const OpCounter& o) {
        adds += o.adds;
        cmps += o.cmps;
        return *this;
    }
    friend OpCounter operator+(OpCounter a, const OpCounter& b) { return a += b; }
    friend bool operator==(const OpCounter& a, const OpCounter& b) {
        return a.adds == b.adds && a.cmps == b.cmps;
    }
};

// Operator families over clusters. Sigma combines two lower sub-clusters,
// Mu marginalizes the deepest symbol, DeltaMu produces the final decision
// difference. The *Bar forms exploit antisymmetry of their inputs in the
// deepest bit. Parameters (i, t, j): i given bits, t output bits, j bits
// maxed over; a sigma window spans i + t + j = 2t' positions.
enum class OpKind {
    SigmaGeneric,
    SigmaFast,
    SigmaBar,
    Mu,
    MuBar,
    DeltaMu,
};

// Cost charged for one application, split into adds/cmps.
//   SigmaGeneric: 2^(t+j) adds, 2^t (2^j - 1) cmps        (total 2^t (2^(j+1)-1))
//   SigmaFast:    only (0,3,1)=16, (1,4,1)=32, (1,2,1)=10, (2,3,1)=20 exist
//   SigmaBar:     2^(t-1) adds, except the channel anchor (0,4,0) = 10 adds
//   Mu:           2^t (2^j - 1) cmps
//   MuBar:        free (j must be 1)
//   DeltaMu:      1 add + 2 (2^j - 1) cmps (t must be 1)
// Throws on invalid triples, including parity-violating sigma windows.
inline OpCounter cost_of(OpKind kind, int i, int t, int j) {
    auto bad = [&](const char* why) -> OpCounter {
        throw std::invalid_argument("cost_of(" + std::to_string(i) + "," + std::to_string(t) +
                                    "," + std::to_string(j) + "): " + why);
    };
    if (i < 0 || t < 1 || j < 0) return bad("indices out of range");
    switch (kind) {
    case OpKind::SigmaGeneric:
        if ((i + t + j) % 2 != 0) return bad("sigma window i+t+j must be even");
        return {1LL << (t + j), (1LL << t) * ((1LL << j) - 1)};
    case OpKind::SigmaFast:
        if ((i + t + j) % 2 != 0) return bad("sigma window i+t+j must be even");
        if (i == 0 && t == 3 && j == 1) return {12, 4};
        if (i == 1 && t == 4 && j == 1) return {24, 8};
        if (i == 1 && t == 2 && j == 1) return {8, 2};
        if (i == 2 && t == 3 && j == 1) return {16, 4};
        return bad("no fast form for this sigma");
    case OpKind::SigmaBar:
        if (j != 0) return bad("sigma-bar requires j = 0");
        if ((i + t) % 2 != 0) return bad("sigma window i+t must be even");
        if (i == 0 && t == 4) return {10, 0}; // channel anchor, Gray-walk build
        return {1LL << (t - 1), 0};
    case OpKind::Mu:
        return {0, (1LL << t) * ((1LL << j) - 1)};
    case OpKind::MuBar:
        if (j != 1) return bad("mu-bar requires j = 1");
        return {0, 0};
    case OpKind::DeltaMu:
        if (t != 1) return bad("delta-mu requires t = 1");
        return {1, 2 * ((1LL << j) - 1)};
    }
    return bad("unknown kind");
}

} // namespace cvpolar
