#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "bits.hpp"
#include "code_spec.hpp"
#include "op_count.hpp"

namespace cvpolar {

// Slot pool for list decoding. Every path holds, per (layer, storage class),
// an index into a pool of fixed-size slots with reference counts, so cloning
// a path copies only the index row. Cluster slots (classes for dimensions
// 2..5) are never copied: a write access rebinds the path to a free slot,
// which the schedule then fully overwrites. Decision slots (class 0) are
// copy-on-write since decisions accumulate. Slot index l is a permanent
// zero sentinel that newly started paths point at.
class ListPool {
public:
    ListPool(int m, int list_size);

    int list_size() const { return l_; }
    int levels() const { return m_; }

    void reset();
    int init_path(); // activates path 0 bound to sentinels
    int clone_path(int p);
    void kill_path(int p);
    bool active(int p) const { return active_[static_cast<std::size_t>(p)] != 0; }
    int active_count() const;

    double* acquire_t(int p, int layer, int dim);
    const double* read_t(int p, int layer, int dim) const;
    std::uint8_t* acquire_c(int p, int layer);
    const std::uint8_t* read_c(int p, int layer) const;

    long long decision_copies() const { return decision_copies_; }
    long long cluster_copies() const { return cluster_copies_; }

    // Checks reference-count conservation against the index rows of active
    // paths, free-stack consistency, and sentinel immutability; throws
    // std::logic_error on any violation.
    void audit() const;

private:
    struct SlotClass {
        std::size_t stride = 0;              // entries per slot
        std::vector<double> tdata;           // classes 1..4 (cluster dims 2..5)
        std::vector<std::uint8_t> cdata;     // class 0 (decision bits), l+1 slots
        std::vector<std::uint32_t> refcount; // l+1 entries, last pinned for the sentinel
        std::vector<int> free_slots;
    };
    static constexpr std::uint32_t kSentinelRef = 0xffffffffu;

    SlotClass& cls(int layer, int d) { return classes_[static_cast<std::size_t>(layer) * 5 + d]; }
    const SlotClass& cls(int layer, int d) const {
        return classes_[static_cast<std::size_t>(layer) * 5 + d];
    }
    int& aidx(int layer, int p, int d) {
        return array_index_[(static_cast<std::size_t>(layer) * l_ + p) * 5 + d];
    }
    int aidx(int layer, int p, int d) const {
        return array_index_[(static_cast<std::size_t>(layer) * l_ + p) * 5 + d];
    }

    int m_;
    int l_;
    std::vector<SlotClass> classes_;   // (m+1) x 5
    std::vector<int> array_index_;     // (m+1) x l x 5
    std::vector<std::uint8_t> active_;
    long long decision_copies_ = 0;
    long long cluster_copies_ = 0;
};

struct ListOptions {
    bool skip_head = false; // elide decision differences and scoring while
                            // every phase so far is frozen
    bool sc_tail = false;   // after the last frozen phase, keep only the best
                            // path and extend it without cloning
};

struct ListResult {
    BitVec u_hat;
    BitVec info_bits;
    BitVec codeword;
    double score = 0.0;
    OpCounter total;
    std::vector<OpCounter> layer_ops;
    long long selection_comparisons = 0; // candidate-sort comparator calls
    long long decision_copies = 0;
    long long cluster_copies = 0; // structurally zero; reported to prove it
};

// Successive-cancellation list decoder over the reduced schedule. Paths are
// scored by accumulated log-likelihood penalties (0 for the empty path):
// frozen phases add min(0, R); an information phase offers the natural
// continuation at the unchanged score and the flipped bit at score - |R|.
// The best min(2|paths|, l) candidates survive, ordered by score, then
// smaller path index, then natural before flipped.
class ListDecoder {
public:
    ListDecoder(const CodeSpec& spec, int list_size, ListOptions opts = {});

    ListResult decode(const std::vector<double>& channel_llrs);
    // Same, invoking after_phase(phase) once per phase (audits, traces).
    ListResult decode_traced(const std::vector<double>& channel_llrs,
                             const std::function<void(std::size_t)>& after_phase);

    const CodeSpec& spec() const { return spec_; }
    int list_size() const { return l_; }
    ListPool& pool() { return pool_; }
    const std::vector<double>& scores() const { return score_; }

private:
    struct PathCtx;
    friend struct PathCtx;
    void commit_path(int p, std::size_t phase, std::uint8_t bit);

    CodeSpec spec_;
    int l_;
    ListOptions opts_;
    int m_;
    std::size_t n_;
    ListPool pool_;
    std::vector<double> llr_path_;  // R: per-path decision difference
    std::vector<double> score_;
    std::vector<OpCounter> layer_ops_;
    long long sel_cmps_ = 0;
};

ListResult decode_list(const CodeSpec& spec, const std::vector<double>& channel_llrs,
                       int list_size, ListOptions opts = {});

} // namespace cvpolar
