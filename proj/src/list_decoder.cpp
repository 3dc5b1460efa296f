#include "cvpolar/list_decoder.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>

#include "cvpolar/cluster_ops.hpp"
#include "cvpolar/schedule.hpp"
#include "cvpolar/transform.hpp"

namespace cvpolar {

ListPool::ListPool(int m, int list_size) : m_(m), l_(list_size) {
    if (m < 2) throw std::invalid_argument("ListPool: need at least 4 channel symbols");
    if (list_size < 1) throw std::invalid_argument("ListPool: list size must be positive");
    classes_.resize(static_cast<std::size_t>(m_ + 1) * 5);
    array_index_.assign(static_cast<std::size_t>(m_ + 1) * l_ * 5, -1);
    active_.assign(static_cast<std::size_t>(l_), 0);
    for (int layer = 0; layer <= m_; ++layer) {
        for (int d = 0; d < 5; ++d) {
            SlotClass& k = cls(layer, d);
            if (d == 0) {
                k.stride = std::size_t{1} << (m_ - layer + 1);
                k.cdata.assign(k.stride * (l_ + 1), 0); // sentinel slot stays zero
            } else if (layer >= 2) {
                const int dim = d + 1; // classes 1..4 hold cluster dims 2..5
                k.stride = (std::size_t{1} << (m_ - layer)) << dim;
                k.tdata.assign(k.stride * l_, 0.0);
            }
            k.refcount.assign(static_cast<std::size_t>(l_) + 1, 0);
            k.free_slots.reserve(static_cast<std::size_t>(l_));
        }
    }
    reset();
}

void ListPool::reset() {
    std::fill(array_index_.begin(), array_index_.end(), -1);
    std::fill(active_.begin(), active_.end(), std::uint8_t{0});
    for (SlotClass& k : classes_) {
        std::fill(k.refcount.begin(), k.refcount.end(), 0u);
        k.refcount[static_cast<std::size_t>(l_)] = kSentinelRef;
        k.free_slots.clear();
        for (int s = l_ - 1; s >= 0; --s) k.free_slots.push_back(s);
    }
    decision_copies_ = 0;
    cluster_copies_ = 0;
}

int ListPool::init_path() {
    for (int p = 0; p < l_; ++p)
        if (active_[static_cast<std::size_t>(p)])
            throw std::logic_error("ListPool: init_path with paths still active");
    active_[0] = 1;
    for (int layer = 0; layer <= m_; ++layer)
        for (int d = 0; d < 5; ++d) aidx(layer, 0, d) = l_;
    return 0;
}

int ListPool::clone_path(int p) {
    if (p < 0 || p >= l_ || !active_[static_cast<std::size_t>(p)])
        throw std::invalid_argument("ListPool: clone of inactive path");
    int q = -1;
    for (int c = 0; c < l_; ++c)
        if (!active_[static_cast<std::size_t>(c)]) { q = c; break; }
    if (q < 0) throw std::logic_error("ListPool: no free path to clone into");
    active_[static_cast<std::size_t>(q)] = 1;
    for (int layer = 0; layer <= m_; ++layer) {
        for (int d = 0; d < 5; ++d) {
            const int s = aidx(layer, p, d);
            aidx(layer, q, d) = s;
            if (s != l_) ++cls(layer, d).refcount[static_cast<std::size_t>(s)];
        }
    }
    return q;
}

void ListPool::kill_path(int p) {
    if (p < 0 || p >= l_ || !active_[static_cast<std::size_t>(p)])
        throw std::invalid_argument("ListPool: kill of inactive path");
    for (int layer = 0; layer <= m_; ++layer) {
        for (int d = 0; d < 5; ++d) {
            const int s = aidx(layer, p, d);
            aidx(layer, p, d) = -1;
            if (s != l_) {
                SlotClass& k = cls(layer, d);
                if (--k.refcount[static_cast<std::size_t>(s)] == 0) k.free_slots.push_back(s);
            }
        }
    }
    active_[static_cast<std::size_t>(p)] = 0;
}

int ListPool::active_count() const {
    int c = 0;
    for (std::uint8_t a : active_) c += a != 0;
    return c;
}

double* ListPool::acquire_t(int p, int layer, int dim) {
    const int d = dim - 1;
    SlotClass& k = cls(layer, d);
    int& s = aidx(layer, p, d);
    if (s != l_ && k.refcount[static_cast<std::size_t>(s)] == 1)
        return k.tdata.data() + static_cast<std::size_t>(s) * k.stride;
    if (s != l_) --k.refcount[static_cast<std::size_t>(s)];
    // A free slot always exists: distinct bound slots never exceed the number
    // of bindings, and this path is about to drop one shared binding.
    const int ns = k.free_slots.back();
    k.free_slots.pop_back();
    k.refcount[static_cast<std::size_t>(ns)] = 1;
    s = ns;
    // No copy: the caller overwrites the whole slot before anyone reads it.
    return k.tdata.data() + static_cast<std::size_t>(ns) * k.stride;
}

const double* ListPool::read_t(int p, int layer, int dim) const {
    const int d = dim - 1;
    const SlotClass& k = cls(layer, d);
    const int s = aidx(layer, p, d);
    if (s < 0 || s == l_)
        throw std::logic_error("ListPool: read of cluster slot that was never written (layer " +
                               std::to_string(layer) + ", dim " + std::to_string(dim) + ")");
    return k.tdata.data() + static_cast<std::size_t>(s) * k.stride;
}

std::uint8_t* ListPool::acquire_c(int p, int layer) {
    SlotClass& k = cls(layer, 0);
    int& s = aidx(layer, p, 0);
    if (s != l_ && k.refcount[static_cast<std::size_t>(s)] == 1)
        return k.cdata.data() + static_cast<std::size_t>(s) * k.stride;
    const std::uint8_t* old = k.cdata.data() + static_cast<std::size_t>(s) * k.stride;
    if (s != l_) --k.refcount[static_cast<std::size_t>(s)];
    const int ns = k.free_slots.back();
    k.free_slots.pop_back();
    k.refcount[static_cast<std::size_t>(ns)] = 1;
    s = ns;
    std::uint8_t* fresh = k.cdata.data() + static_cast<std::size_t>(ns) * k.stride;
    std::memcpy(fresh, old, k.stride); // decisions accumulate, so they copy on write
    ++decision_copies_;
    return fresh;
}

const std::uint8_t* ListPool::read_c(int p, int layer) const {
    const SlotClass& k = cls(layer, 0);
    const int s = aidx(layer, p, 0);
    if (s < 0) throw std::logic_error("ListPool: read of unbound decision slot");
    return k.cdata.data() + static_cast<std::size_t>(s) * k.stride; // sentinel reads as zeros
}

void ListPool::audit() const {
    auto fail = [](int layer, int d, const std::string& what) {
        throw std::logic_error("ListPool audit: " + what + " (layer " + std::to_string(layer) +
                               ", class " + std::to_string(d) + ")");
    };
    for (int p = 0; p < l_; ++p) {
        for (int layer = 0; layer <= m_; ++layer) {
            for (int d = 0; d < 5; ++d) {
                const int s = aidx(layer, p, d);
                if (active_[static_cast<std::size_t>(p)]) {
                    if (s < 0 || s > l_) fail(layer, d, "active path with unbound slot");
                } else if (s != -1) {
                    fail(layer, d, "inactive path retains a binding");
                }
            }
        }
    }
    for (int layer = 0; layer <= m_; ++layer) {
        for (int d = 0; d < 5; ++d) {
            const SlotClass& k = cls(layer, d);
            std::vector<std::uint32_t> counts(static_cast<std::size_t>(l_), 0);
            for (int p = 0; p < l_; ++p) {
                if (!active_[static_cast<std::size_t>(p)]) continue;
                const int s = aidx(layer, p, d);
                if (s != l_) ++counts[static_cast<std::size_t>(s)];
            }
            for (int s = 0; s < l_; ++s)
                if (k.refcount[static_cast<std::size_t>(s)] != counts[static_cast<std::size_t>(s)])
                    fail(layer, d, "refcount disagrees with live bindings of slot " +
                                       std::to_string(s));
            if (k.refcount[static_cast<std::size_t>(l_)] != kSentinelRef)
                fail(layer, d, "sentinel refcount clobbered");
            std::vector<std::uint8_t> freed(static_cast<std::size_t>(l_), 0);
            for (int s : k.free_slots) {
                if (s < 0 || s >= l_) fail(layer, d, "free stack holds bad slot");
                if (freed[static_cast<std::size_t>(s)]) fail(layer, d, "free stack duplicate");
                if (counts[static_cast<std::size_t>(s)] != 0)
                    fail(layer, d, "free stack holds a bound slot");
                freed[static_cast<std::size_t>(s)] = 1;
            }
            for (int s = 0; s < l_; ++s)
                if (counts[static_cast<std::size_t>(s)] == 0 && !freed[static_cast<std::size_t>(s)])
                    fail(layer, d, "slot leaked: unbound but not free");
            if (d == 0) {
                const std::uint8_t* sent = k.cdata.data() + static_cast<std::size_t>(l_) * k.stride;
                for (std::size_t i = 0; i < k.stride; ++i)
                    if (sent[i] != 0) fail(layer, d, "sentinel decision data written");
            }
        }
    }
}

struct ListDecoder::PathCtx {
    ListDecoder* d;
    int p;
    bool want;
    const double* read_lower(int layer, int dim) const {
        return d->pool_.read_t(p, layer - 1, dim);
    }
    const double* read_own(int layer, int dim) const { return d->pool_.read_t(p, layer, dim); }
    double* write_own(int layer, int dim) const { return d->pool_.acquire_t(p, layer, dim); }
    const std::uint8_t* read_c(int layer) const { return d->pool_.read_c(p, layer); }
    OpCounter& counter(int layer) const { return d->layer_ops_[static_cast<std::size_t>(layer)]; }
    void set_llr(double v) const { d->llr_path_[static_cast<std::size_t>(p)] = v; }
    bool wants_llr() const { return want; }
};

namespace {

struct ListCCtx {
    ListPool* pool;
    int p;
    const std::uint8_t* c_read(int layer) const { return pool->read_c(p, layer); }
    std::uint8_t* c_write(int layer) const { return pool->acquire_c(p, layer); }
};

} // namespace

ListDecoder::ListDecoder(const CodeSpec& spec, int list_size, ListOptions opts)
    : spec_(spec), l_(list_size), opts_(opts), m_(spec.m()), n_(spec.n()),
      pool_(spec.m(), list_size) {
    if (n_ < 16) throw std::invalid_argument("ListDecoder: needs n >= 16");
}

void ListDecoder::commit_path(int p, std::size_t phase, std::uint8_t bit) {
    update_c_run(ListCCtx{&pool_, p}, m_, phase, bit);
}

ListResult ListDecoder::decode(const std::vector<double>& channel_llrs) {
    return decode_traced(channel_llrs, {});
}

ListResult ListDecoder::decode_traced(const std::vector<double>& channel_llrs,
                                      const std::function<void(std::size_t)>& after_phase) {
    if (channel_llrs.size() != n_)
        throw std::invalid_argument("ListDecoder: expected " + std::to_string(n_) +
                                    " channel values, got " + std::to_string(channel_llrs.size()));
    pool_.reset();
    pool_.init_path();
    llr_path_.assign(static_cast<std::size_t>(l_), 0.0);
    score_.assign(static_cast<std::size_t>(l_), 0.0);
    layer_ops_.assign(static_cast<std::size_t>(m_) + 1, OpCounter{});
    sel_cmps_ = 0;

    { // channel anchors for the root path
        double* anchors = pool_.acquire_t(0, 2, 4);
        const std::size_t nsub = n_ >> 2;
        double y4[4];
        for (std::size_t i = 0; i < nsub; ++i) {
            for (int t = 0; t < 4; ++t)
                y4[t] = channel_llrs[sub_transform_channel(m_, 2, i, static_cast<std::size_t>(t))];
            channel_anchor4(y4, anchors + 16 * i, layer_ops_[2]);
        }
    }

    bool tail = false;
    int tail_path = -1;
    std::vector<int> keep_nat(static_cast<std::size_t>(l_));
    std::vector<int> keep_flip(static_cast<std::size_t>(l_));
    std::vector<double> flip_score(static_cast<std::size_t>(l_));
    struct Cand {
        double score;
        int path;
        std::uint8_t flip;
    };
    std::vector<Cand> cands;
    cands.reserve(2 * static_cast<std::size_t>(l_));

    for (std::size_t phase = 0; phase < n_; ++phase) {
        const bool head = opts_.skip_head && phase < spec_.first_info();
        for (int p = 0; p < l_; ++p) {
            if (!pool_.active(p)) continue;
            PathCtx ctx{this, p, !head};
            run_eff_phase(ctx, m_, phase);
        }

        if (tail) {
            const std::uint8_t bit =
                (!spec_.is_frozen(phase) && llr_path_[static_cast<std::size_t>(tail_path)] < 0)
                    ? 1
                    : 0;
            commit_path(tail_path, phase, bit);
        } else if (spec_.is_frozen(phase)) {
            for (int p = 0; p < l_; ++p) {
                if (!pool_.active(p)) continue;
                if (!head)
                    score_[static_cast<std::size_t>(p)] +=
                        std::min(0.0, llr_path_[static_cast<std::size_t>(p)]);
                commit_path(p, phase, 0);
            }
        } else {
            cands.clear();
            for (int p = 0; p < l_; ++p) {
                if (!pool_.active(p)) continue;
                const double r = llr_path_[static_cast<std::size_t>(p)];
                const double sc = score_[static_cast<std::size_t>(p)];
                cands.push_back({sc, p, 0});
                cands.push_back({sc - std::abs(r), p, 1});
                flip_score[static_cast<std::size_t>(p)] = sc - std::abs(r);
            }
            std::sort(cands.begin(), cands.end(), [this](const Cand& a, const Cand& b) {
                ++sel_cmps_;
                if (a.score != b.score) return a.score > b.score;
                if (a.path != b.path) return a.path < b.path;
                return a.flip < b.flip;
            });
            const std::size_t keep = std::min(cands.size(), static_cast<std::size_t>(l_));
            std::fill(keep_nat.begin(), keep_nat.end(), 0);
            std::fill(keep_flip.begin(), keep_flip.end(), 0);
            for (std::size_t i = 0; i < keep; ++i)
                (cands[i].flip ? keep_flip : keep_nat)[static_cast<std::size_t>(cands[i].path)] = 1;
            for (int p = 0; p < l_; ++p) // discard first so clone targets are free
                if (pool_.active(p) && !keep_nat[static_cast<std::size_t>(p)] &&
                    !keep_flip[static_cast<std::size_t>(p)])
                    pool_.kill_path(p);
            for (int p = 0; p < l_; ++p) {
                const bool nat = keep_nat[static_cast<std::size_t>(p)] != 0;
                const bool flip = keep_flip[static_cast<std::size_t>(p)] != 0;
                if (!nat && !flip) continue;
                if (!nat) // a flipped survivor implies its natural twin survived
                    throw std::logic_error("ListDecoder: selection kept a flip without its base");
                const std::uint8_t nat_bit = llr_path_[static_cast<std::size_t>(p)] < 0 ? 1 : 0;
                int q = -1;
                if (flip) { // clone before committing: the commit mutates shared state
                    q = pool_.clone_path(p);
                    score_[static_cast<std::size_t>(q)] = flip_score[static_cast<std::size_t>(p)];
                    llr_path_[static_cast<std::size_t>(q)] =
                        llr_path_[static_cast<std::size_t>(p)];
                }
                commit_path(p, phase, nat_bit);
                if (q >= 0) commit_path(q, phase, nat_bit ^ 1);
            }
        }

        if (!tail && opts_.sc_tail && spec_.frozen_end() > 0 &&
            phase + 1 == spec_.frozen_end()) {
            int best = -1;
            for (int p = 0; p < l_; ++p) {
                if (!pool_.active(p)) continue;
                if (best < 0 || score_[static_cast<std::size_t>(p)] >
                                    score_[static_cast<std::size_t>(best)])
                    best = p;
            }
            for (int p = 0; p < l_; ++p)
                if (pool_.active(p) && p != best) pool_.kill_path(p);
            tail = true;
            tail_path = best;
        }

        if (after_phase) after_phase(phase);
    }

    int best = -1;
    for (int p = 0; p < l_; ++p) {
        if (!pool_.active(p)) continue;
        if (best < 0 ||
            score_[static_cast<std::size_t>(p)] > score_[static_cast<std::size_t>(best)])
            best = p;
    }

    ListResult r;
    const std::uint8_t* cw = pool_.read_c(best, 0);
    r.codeword.assign(cw, cw + n_);
    r.u_hat = encode_inverse(r.codeword);
    r.info_bits = spec_.extract_message(r.u_hat);
    r.score = score_[static_cast<std::size_t>(best)];
    r.layer_ops = layer_ops_;
    for (const OpCounter& oc : layer_ops_) r.total += oc;
    r.selection_comparisons = sel_cmps_;
    r.decision_copies = pool_.decision_copies();
    r.cluster_copies = pool_.cluster_copies();
    return r;
}

ListResult decode_list(const CodeSpec& spec, const std::vector<double>& channel_llrs,
                       int list_size, ListOptions opts) {
    ListDecoder dec(spec, list_size, opts);
    return dec.decode(channel_llrs);
}

} // namespace cvpolar
