#include "pncarq/tracking.hpp"

#include <algorithm>

namespace pncarq {

bool PoolSet::known_native(const NativeId& n) const {
    if (n.flow == desired_) return delivered_.contains(n.seq);
    return known_.count(n) > 0;
}

bool PoolSet::peer_retired(const NativeId& n) const {
    if (n.flow == desired_) return delivered_.contains(n.seq);
    if (n.flow >= peer_frontier_.size()) return false;
    return n.seq < peer_frontier_[n.flow] || peer_beyond_[n.flow].count(n.seq) > 0;
}

XorItem PoolSet::reduce(const XorItem& item, std::vector<XorItem>* used) const {
    std::vector<NativeId> rest;
    for (const auto& n : item.ids()) {
        if (known_native(n)) {
            if (used) used->push_back(XorItem{{n}});
        } else {
            rest.push_back(n);
        }
    }
    return XorItem(std::move(rest));
}

void PoolSet::index_add(const XorItem& item) {
    for (const auto& n : item.ids()) by_id_[n].push_back(item);
}

void PoolSet::index_remove(const XorItem& item) {
    for (const auto& n : item.ids()) {
        auto it = by_id_.find(n);
        if (it == by_id_.end()) continue;
        auto& v = it->second;
        v.erase(std::remove(v.begin(), v.end(), item), v.end());
        if (v.empty()) by_id_.erase(it);
    }
}

void PoolSet::store_o(const XorItem& item) {
    if (o_pool_.insert(item).second) {
        index_add(item);
        if (item.singleton()) known_.insert(item.front());
    }
}

void PoolSet::store_c(Seq desired_seq, const XorItem& item) {
    auto& bucket = c_pool_[desired_seq];
    if (std::find(bucket.begin(), bucket.end(), item) == bucket.end()) {
        bucket.push_back(item);
        index_add(item);
    }
}

size_t PoolSet::c_pool_size() const {
    size_t n = 0;
    for (const auto& [seq, bucket] : c_pool_) n += bucket.size();
    return n;
}

bool PoolSet::learn(const NativeId& n, int iteration, std::vector<XorItem> chain,
                    std::vector<Extraction>* out) {
    if (known_native(n)) return false;
    if (n.flow != desired_ && peer_retired(n)) return false;  // duplicate of a retired packet
    Extraction e;
    e.native = n;
    e.iteration = iteration;
    e.desired = n.flow == desired_;
    e.chain = std::move(chain);
    if (e.desired) {
        delivered_.insert(n.seq);
    } else {
        store_o(XorItem{{n}});
    }
    out->push_back(std::move(e));
    return true;
}

std::vector<Extraction> PoolSet::on_receive(const XorItem& item, Via via, bool multi_iteration) {
    std::vector<Extraction> out;
    if (item.empty()) return out;

    std::vector<XorItem> base_used;
    XorItem t0 = reduce(item, &base_used);

    if (!t0.empty()) {
        // first iteration: the received item alone, or paired with one stored
        // item of the complementary pool, plus known natives
        std::vector<XorItem> complementary;
        if (via == Via::relay_downlink) {
            complementary.assign(o_pool_.begin(), o_pool_.end());
        } else {
            for (const auto& [seq, bucket] : c_pool_)
                complementary.insert(complementary.end(), bucket.begin(), bucket.end());
        }
        for (size_t ci = 0; ci <= complementary.size(); ++ci) {
            const XorItem* stored = ci == 0 ? nullptr : &complementary[ci - 1];
            std::vector<XorItem> used = base_used;
            XorItem t = stored ? reduce(t0 ^ *stored, &used) : t0;
            if (!t.singleton()) continue;
            std::vector<XorItem> chain{item};
            if (stored) chain.push_back(*stored);
            chain.insert(chain.end(), used.begin(), used.end());
            learn(t.front(), 1, std::move(chain), &out);
        }
    }

    if (multi_iteration) {
        // peel newly learned natives through the stored items until fixpoint
        size_t next = 0;
        int iteration = 2;
        while (next < out.size()) {
            size_t wave_end = out.size();
            for (size_t i = next; i < wave_end; ++i) {
                auto hit = by_id_.find(out[i].native);
                if (hit == by_id_.end()) continue;
                std::vector<XorItem> candidates = hit->second;  // copy: learn() mutates pools
                for (const auto& stored : candidates) {
                    std::vector<XorItem> used;
                    XorItem t = reduce(stored, &used);
                    if (!t.singleton()) continue;
                    std::vector<XorItem> chain{stored};
                    chain.insert(chain.end(), used.begin(), used.end());
                    learn(t.front(), iteration, std::move(chain), &out);
                }
            }
            next = wave_end;
            ++iteration;
        }
    }

    // store the received item if it can still contribute
    XorItem residue = reduce(item, nullptr);
    if (!residue.empty()) {
        if (via == Via::relay_downlink) {
            Seq desired_seq = 0;
            bool has_desired = false;
            for (const auto& n : item.ids()) {
                if (n.flow == desired_) {
                    desired_seq = n.seq;
                    has_desired = true;
                }
            }
            if (has_desired && !delivered_.contains(desired_seq)) {
                store_c(desired_seq, item);
            } else if (!has_desired) {
                store_o(item);  // pure side information relayed our way
            }
        } else {
            if (!residue.singleton() || !known_native(residue.front())) store_o(item);
        }
    }
    return out;
}

void PoolSet::note_peer_progress(FlowId flow, Seq frontier, const std::vector<Seq>& beyond) {
    if (flow == desired_ || flow >= peer_frontier_.size()) return;
    if (frontier > peer_frontier_[flow]) peer_frontier_[flow] = frontier;
    for (Seq s : beyond)
        if (s >= peer_frontier_[flow]) peer_beyond_[flow].insert(s);
    auto& extra = peer_beyond_[flow];
    while (!extra.empty() && *extra.begin() < peer_frontier_[flow]) extra.erase(extra.begin());
}

std::vector<XorItem> PoolSet::prune() {
    std::vector<XorItem> removed;
    for (auto it = c_pool_.begin(); it != c_pool_.end();) {
        if (delivered_.contains(it->first)) {
            for (const auto& item : it->second) {
                index_remove(item);
                removed.push_back(item);
            }
            it = c_pool_.erase(it);
        } else {
            ++it;
        }
    }
    for (auto it = o_pool_.begin(); it != o_pool_.end();) {
        bool all_retired = std::all_of(it->ids().begin(), it->ids().end(),
                                       [&](const NativeId& n) { return peer_retired(n); });
        if (all_retired) {
            index_remove(*it);
            if (it->singleton()) known_.erase(it->front());
            removed.push_back(*it);
            it = o_pool_.erase(it);
        } else {
            ++it;
        }
    }
    return removed;
}

void PoolSet::clear_pools() {
    o_pool_.clear();
    c_pool_.clear();
    known_.clear();
    by_id_.clear();
}

}  // namespace pncarq
