#pragma once

#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "pncarq/sack.hpp"
#include "pncarq/xor_item.hpp"

namespace pncarq {

enum class Via { overhear, relay_downlink };

// One native packet obtained by combining a received item with stored items.
// The chain XORs to exactly {native} (replayable audit trail).
struct Extraction {
    NativeId native;
    int iteration = 1;           // 1 = from the received item; >1 = peeled afterwards
    bool desired = false;        // native belongs to this destination's flow
    std::vector<XorItem> chain;  // received item, stored items and known singletons used
};

// Destination-side storage: overheard items (O-pool), undecodable coded items
// holding a desired native (C-pool), the delivered set, and what is known about
// peer flows' progress (for pruning).
class PoolSet {
  public:
    PoolSet(FlowId desired_flow, size_t flow_count)
        : desired_(desired_flow), peer_frontier_(flow_count, 0), peer_beyond_(flow_count) {}

    FlowId desired_flow() const { return desired_; }
    const DeliveredSet& delivered() const { return delivered_; }

    // Matches the item against the complementary pool and known natives,
    // stores it if still useful, and in multi-iteration mode peels newly
    // learned natives through the pools until fixpoint.
    std::vector<Extraction> on_receive(const XorItem& item, Via via, bool multi_iteration);

    // Peer-flow progress, used to drop o-pool items that can never be
    // completed anymore. `frontier` = all seqs below are retired.
    void note_peer_progress(FlowId flow, Seq frontier, const std::vector<Seq>& beyond);

    // Removes c-pool items whose desired native is delivered and o-pool items
    // all of whose natives are retired. Returns the removed items.
    std::vector<XorItem> prune();

    void clear_pools();  // tracking off: nothing persists across rounds

    size_t o_pool_size() const { return o_pool_.size(); }
    size_t c_pool_size() const;
    std::vector<XorItem> o_pool_items() const { return {o_pool_.begin(), o_pool_.end()}; }

  private:
    bool known_native(const NativeId& n) const;
    bool peer_retired(const NativeId& n) const;
    // strips known natives, appending the singletons used to `used`
    XorItem reduce(const XorItem& item, std::vector<XorItem>* used) const;
    bool learn(const NativeId& n, int iteration, std::vector<XorItem> chain,
               std::vector<Extraction>* out);

    FlowId desired_;
    DeliveredSet delivered_;
    std::unordered_set<XorItem, XorItemHash> o_pool_;
    std::unordered_map<Seq, std::vector<XorItem>> c_pool_;  // desired seq -> items
    std::unordered_set<NativeId, NativeIdHash> known_;      // singletons available in o-pool
    // items (either pool) indexed by embedded native, for O(items sharing an id) matching
    std::unordered_map<NativeId, std::vector<XorItem>, NativeIdHash> by_id_;

    std::vector<Seq> peer_frontier_;
    std::vector<std::set<Seq>> peer_beyond_;

    void index_add(const XorItem& item);
    void index_remove(const XorItem& item);
    void store_o(const XorItem& item);
    void store_c(Seq desired_seq, const XorItem& item);
};

}  // namespace pncarq
