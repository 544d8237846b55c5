#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "pncarq/atom.hpp"

namespace pncarq {

// Counter-mode Bernoulli sampler: the outcome of (event, round) is a pure
// function of (master_seed, event id hash, round index), so per-event
// substreams are independent and insensitive to evaluation order.
class ChannelSampler {
  public:
    explicit ChannelSampler(uint64_t master_seed) : seed_(master_seed) {}

    static uint64_t hash_id(const std::string& event_id);

    // uniform in [0,1)
    double uniform(uint64_t event_hash, uint64_t round) const;

    bool success(uint64_t event_hash, uint64_t round, double lsp) const {
        return uniform(event_hash, round) < lsp;
    }
    bool success(const std::string& event_id, uint64_t round, double lsp) const {
        return success(hash_id(event_id), round, lsp);
    }

    uint64_t seed() const { return seed_; }

  private:
    uint64_t seed_;
};

// Sampled outcomes of one round's declared data-link events.
struct RoundChannelOutcome {
    uint64_t round = 0;
    std::vector<bool> success;  // aligned with atom.events()

    bool get(const AtomSpec& atom, const std::string& event_id) const;
};

RoundChannelOutcome sample_round(const AtomSpec& atom, uint64_t round, uint64_t master_seed);

}  // namespace pncarq
