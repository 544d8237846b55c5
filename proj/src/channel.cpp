#include "pncarq/channel.hpp"

#include <stdexcept>

namespace pncarq {

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

uint64_t ChannelSampler::hash_id(const std::string& event_id) {
    // FNV-1a, then one mixing pass
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : event_id) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return splitmix64(h);
}

double ChannelSampler::uniform(uint64_t event_hash, uint64_t round) const {
    uint64_t k = splitmix64(seed_ ^ splitmix64(event_hash ^ splitmix64(round)));
    return static_cast<double>(k >> 11) * 0x1.0p-53;
}

bool RoundChannelOutcome::get(const AtomSpec& atom, const std::string& event_id) const {
    const auto& evs = atom.events();
    for (size_t i = 0; i < evs.size(); ++i)
        if (evs[i].id == event_id) return success[i];
    throw std::out_of_range("unknown event id: " + event_id);
}

RoundChannelOutcome sample_round(const AtomSpec& atom, uint64_t round, uint64_t master_seed) {
    ChannelSampler sampler(master_seed);
    RoundChannelOutcome out;
    out.round = round;
    const auto& evs = atom.events();
    out.success.resize(evs.size());
    for (size_t i = 0; i < evs.size(); ++i)
        out.success[i] = sampler.success(ChannelSampler::hash_id(evs[i].id), round, evs[i].lsp);
    return out;
}

}  // namespace pncarq
