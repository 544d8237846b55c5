#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pncarq/xor_item.hpp"

namespace pncarq {

enum class LinkKind { relay_decode, downlink, overhear, ack_uplink, ack_broadcast };

std::string to_string(LinkKind kind);
std::optional<LinkKind> link_kind_from_string(const std::string& s);

struct LinkSpec {
    std::string id;
    LinkKind kind = LinkKind::overhear;
    double lsp = 1.0;  // link success probability, in (0,1]
};

struct FlowSpec {
    std::string id;
    std::string source;
    std::string destination;
    // overhear / relay-decode / downlink links whose joint success delivers one
    // packet of this flow under perfect channels
    std::vector<std::string> chain;
};

// What a node transmits in a slot: either the current packet of a flow it
// sources, or the XOR of items it received earlier in the round via the named
// links (relay forwarding). A forwarded transmission carries nothing unless
// every referenced reception succeeded.
struct Transmission {
    std::string node;
    std::string flow;                      // set for a native transmission
    std::vector<std::string> from_links;   // set for a forwarded transmission
    bool forwards() const { return !from_links.empty(); }
};

// One stochastic link event: `receiver` obtains, with probability lsp(link),
// the XOR of the items transmitted by `transmitters` in this slot.
struct Reception {
    std::string receiver;
    std::string link;
    std::vector<std::string> transmitters;
};

struct Slot {
    std::vector<Transmission> transmissions;
    std::vector<Reception> receptions;
};

struct Violation {
    std::string where;
    std::string message;
};

struct AtomSpec {
    std::string name;
    std::vector<std::string> nodes;
    std::vector<LinkSpec> links;
    std::vector<FlowSpec> flows;
    std::vector<Slot> slots;

    int slots_per_round() const { return static_cast<int>(slots.size()); }

    const LinkSpec* find_link(const std::string& id) const;
    const FlowSpec* find_flow(const std::string& id) const;
    FlowId flow_index(const std::string& id) const;

    // flows that terminate at `node`
    std::vector<FlowId> flows_to(const std::string& node) const;
    // flow sourced by `node`, if any
    std::optional<FlowId> flow_from(const std::string& node) const;

    // Stochastic data events of one round, in declaration order. Event ids are
    // "<link>#<slot>" and stay stable under pattern edits elsewhere.
    struct Event {
        std::string id;
        int slot = 0;
        size_t reception = 0;  // index into slots[slot].receptions
        double lsp = 1.0;
    };
    const std::vector<Event>& events() const;

    // Reverse-link LSPs for the ACK phase, derived from each flow's chain
    // (reverse links share the forward LSP). For a destination: its downlink;
    // for a source: its flow's relay-decode link.
    double ack_uplink_lsp(const std::string& destination) const;
    double ack_broadcast_lsp(const std::string& node) const;

    friend bool operator==(const AtomSpec&, const AtomSpec&);

  private:
    mutable std::vector<Event> events_;  // lazily built
};

// The two-flow cross atom: sources A and B transmit simultaneously to relay R
// while the opposite destinations overhear; R broadcasts the decoded XOR.
// Heterogeneous LSPs: relay decode, the two downlinks, the two overhears.
AtomSpec builtin_cross_atom(double relay_decode, double down_c, double down_d,
                            double overhear_c, double overhear_d);
// Homogeneous direct/overhear split (downlinks and relay decode = direct).
AtomSpec builtin_cross_atom(double direct, double overhear);

// The three-flow star atom, homogeneous LSP. Slot 1: S1 uplinks X, T2/T3
// overhear it. Slot 2: S2+S3 uplink, relay decodes Y^Z, T1 overhears the
// superposition, T2 overhears Z, T3 overhears Y. Slot 3: R broadcasts X^Y^Z.
AtomSpec builtin_star_atom(double lsp);

// Checks every structural invariant plus perfect-channel decodability of each
// flow. Returns all violations found; empty means the atom is valid.
std::vector<Violation> validate_atom(const AtomSpec& atom);

}  // namespace pncarq
