#include "pncarq/atom.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace pncarq {

std::string XorItem::to_string() const {
    if (ids_.empty()) return "0";
    std::ostringstream os;
    for (size_t i = 0; i < ids_.size(); ++i) {
        if (i) os << "^";
        os << "f" << ids_[i].flow << "." << ids_[i].seq;
    }
    return os.str();
}

std::string to_string(LinkKind kind) {
    switch (kind) {
        case LinkKind::relay_decode: return "relay-decode";
        case LinkKind::downlink: return "downlink";
        case LinkKind::overhear: return "overhear";
        case LinkKind::ack_uplink: return "ack-uplink";
        case LinkKind::ack_broadcast: return "ack-broadcast";
    }
    return "?";
}

std::optional<LinkKind> link_kind_from_string(const std::string& s) {
    if (s == "relay-decode") return LinkKind::relay_decode;
    if (s == "downlink") return LinkKind::downlink;
    if (s == "overhear") return LinkKind::overhear;
    if (s == "ack-uplink") return LinkKind::ack_uplink;
    if (s == "ack-broadcast") return LinkKind::ack_broadcast;
    return std::nullopt;
}

const LinkSpec* AtomSpec::find_link(const std::string& id) const {
    for (const auto& l : links)
        if (l.id == id) return &l;
    return nullptr;
}

const FlowSpec* AtomSpec::find_flow(const std::string& id) const {
    for (const auto& f : flows)
        if (f.id == id) return &f;
    return nullptr;
}

FlowId AtomSpec::flow_index(const std::string& id) const {
    for (size_t i = 0; i < flows.size(); ++i)
        if (flows[i].id == id) return static_cast<FlowId>(i);
    throw std::out_of_range("unknown flow id: " + id);
}

std::vector<FlowId> AtomSpec::flows_to(const std::string& node) const {
    std::vector<FlowId> out;
    for (size_t i = 0; i < flows.size(); ++i)
        if (flows[i].destination == node) out.push_back(static_cast<FlowId>(i));
    return out;
}

std::optional<FlowId> AtomSpec::flow_from(const std::string& node) const {
    for (size_t i = 0; i < flows.size(); ++i)
        if (flows[i].source == node) return static_cast<FlowId>(i);
    return std::nullopt;
}

const std::vector<AtomSpec::Event>& AtomSpec::events() const {
    if (events_.empty()) {
        for (size_t s = 0; s < slots.size(); ++s) {
            for (size_t r = 0; r < slots[s].receptions.size(); ++r) {
                const auto& rx = slots[s].receptions[r];
                const LinkSpec* link = find_link(rx.link);
                Event e;
                e.id = rx.link + "#" + std::to_string(s + 1);
                e.slot = static_cast<int>(s);
                e.reception = r;
                e.lsp = link ? link->lsp : 0.0;
                events_.push_back(std::move(e));
            }
        }
    }
    return events_;
}

double AtomSpec::ack_uplink_lsp(const std::string& destination) const {
    for (const auto& f : flows) {
        if (f.destination != destination) continue;
        for (const auto& lid : f.chain) {
            const LinkSpec* l = find_link(lid);
            if (l && l->kind == LinkKind::downlink) return l->lsp;
        }
    }
    throw std::out_of_range("no downlink in any flow chain ending at " + destination);
}

double AtomSpec::ack_broadcast_lsp(const std::string& node) const {
    for (const auto& f : flows) {
        if (f.source == node) {
            for (const auto& lid : f.chain) {
                const LinkSpec* l = find_link(lid);
                if (l && l->kind == LinkKind::relay_decode) return l->lsp;
            }
        }
        if (f.destination == node) return ack_uplink_lsp(node);
    }
    throw std::out_of_range("node is neither a source nor a destination: " + node);
}

bool operator==(const AtomSpec& a, const AtomSpec& b) {
    auto links_eq = [](const LinkSpec& x, const LinkSpec& y) {
        return x.id == y.id && x.kind == y.kind && x.lsp == y.lsp;
    };
    auto flows_eq = [](const FlowSpec& x, const FlowSpec& y) {
        return x.id == y.id && x.source == y.source && x.destination == y.destination &&
               x.chain == y.chain;
    };
    auto tx_eq = [](const Transmission& x, const Transmission& y) {
        return x.node == y.node && x.flow == y.flow && x.from_links == y.from_links;
    };
    auto rx_eq = [](const Reception& x, const Reception& y) {
        return x.receiver == y.receiver && x.link == y.link && x.transmitters == y.transmitters;
    };
    if (a.nodes != b.nodes) return false;  // name is a label, not identity
    if (a.links.size() != b.links.size() || a.flows.size() != b.flows.size() ||
        a.slots.size() != b.slots.size())
        return false;
    for (size_t i = 0; i < a.links.size(); ++i)
        if (!links_eq(a.links[i], b.links[i])) return false;
    for (size_t i = 0; i < a.flows.size(); ++i)
        if (!flows_eq(a.flows[i], b.flows[i])) return false;
    for (size_t i = 0; i < a.slots.size(); ++i) {
        const Slot& x = a.slots[i];
        const Slot& y = b.slots[i];
        if (x.transmissions.size() != y.transmissions.size() ||
            x.receptions.size() != y.receptions.size())
            return false;
        for (size_t j = 0; j < x.transmissions.size(); ++j)
            if (!tx_eq(x.transmissions[j], y.transmissions[j])) return false;
        for (size_t j = 0; j < x.receptions.size(); ++j)
            if (!rx_eq(x.receptions[j], y.receptions[j])) return false;
    }
    return true;
}

AtomSpec builtin_cross_atom(double relay_decode, double down_c, double down_d,
                            double overhear_c, double overhear_d) {
    for (double p : {relay_decode, down_c, down_d, overhear_c, overhear_d}) {
        if (!(p > 0.0 && p <= 1.0))
            throw std::invalid_argument("link success probability out of (0,1]");
    }
    AtomSpec atom;
    atom.name = "cross";
    atom.nodes = {"A", "B", "R", "C", "D"};
    atom.links = {
        {"up", LinkKind::relay_decode, relay_decode},
        {"rc", LinkKind::downlink, down_c},
        {"rd", LinkKind::downlink, down_d},
        {"bc", LinkKind::overhear, overhear_c},
        {"ad", LinkKind::overhear, overhear_d},
    };
    atom.flows = {
        {"f1", "A", "C", {"up", "rc", "bc"}},
        {"f2", "B", "D", {"up", "rd", "ad"}},
    };
    Slot s1;
    s1.transmissions = {{"A", "f1", {}}, {"B", "f2", {}}};
    s1.receptions = {{"R", "up", {"A", "B"}}, {"C", "bc", {"B"}}, {"D", "ad", {"A"}}};
    Slot s2;
    s2.transmissions = {{"R", "", {"up"}}};
    s2.receptions = {{"C", "rc", {"R"}}, {"D", "rd", {"R"}}};
    atom.slots = {s1, s2};
    return atom;
}

AtomSpec builtin_cross_atom(double direct, double overhear) {
    return builtin_cross_atom(direct, direct, direct, overhear, overhear);
}

AtomSpec builtin_star_atom(double lsp) {
    if (!(lsp > 0.0 && lsp <= 1.0))
        throw std::invalid_argument("link success probability out of (0,1]");
    AtomSpec atom;
    atom.name = "star";
    atom.nodes = {"S1", "S2", "S3", "R", "T1", "T2", "T3"};
    atom.links = {
        {"u1", LinkKind::relay_decode, lsp},  {"u23", LinkKind::relay_decode, lsp},
        {"r1", LinkKind::downlink, lsp},      {"r2", LinkKind::downlink, lsp},
        {"r3", LinkKind::downlink, lsp},      {"w1", LinkKind::overhear, lsp},
        {"w21", LinkKind::overhear, lsp},     {"w31", LinkKind::overhear, lsp},
        {"w23", LinkKind::overhear, lsp},     {"w32", LinkKind::overhear, lsp},
    };
    atom.flows = {
        {"f1", "S1", "T1", {"u1", "u23", "r1", "w1"}},
        {"f2", "S2", "T2", {"u1", "u23", "r2", "w21", "w23"}},
        {"f3", "S3", "T3", {"u1", "u23", "r3", "w31", "w32"}},
    };
    Slot s1;
    s1.transmissions = {{"S1", "f1", {}}};
    s1.receptions = {{"R", "u1", {"S1"}}, {"T2", "w21", {"S1"}}, {"T3", "w31", {"S1"}}};
    Slot s2;
    s2.transmissions = {{"S2", "f2", {}}, {"S3", "f3", {}}};
    s2.receptions = {{"R", "u23", {"S2", "S3"}},
                     {"T1", "w1", {"S2", "S3"}},
                     {"T2", "w23", {"S3"}},
                     {"T3", "w32", {"S2"}}};
    Slot s3;
    s3.transmissions = {{"R", "", {"u1", "u23"}}};
    s3.receptions = {{"T1", "r1", {"R"}}, {"T2", "r2", {"R"}}, {"T3", "r3", {"R"}}};
    atom.slots = {s1, s2, s3};
    return atom;
}

namespace {

// One symbolic round with every link event forced to succeed; returns the set
// of items each node ends up receiving.
std::unordered_map<std::string, std::vector<XorItem>> forced_round(const AtomSpec& atom) {
    std::unordered_map<std::string, std::vector<XorItem>> received;
    std::unordered_map<std::string, XorItem> buffers;  // link id -> item received via it
    for (const auto& slot : atom.slots) {
        std::unordered_map<std::string, std::optional<XorItem>> txitems;
        for (const auto& tx : slot.transmissions) {
            if (!tx.forwards()) {
                if (const FlowSpec* f = atom.find_flow(tx.flow))
                    txitems[tx.node] = XorItem::native(atom.flow_index(f->id), 0);
            } else {
                XorItem combined;
                bool ok = true;
                for (const auto& lid : tx.from_links) {
                    auto it = buffers.find(lid);
                    if (it == buffers.end()) {
                        ok = false;
                        break;
                    }
                    combined ^= it->second;
                }
                if (ok) txitems[tx.node] = combined;
            }
        }
        for (const auto& rx : slot.receptions) {
            XorItem item;
            bool ok = true;
            for (const auto& t : rx.transmitters) {
                auto it = txitems.find(t);
                if (it == txitems.end() || !it->second.has_value()) {
                    ok = false;
                    break;
                }
                item ^= *it->second;
            }
            if (!ok || item.empty()) continue;
            buffers[rx.link] = item;
            received[rx.receiver].push_back(item);
        }
    }
    return received;
}

// XOR-peeling closure: repeatedly strip known natives and promote singletons.
std::set<NativeId> peel_closure(std::vector<XorItem> items) {
    std::set<NativeId> known;
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& it : items) {
            std::vector<NativeId> rest;
            for (const auto& n : it.ids())
                if (!known.count(n)) rest.push_back(n);
            if (rest.size() == 1) {
                known.insert(rest[0]);
                changed = true;
            }
            it = XorItem(std::move(rest));
        }
    }
    return known;
}

}  // namespace

std::vector<Violation> validate_atom(const AtomSpec& atom) {
    std::vector<Violation> out;
    auto add = [&](const std::string& where, const std::string& msg) {
        out.push_back({where, msg});
    };
    std::set<std::string> node_set(atom.nodes.begin(), atom.nodes.end());
    std::set<std::string> link_ids, flow_ids;

    for (const auto& l : atom.links) {
        if (!(l.lsp > 0.0 && l.lsp <= 1.0))
            add("link " + l.id, "lsp out of (0,1]");
        if (!link_ids.insert(l.id).second) add("link " + l.id, "duplicate link id");
    }
    for (const auto& f : atom.flows) {
        if (!flow_ids.insert(f.id).second) add("flow " + f.id, "duplicate flow id");
        if (!node_set.count(f.source)) add("flow " + f.id, "unknown source node " + f.source);
        if (!node_set.count(f.destination))
            add("flow " + f.id, "unknown destination node " + f.destination);
        if (f.source == f.destination) add("flow " + f.id, "source equals destination");
        for (const auto& lid : f.chain)
            if (!link_ids.count(lid)) add("flow " + f.id, "chain references unknown link " + lid);
    }

    for (size_t si = 0; si < atom.slots.size(); ++si) {
        const Slot& slot = atom.slots[si];
        const std::string where = "slot " + std::to_string(si + 1);
        std::set<std::string> transmitters, receivers;
        for (const auto& tx : slot.transmissions) {
            if (!node_set.count(tx.node)) add(where, "unknown transmitter node " + tx.node);
            transmitters.insert(tx.node);
            if (!tx.forwards() && !flow_ids.count(tx.flow))
                add(where, "transmission references unknown flow " + tx.flow);
            for (const auto& lid : tx.from_links)
                if (!link_ids.count(lid)) add(where, "forward references unknown link " + lid);
        }
        int multi_decode_links = 0;
        for (const auto& rx : slot.receptions) {
            if (!node_set.count(rx.receiver)) add(where, "unknown receiver node " + rx.receiver);
            receivers.insert(rx.receiver);
            const LinkSpec* l = atom.find_link(rx.link);
            if (!l) {
                add(where, "reception references unknown link " + rx.link);
            } else if (rx.transmitters.size() > 1 && l->kind == LinkKind::relay_decode) {
                ++multi_decode_links;
            }
            for (const auto& t : rx.transmitters)
                if (!transmitters.count(t))
                    add(where, "reception via " + rx.link + " names non-transmitting node " + t);
        }
        // half duplex: nobody transmits and receives in the same slot
        for (const auto& n : transmitters)
            if (receivers.count(n)) add(where, "node " + n + " transmits and receives in the same slot");
        size_t multi_tx = std::count_if(
            slot.transmissions.begin(), slot.transmissions.end(),
            [&](const Transmission& tx) { return !tx.forwards(); });
        if (multi_tx > 1 && multi_decode_links != 1)
            add(where, "uplink slot with simultaneous sources needs exactly one relay-decode reception");
    }

    // one-hop delivery would bypass the relay: a flow's destination must not
    // directly receive a single-transmitter item from its source
    for (const auto& f : atom.flows) {
        for (size_t si = 0; si < atom.slots.size(); ++si) {
            for (const auto& rx : atom.slots[si].receptions) {
                if (rx.receiver != f.destination || rx.transmitters.size() != 1 ||
                    rx.transmitters[0] != f.source)
                    continue;
                for (const auto& tx : atom.slots[si].transmissions)
                    if (tx.node == f.source && tx.flow == f.id)
                        add("flow " + f.id, "destination directly reachable from source");
            }
        }
    }

    if (!out.empty()) return out;  // structural problems make the checks below unreliable

    // perfect-channel decodability + every flow embedded in a relay broadcast
    auto received = forced_round(atom);
    std::set<FlowId> in_broadcast;
    {
        std::unordered_map<std::string, XorItem> buffers;
        for (const auto& slot : atom.slots) {
            std::unordered_map<std::string, XorItem> txitems;
            for (const auto& tx : slot.transmissions) {
                if (!tx.forwards()) {
                    txitems[tx.node] = XorItem::native(atom.flow_index(tx.flow), 0);
                } else {
                    XorItem combined;
                    for (const auto& lid : tx.from_links) combined ^= buffers[lid];
                    txitems[tx.node] = combined;
                    for (const auto& n : combined.ids()) in_broadcast.insert(n.flow);
                }
            }
            for (const auto& rx : slot.receptions) {
                XorItem item;
                for (const auto& t : rx.transmitters) item ^= txitems[t];
                buffers[rx.link] = item;
            }
        }
    }
    for (size_t fi = 0; fi < atom.flows.size(); ++fi) {
        const auto& f = atom.flows[fi];
        if (!in_broadcast.count(static_cast<FlowId>(fi)))
            add("flow " + f.id, "packet never embedded in a relay broadcast item");
        auto it = received.find(f.destination);
        std::vector<XorItem> items = it == received.end() ? std::vector<XorItem>{} : it->second;
        auto known = peel_closure(items);
        if (!known.count(NativeId{static_cast<FlowId>(fi), 0}))
            add("flow " + f.id, "flow " + f.source + "->" + f.destination +
                                    " not decodable under perfect channels");
    }
    return out;
}

}  // namespace pncarq
