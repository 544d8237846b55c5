#include "pncarq/pattern_io.hpp"

#include <sstream>
#include <vector>

namespace pncarq {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

AtomSpec load_pattern(const std::string& text) {
    AtomSpec atom;
    atom.name = "pattern";
    std::istringstream is(text);
    std::string raw;
    std::string section;
    int lineno = 0;
    int expected_slot = 1;

    while (std::getline(is, raw)) {
        ++lineno;
        std::string line = strip_comment(raw);
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        if (toks[0].front() == '[') {
            if (toks.size() != 1 || toks[0].back() != ']')
                throw PatternError(lineno, "malformed section header");
            section = toks[0].substr(1, toks[0].size() - 2);
            if (section != "nodes" && section != "links" && section != "flows" &&
                section != "slots")
                throw PatternError(lineno, "unknown section [" + section + "]");
            continue;
        }
        if (section == "nodes") {
            for (const auto& t : toks) atom.nodes.push_back(t);
        } else if (section == "links") {
            if (toks.size() != 3) throw PatternError(lineno, "expected: <id> <kind> <lsp>");
            LinkSpec l;
            l.id = toks[0];
            auto kind = link_kind_from_string(toks[1]);
            if (!kind) throw PatternError(lineno, "unknown link kind " + toks[1]);
            l.kind = *kind;
            try {
                l.lsp = std::stod(toks[2]);
            } catch (const std::exception&) {
                throw PatternError(lineno, "bad lsp value " + toks[2]);
            }
            atom.links.push_back(std::move(l));
        } else if (section == "flows") {
            if (toks.size() < 3)
                throw PatternError(lineno, "expected: <id> <source> <destination> <chain...>");
            FlowSpec f;
            f.id = toks[0];
            f.source = toks[1];
            f.destination = toks[2];
            f.chain.assign(toks.begin() + 3, toks.end());
            atom.flows.push_back(std::move(f));
        } else if (section == "slots") {
            auto colon = line.find(':');
            if (colon == std::string::npos) throw PatternError(lineno, "missing ':' after slot index");
            int idx = 0;
            try {
                idx = std::stoi(line.substr(0, colon));
            } catch (const std::exception&) {
                throw PatternError(lineno, "bad slot index");
            }
            if (idx != expected_slot)
                throw PatternError(lineno, "slot indices must be 1,2,... in order");
            ++expected_slot;
            std::string rest = line.substr(colon + 1);
            auto bar = rest.find('|');
            if (bar == std::string::npos) throw PatternError(lineno, "missing '|' between tx and rx");
            Slot slot;
            for (const auto& t : tokenize(rest.substr(0, bar))) {
                auto arrow = t.find("->");
                if (arrow == std::string::npos)
                    throw PatternError(lineno, "transmission must be NODE->FLOW or NODE->@LINK");
                Transmission tx;
                tx.node = t.substr(0, arrow);
                std::string target = t.substr(arrow + 2);
                if (!target.empty() && target[0] == '@') {
                    for (const auto& part : split(target, '+')) {
                        if (part.empty() || part[0] != '@')
                            throw PatternError(lineno, "forward target must be @LINK[+@LINK...]");
                        tx.from_links.push_back(part.substr(1));
                    }
                } else {
                    tx.flow = target;
                }
                if (tx.node.empty() || (tx.flow.empty() && tx.from_links.empty()))
                    throw PatternError(lineno, "malformed transmission " + t);
                slot.transmissions.push_back(std::move(tx));
            }
            for (const auto& t : tokenize(rest.substr(bar + 1))) {
                auto arrow = t.find("<-");
                if (arrow == std::string::npos)
                    throw PatternError(lineno, "reception must be NODE<-LINK:NODE[+NODE...]");
                Reception rx;
                rx.receiver = t.substr(0, arrow);
                std::string target = t.substr(arrow + 2);
                auto colon2 = target.find(':');
                if (colon2 == std::string::npos)
                    throw PatternError(lineno, "reception missing ':' item rule");
                rx.link = target.substr(0, colon2);
                for (const auto& part : split(target.substr(colon2 + 1), '+')) {
                    if (part.empty()) throw PatternError(lineno, "empty transmitter in item rule");
                    rx.transmitters.push_back(part);
                }
                if (rx.receiver.empty() || rx.link.empty())
                    throw PatternError(lineno, "malformed reception " + t);
                slot.receptions.push_back(std::move(rx));
            }
            atom.slots.push_back(std::move(slot));
        } else {
            throw PatternError(lineno, "content before any section header");
        }
    }

    auto violations = validate_atom(atom);
    if (!violations.empty()) {
        std::string msg = "invalid atom:";
        for (const auto& v : violations) msg += "\n  " + v.where + ": " + v.message;
        throw PatternError(lineno, msg);
    }
    return atom;
}

std::string serialize_pattern(const AtomSpec& atom) {
    std::ostringstream os;
    os << "# pattern: " << atom.name << "\n";
    os << "[nodes]\n";
    for (size_t i = 0; i < atom.nodes.size(); ++i)
        os << atom.nodes[i] << (i + 1 == atom.nodes.size() ? "\n" : " ");
    os << "[links]\n";
    for (const auto& l : atom.links) os << l.id << " " << to_string(l.kind) << " " << l.lsp << "\n";
    os << "[flows]\n";
    for (const auto& f : atom.flows) {
        os << f.id << " " << f.source << " " << f.destination;
        for (const auto& c : f.chain) os << " " << c;
        os << "\n";
    }
    os << "[slots]\n";
    for (size_t s = 0; s < atom.slots.size(); ++s) {
        os << (s + 1) << ":";
        for (const auto& tx : atom.slots[s].transmissions) {
            os << " " << tx.node << "->";
            if (tx.forwards()) {
                for (size_t i = 0; i < tx.from_links.size(); ++i)
                    os << (i ? "+@" : "@") << tx.from_links[i];
            } else {
                os << tx.flow;
            }
        }
        os << " |";
        for (const auto& rx : atom.slots[s].receptions) {
            os << " " << rx.receiver << "<-" << rx.link << ":";
            for (size_t i = 0; i < rx.transmitters.size(); ++i)
                os << (i ? "+" : "") << rx.transmitters[i];
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace pncarq
